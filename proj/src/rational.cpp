#include "poker/rational.hpp"

#include <cctype>
#include <cmath>
#include <ostream>

namespace poker {

Rational::Rational(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw std::domain_error("Rational: zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rational Rational::operator-() const {
  Rational r;
  r.v_ = -v_;
  return r;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("Rational: division by zero");
  v_ /= o.v_;
  return *this;
}

Rational Rational::parse(std::string_view text) {
  const auto bad = [&] {
    throw std::invalid_argument("Rational: cannot parse '" + std::string(text) + "'");
  };
  if (text.empty()) bad();
  const auto slash = text.find('/');
  const auto is_int = [&](std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s)
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
  };
  std::string_view num_part = text.substr(0, slash);
  if (!is_int(num_part)) bad();
  mpz_class num(std::string(num_part), 10);
  if (slash == std::string_view::npos) return Rational(num);
  std::string_view den_part = text.substr(slash + 1);
  if (!is_int(den_part) || den_part.front() == '-' || den_part.front() == '+') bad();
  mpz_class den(std::string(den_part), 10);
  if (den == 0) throw std::domain_error("Rational: zero denominator");
  return Rational(num, den);
}

std::string Rational::str() const {
  std::string s = v_.get_num().get_str();
  if (v_.get_den() != 1) {
    s += '/';
    s += v_.get_den().get_str();
  }
  return s;
}

namespace {

mpz_class pow10(unsigned long e) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, e);
  return p;
}

// Round p/q (both > 0) to the nearest integer, ties to even.
mpz_class round_half_even(const mpz_class& p, const mpz_class& q) {
  mpz_class quot, rem;
  mpz_fdiv_qr(quot.get_mpz_t(), rem.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
  const mpz_class twice = 2 * rem;
  if (twice > q || (twice == q && mpz_odd_p(quot.get_mpz_t()))) quot += 1;
  return quot;
}

// sign of p/q - 10^k for p, q > 0
int cmp_pow10(const mpz_class& p, const mpz_class& q, long k) {
  if (k >= 0) return cmp(p, q * pow10(static_cast<unsigned long>(k)));
  return cmp(p * pow10(static_cast<unsigned long>(-k)), q);
}

}  // namespace

std::string Rational::decimal(int sig_digits) const {
  if (sig_digits < 1) throw std::invalid_argument("decimal: sig_digits must be >= 1");
  if (is_zero()) return "0";
  const bool neg = sign() < 0;
  mpz_class p = ::abs(numerator());
  const mpz_class q = denominator();

  // Exponent e with |value| in [10^e, 10^(e+1)).
  long e = static_cast<long>(mpz_sizeinbase(p.get_mpz_t(), 10)) -
           static_cast<long>(mpz_sizeinbase(q.get_mpz_t(), 10));
  while (cmp_pow10(p, q, e) < 0) --e;
  while (cmp_pow10(p, q, e + 1) >= 0) ++e;

  // digits = round(value / 10^(e+1-sig)), an integer in [10^(sig-1), 10^sig].
  const long shift = sig_digits - 1 - e;
  mpz_class digits = shift >= 0
      ? round_half_even(p * pow10(static_cast<unsigned long>(shift)), q)
      : round_half_even(p, q * pow10(static_cast<unsigned long>(-shift)));
  if (digits == pow10(static_cast<unsigned long>(sig_digits))) {
    digits = pow10(static_cast<unsigned long>(sig_digits - 1));
    ++e;
  }
  std::string ds = digits.get_str();

  std::string out;
  if (e >= 0 && e < 15) {
    if (static_cast<size_t>(e) + 1 >= ds.size()) {
      out = ds + std::string(e + 1 - ds.size(), '0');
    } else {
      out = ds.substr(0, e + 1) + "." + ds.substr(e + 1);
    }
  } else if (e < 0 && e > -6) {
    out = "0." + std::string(-e - 1, '0') + ds;
  } else {
    out = ds.substr(0, 1);
    if (ds.size() > 1) out += "." + ds.substr(1);
    out += "e" + std::to_string(e);
  }
  // trim trailing zeros after a decimal point
  if (out.find('.') != std::string::npos && out.find('e') == std::string::npos) {
    while (out.back() == '0') out.pop_back();
    if (out.back() == '.') out.pop_back();
  }
  return neg ? "-" + out : out;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational rationalize(double x, std::uint64_t max_den) {
  if (!std::isfinite(x)) throw std::domain_error("rationalize: non-finite input");
  const bool neg = x < 0;
  double v = neg ? -x : x;
  // Continued-fraction convergents p/q until the denominator bound.
  std::uint64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double frac = v;
  for (int iter = 0; iter < 64; ++iter) {
    const double af = std::floor(frac);
    if (af > 9e18) break;
    const std::uint64_t a = static_cast<std::uint64_t>(af);
    if (q0 > 0 && a > (max_den - q0) / (q1 == 0 ? 1 : q1)) break;
    const std::uint64_t p2 = a * p1 + p0;
    const std::uint64_t q2 = a * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    const double rem = frac - af;
    if (rem < 1e-15) break;
    frac = 1.0 / rem;
  }
  if (q1 == 0) return Rational(0);
  Rational r(mpz_class(static_cast<unsigned long>(p1)), mpz_class(static_cast<unsigned long>(q1)));
  return neg ? -r : r;
}

}  // namespace poker
