#pragma once

/**
 * Exact rational arithmetic for game values and strategy probabilities.
 *
 * Invariants (checked by construction, GMP maintains them through every
 * operation): denominator > 0, gcd(|num|, den) = 1, zero is 0/1.
 * Values are immutable once built and safe to share across threads.
 */

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

namespace poker {

class Rational {
 public:
  Rational() : v_(0) {}
  Rational(int n) : v_(n) {}                              // NOLINT(google-explicit-constructor)
  Rational(long n) : v_(n) {}                             // NOLINT(google-explicit-constructor)
  Rational(long long n) : v_(static_cast<long>(n)) {}     // NOLINT(google-explicit-constructor)
  Rational(long long num, long long den)
      : v_(make_canonical(mpq_class(static_cast<long>(num), den_checked(den)))) {}
  explicit Rational(const mpz_class& n) : v_(n) {}
  Rational(const mpz_class& num, const mpz_class& den);
  explicit Rational(const mpq_class& q) : v_(make_canonical(q)) {}

  /// Parses "p/q" or "p" (the q=1 form). Throws std::invalid_argument.
  static Rational parse(std::string_view text);

  mpz_class numerator() const { return v_.get_num(); }
  mpz_class denominator() const { return v_.get_den(); }
  const mpq_class& raw() const { return v_; }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }

  double to_double() const { return v_.get_d(); }

  /// "p/q" with "/q" omitted when q = 1.
  std::string str() const;

  /// Decimal rendering, round-half-even at `sig_digits` significant digits.
  /// Display only; never feeds back into computation.
  std::string decimal(int sig_digits = 10) const;

  Rational operator-() const;
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return mpq_equal(a.v_.get_mpq_t(), b.v_.get_mpq_t()) != 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
         : c > 0 ? std::strong_ordering::greater
                 : std::strong_ordering::equal;
  }

 private:
  static long den_checked(long long den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    return static_cast<long>(den);
  }
  static mpq_class make_canonical(mpq_class q) {
    q.canonicalize();
    return q;
  }

  mpq_class v_;
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

std::ostream& operator<<(std::ostream& os, const Rational& r);

/// Nearest rational with denominator <= max_den (continued-fraction
/// convergents). Used to snap float iterates back onto exact candidates.
Rational rationalize(double x, std::uint64_t max_den);

}  // namespace poker
