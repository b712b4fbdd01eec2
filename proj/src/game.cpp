#include "poker/game.hpp"

#include <algorithm>

namespace poker {

bool subset_before(const SubsetStrategy& a, const SubsetStrategy& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  // lexicographic on sorted elements = numeric on the bit-reversed mask;
  // for equal sizes, comparing lowest set bits in order does it.
  std::uint64_t ma = a.mask, mb = b.mask;
  while (ma && mb) {
    const int ca = __builtin_ctzll(ma), cb = __builtin_ctzll(mb);
    if (ca != cb) return ca < cb;
    ma &= ma - 1;
    mb &= mb - 1;
  }
  return false;
}

std::vector<SubsetStrategy> enumerate_subsets(int n, Role role) {
  std::vector<SubsetStrategy> out;
  out.reserve(1ull << n);
  for (std::uint64_t m = 0; m < (1ull << n); ++m) out.push_back({m, role});
  std::sort(out.begin(), out.end(),
            [](const SubsetStrategy& a, const SubsetStrategy& b) { return subset_before(a, b); });
  return out;
}

std::string subset_str(const SubsetStrategy& s) {
  std::string out = "{";
  bool first = true;
  for (int c : s.cards()) {
    if (!first) out += ", ";
    out += std::to_string(c);
    first = false;
  }
  return out + "}";
}

bool is_valid_card_strategy(const CardStrategy& p) {
  for (Eigen::Index i = 0; i < p.size(); ++i)
    if (p[i] < Rational(0) || p[i] > Rational(1)) return false;
  return true;
}

void NewmanStrategy::validate(const GameParams& params) const {
  params.validate();
  if (probs.rows() != params.n || probs.cols() != params.b + 1)
    throw std::invalid_argument("NewmanStrategy: matrix must be n x (b+1)");
  for (int i = 0; i < probs.rows(); ++i) {
    Rational row_sum(0);
    for (int s = 0; s < probs.cols(); ++s) {
      const Rational& x = probs(i, s);
      if (x < Rational(0) || x > Rational(1))
        throw std::invalid_argument("NewmanStrategy: probabilities must lie in [0,1]");
      row_sum += x;
    }
    if (role == Role::bettor && row_sum != Rational(1))
      throw std::invalid_argument("NewmanStrategy: bettor rows must sum to 1");
    if (role == Role::caller && probs(i, 0) != Rational(1))
      throw std::invalid_argument("NewmanStrategy: caller must always call a check (q[0] = 1)");
  }
}

void ThreeStrategyProfile::validate(const GameParams& params) const {
  params.validate();
  if (p.size() != params.n || q.size() != params.n || r.size() != params.n)
    throw std::invalid_argument("ThreeStrategyProfile: all strategies must have length n");
  if (!is_valid_card_strategy(p) || !is_valid_card_strategy(q) || !is_valid_card_strategy(r))
    throw std::invalid_argument("ThreeStrategyProfile: probabilities must lie in [0,1]");
}

namespace {
void require_distinct(int i, int j) {
  if (i == j) throw std::domain_error("cards must be distinct (dealt without replacement)");
}
}  // namespace

Rational call(int i, int j, const Rational& stake) {
  require_distinct(i, j);
  return i > j ? stake : -stake;
}

Rational call2(int i, int j, const Rational& stake) {
  require_distinct(i, j);
  return i > j ? stake + Rational(1) : -stake;
}

Rational call3(int i, int j, int k, const Rational& stake) {
  require_distinct(i, j);
  require_distinct(i, k);
  require_distinct(j, k);
  return (i > j && i > k) ? Rational(2) * stake : -stake;
}

Rational payoff_pure(const GameParams& params, const SubsetStrategy& s1, const SubsetStrategy& s2) {
  params.validate();
  const int n = params.n;
  // All per-deal outcomes are small integers; accumulate the numerator
  // exactly in 64 bits over the n(n-1) ordered deals.
  long long num = 0;
  const long long stake_called = params.b + 1;
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      if (i == j) continue;
      const long long sign = i > j ? 1 : -1;
      if (!s1.contains(i)) {
        num += sign;  // check -> showdown at stake 1
      } else if (!s2.contains(j)) {
        num += 1;  // bet, fold -> Player I wins the ante
      } else {
        num += sign * stake_called;  // bet, call -> showdown at stake b+1
      }
    }
  }
  return Rational(num, static_cast<long long>(n) * (n - 1));
}

Rational payoff_bilinear(const GameParams& params, const CardStrategy& p, const CardStrategy& q) {
  params.validate();
  const int n = params.n;
  if (p.size() != n || q.size() != n)
    throw std::invalid_argument("payoff_bilinear: strategies must have length n");
  const Rational one(1);
  const Rational stake(params.b + 1);
  Rational total(0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const Rational sign = i > j ? one : -one;
      total += sign * (one - p[i]);           // showdown after a check
      total += p[i] * (one - q[j]);           // fold hands Player I the ante
      total += sign * stake * (p[i] * q[j]);  // called bet
    }
  }
  return total / Rational(static_cast<long long>(n) * (n - 1));
}

Rational payoff_newman(const GameParams& params, const NewmanStrategy& pm, const NewmanStrategy& qm) {
  pm.validate(params);
  qm.validate(params);
  if (pm.role != Role::bettor || qm.role != Role::caller)
    throw std::invalid_argument("payoff_newman: expected a bettor and a caller");
  const int n = params.n;
  const int b = params.b;
  const Rational one(1);
  Rational total(0);
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      if (i == j) continue;
      for (int s = 0; s <= b; ++s) {
        const Rational& ps = pm.probs(i - 1, s);
        if (ps.is_zero()) continue;
        const Rational& qs = qm.probs(j - 1, s);  // q[0] = 1: checks reach showdown
        total += ps * (qs * call(i, j, Rational(s + 1)) + (one - qs));
      }
    }
  }
  return total / Rational(static_cast<long long>(n) * (n - 1));
}

std::array<Rational, 3> payoff_three(const GameParams& params, const ThreeStrategyProfile& prof) {
  prof.validate(params);
  const int n = params.n;
  const Rational one(1), two(2);
  const Rational stake(params.b + 1);
  Rational v1(0), v2(0), v3(0);
  for (int i = 1; i <= n; ++i) {
    const Rational& pi = prof.p[i - 1];
    for (int j = 1; j <= n; ++j) {
      if (j == i) continue;
      const Rational& qj = prof.q[j - 1];
      for (int k = 1; k <= n; ++k) {
        if (k == i || k == j) continue;
        const Rational& rk = prof.r[k - 1];

        // Player I checks: immediate three-way showdown at stake 1.
        const Rational w_check = one - pi;
        if (!w_check.is_zero()) {
          v1 += w_check * call3(i, j, k, one);
          v2 += w_check * call3(j, i, k, one);
          v3 += w_check * call3(k, i, j, one);
        }
        if (pi.is_zero()) continue;

        // Player I bets; II and III decide independently.
        const Rational w_ff = pi * (one - qj) * (one - rk);
        if (!w_ff.is_zero()) {
          v1 += w_ff * two;
          v2 -= w_ff;
          v3 -= w_ff;
        }
        const Rational w_cf = pi * qj * (one - rk);  // II calls, III folds
        if (!w_cf.is_zero()) {
          v1 += w_cf * call2(i, j, stake);
          v2 += w_cf * call2(j, i, stake);
          v3 -= w_cf;
        }
        const Rational w_fc = pi * (one - qj) * rk;  // II folds, III calls
        if (!w_fc.is_zero()) {
          v1 += w_fc * call2(i, k, stake);
          v2 -= w_fc;
          v3 += w_fc * call2(k, i, stake);
        }
        const Rational w_cc = pi * qj * rk;  // both call
        if (!w_cc.is_zero()) {
          v1 += w_cc * call3(i, j, k, stake);
          v2 += w_cc * call3(j, i, k, stake);
          v3 += w_cc * call3(k, i, j, stake);
        }
      }
    }
  }
  const Rational deals(static_cast<long long>(n) * (n - 1) * (n - 2));
  return {v1 / deals, v2 / deals, v3 / deals};
}

}  // namespace poker
