#include "poker/newman.hpp"

#include <algorithm>
#include <atomic>
#include <future>
#include <thread>

#include "poker/lp.hpp"

namespace poker {

std::vector<CallSet> enumerate_call_sets(int b) {
  if (b < 1) throw std::invalid_argument("enumerate_call_sets: bet size must be >= 1");
  std::vector<CallSet> out;
  out.reserve(1u << b);
  for (std::uint32_t rest = 0; rest < (1u << b); ++rest) out.push_back({(rest << 1) | 1u});
  std::sort(out.begin(), out.end(), [](const CallSet& x, const CallSet& y) {
    if (x.size() != y.size()) return x.size() < y.size();
    std::uint32_t mx = x.mask, my = y.mask;
    while (mx && my) {
      const int cx = __builtin_ctz(mx), cy = __builtin_ctz(my);
      if (cx != cy) return cx < cy;
      mx &= mx - 1;
      my &= my - 1;
    }
    return false;
  });
  return out;
}

namespace {

std::vector<int> normalize_allowed(const GameParams& params, std::vector<int> allowed) {
  if (allowed.empty())
    for (int s = 0; s <= params.b; ++s) allowed.push_back(s);
  std::sort(allowed.begin(), allowed.end());
  allowed.erase(std::unique(allowed.begin(), allowed.end()), allowed.end());
  if (allowed.front() != 0)
    throw std::invalid_argument("newman_mixed: checking (s = 0) must stay available");
  if (allowed.back() > params.b || allowed.front() < 0)
    throw std::invalid_argument("newman_mixed: allowed bets must lie in 0..b");
  return allowed;
}

LinearProgram bettor_program(const GameParams& params, const std::vector<int>& allowed) {
  const int n = params.n;
  const int S = static_cast<int>(allowed.size());
  LinearProgram lp;
  for (int i = 1; i <= n; ++i)
    for (int s : allowed)
      lp.add_variable("p" + std::to_string(i) + "_" + std::to_string(s), Rational(0), Rational(1));
  for (int j = 1; j <= n; ++j)
    lp.add_variable("v" + std::to_string(j), std::nullopt, std::nullopt);
  lp.sense = Sense::maximize;
  for (int j = 0; j < n; ++j) lp.objective[n * S + j] = Rational(1, n);

  const Rational w(1, n - 1), one(1);
  const int nvars = n * S + n;
  // one constraint per (card j, call set Y over the allowed bets)
  const std::uint32_t rest_count = 1u << (S - 1);
  for (int j = 1; j <= n; ++j) {
    for (std::uint32_t rest = 0; rest < rest_count; ++rest) {
      RatVec row = RatVec::Constant(nvars, Rational(0));
      for (int i = 1; i <= n; ++i) {
        if (i == j) continue;
        for (int si = 0; si < S; ++si) {
          const int s = allowed[si];
          const bool called = si == 0 || ((rest >> (si - 1)) & 1u);
          row[(i - 1) * S + si] += called ? w * call(i, j, Rational(s + 1)) : w;
        }
      }
      row[n * S + j - 1] = Rational(-1);
      lp.add_constraint(std::move(row), Rel::ge, Rational(0));
    }
  }
  for (int i = 1; i <= n; ++i) {  // bet-size distribution per card
    RatVec row = RatVec::Constant(nvars, Rational(0));
    for (int si = 0; si < S; ++si) row[(i - 1) * S + si] = one;
    lp.add_constraint(std::move(row), Rel::eq, one);
  }
  return lp;
}

LinearProgram caller_program(const GameParams& params, const std::vector<int>& allowed) {
  const int n = params.n;
  const int S = static_cast<int>(allowed.size());
  LinearProgram lp;
  for (int j = 1; j <= n; ++j)
    for (int si = 1; si < S; ++si)
      lp.add_variable("q" + std::to_string(j) + "_" + std::to_string(allowed[si]), Rational(0),
                      Rational(1));
  for (int i = 1; i <= n; ++i)
    lp.add_variable("v" + std::to_string(i), std::nullopt, std::nullopt);
  lp.sense = Sense::minimize;
  const int qvars = n * (S - 1);
  for (int i = 0; i < n; ++i) lp.objective[qvars + i] = Rational(1, n);

  const Rational w(1, n - 1), one(1);
  for (int i = 1; i <= n; ++i) {
    // a check runs straight into showdown at stake 1
    RatVec check_row = RatVec::Constant(qvars + n, Rational(0));
    check_row[qvars + i - 1] = Rational(-1);
    Rational showdown(0);
    for (int j = 1; j <= n; ++j)
      if (j != i) showdown += w * call(i, j, one);
    lp.add_constraint(std::move(check_row), Rel::le, -showdown);
    for (int si = 1; si < S; ++si) {
      const int s = allowed[si];
      RatVec row = RatVec::Constant(qvars + n, Rational(0));
      Rational fold_gain(0);
      for (int j = 1; j <= n; ++j) {
        if (j == i) continue;
        row[(j - 1) * (S - 1) + si - 1] += w * (call(i, j, Rational(s + 1)) - one);
        fold_gain += w;
      }
      row[qvars + i - 1] = Rational(-1);
      lp.add_constraint(std::move(row), Rel::le, -fold_gain);
    }
  }
  return lp;
}

}  // namespace

NewmanSolution newman_mixed(const GameParams& params, std::vector<int> allowed_bets,
                            long long max_constraints) {
  params.validate();
  const std::vector<int> allowed = normalize_allowed(params, std::move(allowed_bets));
  const int n = params.n;
  const int S = static_cast<int>(allowed.size());
  const long long bettor_rows = static_cast<long long>(n) << (S - 1);
  if (bettor_rows > max_constraints)
    throw SizeLimitError("newman_mixed: " + std::to_string(bettor_rows) +
                         " call-set constraints exceed the limit of " +
                         std::to_string(max_constraints) + "; lower the bet bound b");

  const LinearProgram blp = bettor_program(params, allowed);
  const LinearProgram clp = caller_program(params, allowed);
  auto fut = std::async(std::launch::async, [&] { return solve_lp(blp); });
  const LPSolution cs = solve_lp(clp);
  const LPSolution bs = fut.get();
  if (!bs.optimal() || !cs.optimal())
    throw std::logic_error("newman_mixed: the programs are always feasible and bounded");
  if (bs.value != cs.value) throw std::logic_error("newman_mixed: bettor and caller optima differ");

  NewmanSolution sol;
  sol.params = params;
  sol.value = bs.value;
  sol.p_matrix = {RatMat::Constant(n, params.b + 1, Rational(0)), Role::bettor};
  sol.q_matrix = {RatMat::Constant(n, params.b + 1, Rational(0)), Role::caller};
  sol.q_matrix.probs.col(0) = RatVec::Constant(n, Rational(1));
  for (int i = 0; i < n; ++i)
    for (int si = 0; si < S; ++si) sol.p_matrix.probs(i, allowed[si]) = bs.x[i * S + si];
  for (int j = 0; j < n; ++j)
    for (int si = 1; si < S; ++si)
      sol.q_matrix.probs(j, allowed[si]) = cs.x[j * (S - 1) + si - 1];
  sol.value_given_caller_card = bs.x.tail(n);
  sol.value_given_bettor_card = cs.x.tail(n);
  sol.certificate = epsilon_ne_newman(params, sol.p_matrix, sol.q_matrix, allowed);
  if (!sol.certificate.certified())
    throw std::logic_error("newman_mixed: returned matrices failed the deviation check");
  return sol;
}

SaturationScan saturation_scan(int n, int b_max, int jobs) {
  if (b_max < 2) throw std::invalid_argument("saturation_scan: b_max must be >= 2");
  SaturationScan scan;
  scan.n = n;
  scan.values.resize(b_max);
  if (jobs <= 1) {
    for (int b = 1; b <= b_max; ++b) scan.values[b - 1] = newman_mixed({n, b}).value;
  } else {
    std::atomic<int> cursor{1};
    auto worker = [&] {
      for (;;) {
        const int b = cursor.fetch_add(1);
        if (b > b_max) return;
        scan.values[b - 1] = newman_mixed({n, b}).value;
      }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < std::min(jobs, b_max); ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  // Saturation = least b whose value persists through every larger scanned
  // bet size; needs at least one confirming equality, so a value still
  // moving at b_max reports none.
  for (int b = 1; b < b_max; ++b) {
    bool stable = true;
    for (int b2 = b + 1; b2 <= b_max; ++b2) stable &= (scan.values[b2 - 1] == scan.values[b - 1]);
    if (stable) {
      scan.saturation_b = b;
      break;
    }
  }
  return scan;
}

}  // namespace poker
