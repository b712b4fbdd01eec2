#include "poker/mixed_ne.hpp"

#include <atomic>
#include <future>
#include <thread>

#include "poker/pure_ne.hpp"

namespace poker {

bool MixedNESolution::pure() const {
  for (Eigen::Index i = 0; i < p_strategy.size(); ++i)
    if (!p_strategy[i].is_zero() && p_strategy[i] != Rational(1)) return false;
  for (Eigen::Index j = 0; j < q_strategy.size(); ++j)
    if (!q_strategy[j].is_zero() && q_strategy[j] != Rational(1)) return false;
  return true;
}

SlowMixedNE vn_slow(const GameParams& params, int max_cards) {
  params.validate();
  if (params.n > max_cards)
    throw SizeLimitError("vn_slow is limited to " + std::to_string(max_cards) +
                         " cards (2^n mixture weights); use vn_fast instead");
  const PayTable table = build_paytable(params, TableMode::vanilla);
  const int rows = static_cast<int>(table.row_strategies.size());
  const int cols = static_cast<int>(table.col_strategies.size());

  // Player I mixes over rows to push the guaranteed gain v1 up.
  LinearProgram primal;
  for (int r = 0; r < rows; ++r) primal.add_variable("x" + std::to_string(r));
  const int v1 = primal.add_variable("v1", std::nullopt, std::nullopt);
  primal.sense = Sense::maximize;
  primal.objective[v1] = Rational(1);
  for (int c = 0; c < cols; ++c) {
    RatVec row = RatVec::Constant(rows + 1, Rational(0));
    for (int r = 0; r < rows; ++r) row[r] = table.entries(r, c);
    row[v1] = Rational(-1);
    primal.add_constraint(std::move(row), Rel::ge, Rational(0));
  }
  RatVec ones = RatVec::Constant(rows + 1, Rational(1));
  ones[v1] = Rational(0);
  primal.add_constraint(std::move(ones), Rel::eq, Rational(1));

  // Player II mixes over columns to push the guaranteed loss v2 down.
  LinearProgram dual;
  for (int c = 0; c < cols; ++c) dual.add_variable("y" + std::to_string(c));
  const int v2 = dual.add_variable("v2", std::nullopt, std::nullopt);
  dual.sense = Sense::minimize;
  dual.objective[v2] = Rational(1);
  for (int r = 0; r < rows; ++r) {
    RatVec row = RatVec::Constant(cols + 1, Rational(0));
    for (int c = 0; c < cols; ++c) row[c] = table.entries(r, c);
    row[v2] = Rational(-1);
    dual.add_constraint(std::move(row), Rel::le, Rational(0));
  }
  RatVec onesc = RatVec::Constant(cols + 1, Rational(1));
  onesc[v2] = Rational(0);
  dual.add_constraint(std::move(onesc), Rel::eq, Rational(1));

  const LPSolution ps = solve_lp(primal);
  const LPSolution ds = solve_lp(dual);
  if (!ps.optimal() || !ds.optimal())
    throw std::logic_error("vn_slow: matrix-game programs must be solvable");
  if (ps.value != ds.value)
    throw std::logic_error("vn_slow: primal and dual optima differ");

  SlowMixedNE out;
  out.params = params;
  out.value = ps.value;
  for (int r = 0; r < rows; ++r)
    if (!ps.x[r].is_zero()) out.row_mixture.emplace_back(table.row_strategies[r], ps.x[r]);
  for (int c = 0; c < cols; ++c)
    if (!ds.x[c].is_zero()) out.col_mixture.emplace_back(table.col_strategies[c], ds.x[c]);
  return out;
}

LinearProgram vn_fast_bettor_program(const GameParams& params) {
  params.validate();
  const int n = params.n;
  LinearProgram lp;
  for (int i = 1; i <= n; ++i)
    lp.add_variable("p" + std::to_string(i), Rational(0), Rational(1));
  for (int j = 1; j <= n; ++j)
    lp.add_variable("v" + std::to_string(j), std::nullopt, std::nullopt);
  lp.sense = Sense::maximize;
  for (int j = 0; j < n; ++j) lp.objective[n + j] = Rational(1, n);
  const Rational w(1, n - 1), one(1), stake(params.b + 1);
  for (int j = 1; j <= n; ++j) {
    // gain against card j if she calls every bet, and if she folds to every
    // bet; the check showdown appears in both
    RatVec calls = RatVec::Constant(2 * n, Rational(0));
    RatVec folds = RatVec::Constant(2 * n, Rational(0));
    Rational showdown(0);
    for (int i = 1; i <= n; ++i) {
      if (i == j) continue;
      calls[i - 1] += w * (call(i, j, stake) - call(i, j, one));
      folds[i - 1] += w * (one - call(i, j, one));
      showdown += w * call(i, j, one);
    }
    calls[n + j - 1] = Rational(-1);
    folds[n + j - 1] = Rational(-1);
    lp.add_constraint(std::move(calls), Rel::ge, -showdown);
    lp.add_constraint(std::move(folds), Rel::ge, -showdown);
  }
  return lp;
}

LinearProgram vn_fast_caller_program(const GameParams& params) {
  params.validate();
  const int n = params.n;
  LinearProgram lp;
  for (int j = 1; j <= n; ++j)
    lp.add_variable("q" + std::to_string(j), Rational(0), Rational(1));
  for (int i = 1; i <= n; ++i)
    lp.add_variable("v" + std::to_string(i), std::nullopt, std::nullopt);
  lp.sense = Sense::minimize;
  for (int i = 0; i < n; ++i) lp.objective[n + i] = Rational(1, n);
  const Rational w(1, n - 1), one(1), stake(params.b + 1);
  for (int i = 1; i <= n; ++i) {
    RatVec raises = RatVec::Constant(2 * n, Rational(0));
    Rational fold_gain(0), showdown(0);
    for (int j = 1; j <= n; ++j) {
      if (j == i) continue;
      raises[j - 1] += w * (call(i, j, stake) - one);
      fold_gain += w;  // every fold hands over the ante
      showdown += w * call(i, j, one);
    }
    raises[n + i - 1] = Rational(-1);
    lp.add_constraint(std::move(raises), Rel::le, -fold_gain);
    RatVec checks = RatVec::Constant(2 * n, Rational(0));
    checks[n + i - 1] = Rational(-1);
    lp.add_constraint(std::move(checks), Rel::le, -showdown);
  }
  return lp;
}

MixedNESolution vn_fast(const GameParams& params, bool parallel) {
  params.validate();
  const int n = params.n;
  const LinearProgram bettor = vn_fast_bettor_program(params);
  const LinearProgram caller = vn_fast_caller_program(params);

  LPSolution bs, cs;
  if (parallel) {
    auto fut = std::async(std::launch::async, [&] { return solve_lp(bettor); });
    cs = solve_lp(caller);
    bs = fut.get();
  } else {
    bs = solve_lp(bettor);
    cs = solve_lp(caller);
  }
  if (!bs.optimal() || !cs.optimal())
    throw std::logic_error("vn_fast: the card-by-card programs are always feasible and bounded");
  if (bs.value != cs.value)
    throw std::logic_error("vn_fast: bettor and caller optima differ");

  MixedNESolution sol;
  sol.params = params;
  sol.value = bs.value;
  sol.p_strategy = bs.x.head(n);
  sol.q_strategy = cs.x.head(n);
  sol.value_given_caller_card = bs.x.tail(n);
  sol.value_given_bettor_card = cs.x.tail(n);
  sol.certificate = epsilon_ne_two(params, sol.p_strategy, sol.q_strategy);
  if (!sol.certificate.certified())
    throw std::logic_error("vn_fast: returned strategies failed the deviation check");
  return sol;
}

std::vector<MixedNESolution> vn_fast_scan(int n_lo, int n_hi, int b_lo, int b_hi, int jobs) {
  if (n_lo < 2 || n_lo > n_hi || b_lo < 1 || b_lo > b_hi)
    throw std::invalid_argument("vn_fast_scan: bad ranges");
  std::vector<GameParams> cases;
  for (int n = n_lo; n <= n_hi; ++n)
    for (int b = b_lo; b <= b_hi; ++b) cases.push_back({n, b});
  std::vector<MixedNESolution> out(cases.size());
  if (jobs <= 1) {
    for (size_t k = 0; k < cases.size(); ++k) out[k] = vn_fast(cases[k], false);
    return out;
  }
  std::atomic<size_t> cursor{0};
  auto worker = [&] {
    for (;;) {
      const size_t k = cursor.fetch_add(1);
      if (k >= cases.size()) return;
      out[k] = vn_fast(cases[k], false);
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < std::min<int>(jobs, static_cast<int>(cases.size())); ++t)
    pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  return out;
}

}  // namespace poker
