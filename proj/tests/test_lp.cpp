#include "poker/lp.hpp"

#include <random>

#include "doctest.h"
#include "poker/game.hpp"

using namespace poker;

namespace {

// Test-side standardization to "maximize c'x, Ax <= b, x >= 0" plus a value
// offset, kept independent of the solver's own transform so the hand-built
// dual is a real oracle.
struct StdForm {
  std::vector<RatVec> rows;
  std::vector<Rational> rhs;
  RatVec c;
  Rational offset;
  int cols = 0;
};

StdForm standardize_max(const LinearProgram& lp) {
  StdForm sf;
  const int nv = static_cast<int>(lp.variables.size());
  // column mapping: shifted / mirrored / split, all to x' >= 0
  struct M { int kind; int col; int col2; Rational off; };
  std::vector<M> map(nv);
  int next = 0;
  for (int v = 0; v < nv; ++v) {
    const auto& b = lp.bounds[v];
    if (b.lower) map[v] = {0, next++, -1, *b.lower};
    else if (b.upper) map[v] = {1, next++, -1, *b.upper};
    else { map[v] = {2, next, next + 1, Rational(0)}; next += 2; }
  }
  sf.cols = next;
  sf.c = RatVec::Constant(next, Rational(0));
  for (int v = 0; v < nv; ++v) {
    const Rational cv = lp.objective[v];
    if (cv.is_zero()) continue;
    sf.offset += cv * map[v].off;
    if (map[v].kind == 0) sf.c[map[v].col] += cv;
    else if (map[v].kind == 1) sf.c[map[v].col] -= cv;
    else { sf.c[map[v].col] += cv; sf.c[map[v].col2] -= cv; }
  }
  auto expand = [&](const RatVec& coef, Rational rhs) {
    RatVec row = RatVec::Constant(next, Rational(0));
    for (int v = 0; v < nv; ++v) {
      const Rational& a = coef[v];
      if (a.is_zero()) continue;
      rhs -= a * map[v].off;
      if (map[v].kind == 0) row[map[v].col] += a;
      else if (map[v].kind == 1) row[map[v].col] -= a;
      else { row[map[v].col] += a; row[map[v].col2] -= a; }
    }
    sf.rows.push_back(std::move(row));
    sf.rhs.push_back(std::move(rhs));
  };
  for (const auto& con : lp.constraints) {
    if (con.rel == Rel::le) expand(con.coeffs, con.rhs);
    else if (con.rel == Rel::ge) expand(-con.coeffs, -con.rhs);
    else { expand(con.coeffs, con.rhs); expand(-con.coeffs, -con.rhs); }
  }
  // finite upper bounds of transformed columns become rows
  for (int v = 0; v < nv; ++v) {
    if (map[v].kind == 0 && lp.bounds[v].upper) {
      RatVec unit = RatVec::Constant(nv, Rational(0));
      unit[v] = Rational(1);
      expand(unit, *lp.bounds[v].upper);
    }
  }
  return sf;
}

// dual of the standardized max form: minimize b'y, A'y >= c, y >= 0
LinearProgram build_dual(const StdForm& sf) {
  LinearProgram dual;
  dual.sense = Sense::minimize;
  const int m = static_cast<int>(sf.rows.size());
  for (int i = 0; i < m; ++i) dual.add_variable("y" + std::to_string(i));
  dual.objective = RatVec::Constant(m, Rational(0));
  for (int i = 0; i < m; ++i) dual.objective[i] = sf.rhs[i];
  for (int j = 0; j < sf.cols; ++j) {
    RatVec col = RatVec::Constant(m, Rational(0));
    for (int i = 0; i < m; ++i) col[i] = sf.rows[i][j];
    dual.add_constraint(std::move(col), Rel::ge, sf.c[j]);
  }
  return dual;
}

void check_strong_duality(const LinearProgram& lp) {
  const LPSolution primal = solve_lp(lp);
  REQUIRE(primal.optimal());
  const bool min_sense = lp.sense == Sense::minimize;
  LinearProgram as_max = lp;
  if (min_sense) {
    as_max.sense = Sense::maximize;
    as_max.objective = -as_max.objective;
  }
  const StdForm sf = standardize_max(as_max);
  const LPSolution dual = solve_lp(build_dual(sf));
  REQUIRE(dual.optimal());
  const Rational primal_as_max = min_sense ? -primal.value : primal.value;
  CHECK(primal_as_max == dual.value + sf.offset);
}

// VN-I style program for a 3-card deck and unit bet, built by hand.
LinearProgram fast_program_for_bettor(int n, int b) {
  LinearProgram lp;
  for (int i = 1; i <= n; ++i)
    lp.add_variable("p" + std::to_string(i), Rational(0), Rational(1));
  for (int j = 1; j <= n; ++j)
    lp.add_variable("v" + std::to_string(j), std::nullopt, std::nullopt);
  lp.sense = Sense::maximize;
  lp.objective = RatVec::Constant(2 * n, Rational(0));
  for (int j = 0; j < n; ++j) lp.objective[n + j] = Rational(1, n);
  const Rational w(1, n - 1);
  for (int j = 1; j <= n; ++j) {
    RatVec callrow = RatVec::Constant(2 * n, Rational(0));
    RatVec foldrow = RatVec::Constant(2 * n, Rational(0));
    Rational const_part(0);
    for (int i = 1; i <= n; ++i) {
      if (i == j) continue;
      callrow[i - 1] += w * (call(i, j, Rational(b + 1)) - call(i, j, Rational(1)));
      foldrow[i - 1] += w * (Rational(1) - call(i, j, Rational(1)));
      const_part += w * call(i, j, Rational(1));
    }
    callrow[n + j - 1] = Rational(-1);
    foldrow[n + j - 1] = Rational(-1);
    lp.add_constraint(std::move(callrow), Rel::ge, -const_part);
    lp.add_constraint(std::move(foldrow), Rel::ge, -const_part);
  }
  return lp;
}

}  // namespace

TEST_CASE("minimum of constant caps") {
  LinearProgram lp;
  lp.add_variable("v", std::nullopt, std::nullopt);
  lp.sense = Sense::maximize;
  lp.objective = rat_vec({Rational(1)});
  lp.add_constraint(rat_vec({Rational(1)}), Rel::le, Rational(1, 3));
  lp.add_constraint(rat_vec({Rational(1)}), Rel::le, Rational(1, 2));
  const auto sol = solve_lp(lp);
  REQUIRE(sol.optimal());
  CHECK(sol.value == Rational(1, 3));
  CHECK(sol["v"] == Rational(1, 3));
}

TEST_CASE("infeasible and unbounded programs are reported exactly") {
  LinearProgram bad;
  bad.add_variable("x");
  bad.objective = rat_vec({Rational(1)});
  bad.add_constraint(rat_vec({Rational(1)}), Rel::le, Rational(-1));
  CHECK(solve_lp(bad).status == LPSolution::Status::infeasible);

  LinearProgram open;
  open.add_variable("x");
  open.objective = rat_vec({Rational(1)});
  open.add_constraint(rat_vec({Rational(1)}), Rel::ge, Rational(2));
  CHECK(solve_lp(open).status == LPSolution::Status::unbounded);
}

TEST_CASE("malformed programs fail before solving") {
  LinearProgram lp;
  lp.add_variable("x");
  lp.add_variable("y");
  lp.objective = rat_vec({Rational(1), Rational(1)});
  lp.add_constraint(rat_vec({Rational(1)}), Rel::le, Rational(1));  // wrong arity
  CHECK_THROWS_AS(solve_lp(lp), std::invalid_argument);

  LinearProgram crossed;
  crossed.add_variable("x", Rational(2), Rational(1));
  crossed.objective = rat_vec({Rational(1)});
  CHECK_THROWS_AS(solve_lp(crossed), std::invalid_argument);
}

TEST_CASE("equalities, frees and upper bounds") {
  SUBCASE("free variables via substitution") {
    LinearProgram lp;
    lp.add_variable("x", std::nullopt, std::nullopt);
    lp.add_variable("y", std::nullopt, std::nullopt);
    lp.sense = Sense::maximize;
    lp.objective = rat_vec({Rational(1), Rational(1)});
    lp.add_constraint(rat_vec({Rational(1), Rational(1)}), Rel::le, Rational(5));
    lp.add_constraint(rat_vec({Rational(1), Rational(-1)}), Rel::eq, Rational(1));
    const auto sol = solve_lp(lp);
    REQUIRE(sol.optimal());
    CHECK(sol.value == Rational(5));
    CHECK(sol["x"] - sol["y"] == Rational(1));
  }
  SUBCASE("upper bounds pivot without extra rows") {
    LinearProgram lp;
    lp.add_variable("a", Rational(0), Rational(2));
    lp.add_variable("b", Rational(0), Rational(2));
    lp.sense = Sense::maximize;
    lp.objective = rat_vec({Rational(1), Rational(2)});
    lp.add_constraint(rat_vec({Rational(1), Rational(1)}), Rel::le, Rational(3));
    const auto sol = solve_lp(lp);
    REQUIRE(sol.optimal());
    CHECK(sol.value == Rational(5));
    CHECK(sol["a"] == Rational(1));
    CHECK(sol["b"] == Rational(2));
  }
  SUBCASE("upper-bounded below-unbounded variables") {
    LinearProgram lp;
    lp.add_variable("x", std::nullopt, Rational(4));
    lp.sense = Sense::maximize;
    lp.objective = rat_vec({Rational(1)});
    const auto sol = solve_lp(lp);
    REQUIRE(sol.optimal());
    CHECK(sol.value == Rational(4));
  }
  SUBCASE("negative lower bounds shift") {
    LinearProgram lp;
    lp.add_variable("x", Rational(-3), Rational(-1));
    lp.sense = Sense::minimize;
    lp.objective = rat_vec({Rational(2)});
    const auto sol = solve_lp(lp);
    REQUIRE(sol.optimal());
    CHECK(sol.value == Rational(-6));
  }
}

TEST_CASE("solved assignments satisfy every constraint exactly") {
  const LinearProgram lp = fast_program_for_bettor(3, 1);
  const auto sol = solve_lp(lp);
  REQUIRE(sol.optimal());
  CHECK(feasible(lp, sol.x));
  CHECK(sol.value == Rational(1, 18));
}

TEST_CASE("two-card deck has value zero") {
  const auto sol = solve_lp(fast_program_for_bettor(2, 1));
  REQUIRE(sol.optimal());
  CHECK(sol.value == Rational(0));
}

TEST_CASE("repeat solves return the identical vertex") {
  const LinearProgram lp = fast_program_for_bettor(3, 1);
  const auto a = solve_lp(lp), b = solve_lp(lp);
  REQUIRE(a.optimal());
  REQUIRE(b.optimal());
  CHECK(a.value == b.value);
  for (Eigen::Index i = 0; i < a.x.size(); ++i) CHECK(a.x[i] == b.x[i]);
}

TEST_CASE("strong duality holds on the game program and random programs") {
  check_strong_duality(fast_program_for_bettor(3, 1));
  check_strong_duality(fast_program_for_bettor(4, 2));

  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<long> coef(-4, 4), rhs(0, 8);
  int solved = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const int nv = 1 + static_cast<int>(rng() % 4);
    const int m = 1 + static_cast<int>(rng() % 5);
    LinearProgram lp;
    for (int v = 0; v < nv; ++v) {
      switch (rng() % 3) {
        case 0: lp.add_variable("x" + std::to_string(v), Rational(0), Rational(coef(rng) + 5)); break;
        case 1: lp.add_variable("x" + std::to_string(v), Rational(-2), Rational(3)); break;
        default: lp.add_variable("x" + std::to_string(v), Rational(0)); break;
      }
    }
    lp.sense = (rng() % 2) ? Sense::maximize : Sense::minimize;
    lp.objective = RatVec::Constant(nv, Rational(0));
    for (int v = 0; v < nv; ++v) lp.objective[v] = Rational(coef(rng));
    for (int i = 0; i < m; ++i) {
      RatVec row = RatVec::Constant(nv, Rational(0));
      for (int v = 0; v < nv; ++v) row[v] = Rational(coef(rng));
      const Rel rel = std::array{Rel::le, Rel::ge, Rel::eq}[rng() % 3];
      lp.add_constraint(std::move(row), rel, Rational(rhs(rng)));
    }
    const auto sol = solve_lp(lp);
    if (!sol.optimal()) continue;
    ++solved;
    CHECK(feasible(lp, sol.x));
    check_strong_duality(lp);
  }
  CHECK(solved >= 30);
}

TEST_CASE("dump renders a readable program") {
  LinearProgram lp;
  lp.add_variable("p", Rational(0), Rational(1));
  lp.objective = rat_vec({Rational(1)});
  lp.add_constraint(rat_vec({Rational(2)}), Rel::le, Rational(1));
  const std::string text = dump_lp(lp);
  CHECK(text.find("maximize") != std::string::npos);
  CHECK(text.find("2*p <= 1") != std::string::npos);
}
