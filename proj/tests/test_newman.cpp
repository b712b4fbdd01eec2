#include "poker/newman.hpp"

#include "doctest.h"
#include "poker/lp.hpp"
#include "poker/mixed_ne.hpp"

using namespace poker;

namespace {

// Value of the 2-card unit-bet game from first principles: the 4x4 matrix
// game over deterministic strategies, solved as a plain LP. An independent
// route to the same number newman_mixed must produce.
Rational two_card_matrix_value() {
  const GameParams params{2, 1};
  std::vector<NewmanStrategy> bettors, callers;
  for (int s1 = 0; s1 <= 1; ++s1)
    for (int s2 = 0; s2 <= 1; ++s2) {
      NewmanStrategy pm{RatMat::Constant(2, 2, Rational(0)), Role::bettor};
      pm.probs(0, s1) = Rational(1);
      pm.probs(1, s2) = Rational(1);
      bettors.push_back(pm);
      NewmanStrategy qm{RatMat::Constant(2, 2, Rational(0)), Role::caller};
      qm.probs.col(0) = RatVec::Constant(2, Rational(1));
      qm.probs(0, 1) = Rational(s1);
      qm.probs(1, 1) = Rational(s2);
      callers.push_back(qm);
    }
  LinearProgram lp;
  for (size_t r = 0; r < bettors.size(); ++r) lp.add_variable("x" + std::to_string(r));
  const int v = lp.add_variable("v", std::nullopt, std::nullopt);
  lp.sense = Sense::maximize;
  lp.objective[v] = Rational(1);
  for (const auto& qm : callers) {
    RatVec row = RatVec::Constant(static_cast<int>(bettors.size()) + 1, Rational(0));
    for (size_t r = 0; r < bettors.size(); ++r) row[r] = payoff_newman(params, bettors[r], qm);
    row[v] = Rational(-1);
    lp.add_constraint(std::move(row), Rel::ge, Rational(0));
  }
  RatVec ones = RatVec::Constant(static_cast<int>(bettors.size()) + 1, Rational(1));
  ones[v] = Rational(0);
  lp.add_constraint(std::move(ones), Rel::eq, Rational(1));
  const auto sol = solve_lp(lp);
  REQUIRE(sol.optimal());
  return sol.value;
}

}  // namespace

TEST_CASE("call sets always contain the check") {
  const auto b1 = enumerate_call_sets(1);
  REQUIRE(b1.size() == 2);
  CHECK(b1[0].bets() == std::vector<int>{0});
  CHECK(b1[1].bets() == std::vector<int>{0, 1});

  const auto b4 = enumerate_call_sets(4);
  REQUIRE(b4.size() == 16);
  // the published listing for b = 4, in (size, lex) order
  const std::vector<std::vector<int>> expected = {
      {0},          {0, 1},       {0, 2},       {0, 3},       {0, 4},       {0, 1, 2},
      {0, 1, 3},    {0, 1, 4},    {0, 2, 3},    {0, 2, 4},    {0, 3, 4},    {0, 1, 2, 3},
      {0, 1, 2, 4}, {0, 1, 3, 4}, {0, 2, 3, 4}, {0, 1, 2, 3, 4}};
  for (size_t k = 0; k < expected.size(); ++k) CHECK(b4[k].bets() == expected[k]);

  CHECK(enumerate_call_sets(10).size() == 1024);
}

TEST_CASE("two cards, unit bet: no edge, against an independent oracle") {
  const NewmanSolution sol = newman_mixed({2, 1});
  CHECK(sol.value == Rational(0));
  CHECK(sol.value == two_card_matrix_value());
  CHECK(sol.certificate.certified());
}

TEST_CASE("solution structure invariants") {
  const NewmanSolution sol = newman_mixed({5, 2});
  CHECK(sol.value == payoff_newman(sol.params, sol.p_matrix, sol.q_matrix));
  for (int j = 0; j < 5; ++j) CHECK(sol.q_matrix.probs(j, 0) == Rational(1));
  for (int i = 0; i < 5; ++i) {
    Rational row(0);
    for (int s = 0; s <= 2; ++s) row += sol.p_matrix.probs(i, s);
    CHECK(row == Rational(1));
  }
  Rational mean_j(0), mean_i(0);
  for (int c = 0; c < 5; ++c) {
    mean_j += sol.value_given_caller_card[c];
    mean_i += sol.value_given_bettor_card[c];
  }
  CHECK(mean_j * Rational(1, 5) == sol.value);
  CHECK(mean_i * Rational(1, 5) == sol.value);
}

TEST_CASE("restricting bets to {0,b} reproduces the fixed-bet game exactly") {
  for (int n = 2; n <= 9; ++n)
    for (int b = 1; b <= 3; ++b)
      CHECK(newman_mixed({n, b}, {0, b}).value == vn_fast({n, b}, false).value);
}

TEST_CASE("value never drops when the bet ceiling rises") {
  for (int n : {4, 6, 8}) {
    Rational prev(-1);
    for (int b = 1; b <= 4; ++b) {
      const Rational v = newman_mixed({n, b}).value;
      CHECK(v >= prev);
      prev = v;
    }
  }
}

TEST_CASE("saturation scan requires a confirmed plateau") {
  const SaturationScan scan = saturation_scan(4, 4, /*jobs=*/2);
  REQUIRE(scan.values.size() == 4);
  for (int b = 1; b < 4; ++b) CHECK(scan.values[b] >= scan.values[b - 1]);
  if (scan.saturation_b) {
    const Rational& sat = scan.values[*scan.saturation_b - 1];
    for (int b = *scan.saturation_b; b <= 4; ++b) CHECK(scan.values[b - 1] == sat);
    if (*scan.saturation_b > 1) CHECK(scan.values[*scan.saturation_b - 2] != sat);
  }
}

TEST_CASE("guards") {
  CHECK_THROWS_AS(newman_mixed({4, 2}, {1, 2}), std::invalid_argument);  // no check
  try {
    newman_mixed({8, 4}, {}, 100);
    FAIL("expected a size-limit error");
  } catch (const SizeLimitError& e) {
    CHECK(std::string(e.what()).find("bet bound") != std::string::npos);
  }
}

TEST_CASE("certificates hold across the small sweep") {
  for (int n = 2; n <= 6; ++n)
    for (int b = 1; b <= 3; ++b) {
      const NewmanSolution sol = newman_mixed({n, b});
      CHECK(sol.certificate.certified());
    }
}
