#include "poker/pure_ne.hpp"

#include "doctest.h"
#include "poker/verify.hpp"

using namespace poker;

namespace {

bool has_ne(const std::vector<PureNE>& nes, std::initializer_list<int> s1,
            std::initializer_list<int> s2) {
  const auto a = SubsetStrategy::of(s1, Role::bettor);
  const auto b = SubsetStrategy::of(s2, Role::caller);
  for (const auto& ne : nes)
    if (ne.s1.mask == a.mask && ne.s2.mask == b.mask) return true;
  return false;
}

}  // namespace

TEST_CASE("tiny decks have only the no-bluff equilibria") {
  const auto nes2 = enumerate_pure_ne(build_paytable({2, 2}, TableMode::vanilla));
  REQUIRE(nes2.size() == 2);
  CHECK(has_ne(nes2, {}, {2}));
  CHECK(has_ne(nes2, {2}, {2}));
  CHECK(nes2.front().value == Rational(0));

  const auto nes3 = enumerate_pure_ne(build_paytable({3, 2}, TableMode::vanilla));
  REQUIRE(nes3.size() == 2);
  CHECK(has_ne(nes3, {}, {3}));
  CHECK(has_ne(nes3, {3}, {3}));
}

TEST_CASE("mid-size decks have no pure equilibrium at all") {
  for (int n : {4, 5, 6})
    CHECK(enumerate_pure_ne(build_paytable({n, 2}, TableMode::vanilla)).empty());
}

TEST_CASE("seven cards: bluffing appears, value 2/21") {
  const auto nes = enumerate_pure_ne(build_paytable({7, 2}, TableMode::vanilla));
  REQUIRE(nes.size() == 3);
  for (const auto& ne : nes) {
    CHECK(ne.s1.mask == SubsetStrategy::of({1, 6, 7}, Role::bettor).mask);
    CHECK(ne.value == Rational(2, 21));
  }
  CHECK(has_ne(nes, {1, 6, 7}, {3, 6, 7}));
  CHECK(has_ne(nes, {1, 6, 7}, {4, 6, 7}));
  CHECK(has_ne(nes, {1, 6, 7}, {5, 6, 7}));
}

TEST_CASE("eight cards: value 3/28") {
  const auto nes = enumerate_pure_ne(build_paytable({8, 2}, TableMode::vanilla));
  REQUIRE(nes.size() == 3);
  for (const auto& ne : nes) {
    CHECK(ne.s1.mask == SubsetStrategy::of({1, 7, 8}, Role::bettor).mask);
    CHECK(ne.value == Rational(3, 28));
  }
  CHECK(has_ne(nes, {1, 7, 8}, {4, 7, 8}));
  CHECK(has_ne(nes, {1, 7, 8}, {5, 7, 8}));
  CHECK(has_ne(nes, {1, 7, 8}, {6, 7, 8}));
}

TEST_CASE("nine cards: seven equilibria, all with the same bettor set") {
  // regression snapshot; the bettor set, count, caller set sizes and the
  // presence of {6,7,8,9} are published facts
  const auto nes = enumerate_pure_ne(build_paytable({9, 2}, TableMode::vanilla));
  REQUIRE(nes.size() == 7);
  for (const auto& ne : nes) {
    CHECK(ne.s1.mask == SubsetStrategy::of({1, 8, 9}, Role::bettor).mask);
    CHECK(ne.s2.size() == 4);
    CHECK(ne.value == Rational(1, 9));
  }
  CHECK(has_ne(nes, {1, 8, 9}, {6, 7, 8, 9}));
  // the remaining six, frozen as a snapshot
  CHECK(has_ne(nes, {1, 8, 9}, {3, 6, 8, 9}));
  CHECK(has_ne(nes, {1, 8, 9}, {3, 7, 8, 9}));
  CHECK(has_ne(nes, {1, 8, 9}, {4, 6, 8, 9}));
  CHECK(has_ne(nes, {1, 8, 9}, {4, 7, 8, 9}));
  CHECK(has_ne(nes, {1, 8, 9}, {5, 6, 8, 9}));
  CHECK(has_ne(nes, {1, 8, 9}, {5, 7, 8, 9}));
}

TEST_CASE("paytable entries agree with the payoff evaluator") {
  const auto table = build_paytable({4, 3}, TableMode::vanilla);
  REQUIRE(table.materialized());
  for (int r = 0; r < 16; ++r)
    for (int c = 0; c < 16; ++c)
      CHECK(table.entries(r, c) ==
            payoff_pure(table.params, table.row_strategies[r], table.col_strategies[c]));
}

TEST_CASE("streamed row-block search equals the materialized search") {
  for (int n = 2; n <= 7; ++n) {
    for (int b : {1, 2, 3}) {
      const auto mat = enumerate_pure_ne(build_paytable({n, b}, TableMode::vanilla));
      PayTable lazy;
      lazy.params = {n, b};
      lazy.mode = TableMode::vanilla;
      const auto streamed = enumerate_pure_ne(lazy, /*jobs=*/3);
      REQUIRE(mat.size() == streamed.size());
      for (size_t k = 0; k < mat.size(); ++k) {
        CHECK(mat[k].s1.mask == streamed[k].s1.mask);
        CHECK(mat[k].s2.mask == streamed[k].s2.mask);
        CHECK(mat[k].value == streamed[k].value);
      }
    }
  }
}

TEST_CASE("every vanilla equilibrium passes the independent deviation check") {
  for (int n : {2, 3, 7, 8, 9}) {
    const GameParams params{n, 2};
    for (const auto& ne : enumerate_pure_ne(build_paytable(params, TableMode::vanilla))) {
      const auto rep = epsilon_ne_two(params, ne.s1.indicator(n), ne.s2.indicator(n));
      CHECK(rep.certified());
    }
  }
}

TEST_CASE("restricted equilibria cannot be improved within the restricted families") {
  for (int n : {7, 9, 12, 18}) {
    const GameParams params{n, 2};
    const auto table = build_paytable(params, TableMode::restricted);
    for (const auto& ne : enumerate_pure_ne(table)) {
      for (const auto& row : table.row_strategies)
        CHECK(payoff_pure(params, row, ne.s2) <= ne.value);
      for (const auto& col : table.col_strategies)
        CHECK(payoff_pure(params, ne.s1, col) >= ne.value);
    }
  }
}

TEST_CASE("restricted equilibria are vanilla equilibria for decks of three or more") {
  // (at n=2 Player I's only restricted rule is "always check", which hides
  // the bet-with-the-top-card deviation, so the inclusion genuinely fails)
  for (int n = 3; n <= 9; ++n) {
    const auto vanilla = enumerate_pure_ne(build_paytable({n, 2}, TableMode::vanilla));
    for (const auto& r : enumerate_pure_ne(build_paytable({n, 2}, TableMode::restricted))) {
      bool found = false;
      for (const auto& v : vanilla)
        found |= (v.s1.mask == r.s1.mask && v.s2.mask == r.s2.mask);
      CHECK(found);
    }
  }
  const auto r2 = enumerate_pure_ne(build_paytable({2, 2}, TableMode::restricted));
  CHECK(r2.size() == 2);  // including ({}, {1,2}), which the full game rejects
}

TEST_CASE("restricted table dimensions") {
  const auto table = build_paytable({9, 2}, TableMode::restricted);
  CHECK(table.row_strategies.size() == 36);  // C(9,2) check intervals
  CHECK(table.col_strategies.size() == 9);   // call thresholds
}

TEST_CASE("vanilla guard rejects oversized decks and suggests restricted mode") {
  try {
    build_paytable({14, 2}, TableMode::vanilla);
    FAIL("expected a size-limit error");
  } catch (const SizeLimitError& e) {
    CHECK(std::string(e.what()).find("restricted") != std::string::npos);
  }
  CHECK_NOTHROW(build_paytable({14, 2}, TableMode::vanilla, 14).row_strategies.size());
}

TEST_CASE("restricted value scan matches the published table") {
  const auto scan = restricted_value_scan(27, 2);
  const auto value_at = [&](int n) -> const Rational* {
    for (const auto& [deck, v] : scan)
      if (deck == n) return &v;
    return nullptr;
  };
  REQUIRE(value_at(18));
  CHECK(*value_at(18) == Rational(1, 9));
  REQUIRE(value_at(25));
  CHECK(*value_at(25) == Rational(11, 100));
  REQUIRE(value_at(26));
  CHECK(*value_at(26) == Rational(36, 325));
  REQUIRE(value_at(27));
  CHECK(*value_at(27) == Rational(1, 9));
  // the thresholds behind the n=18 equilibrium: check on 3..14, call from 11
  const auto nes = enumerate_pure_ne(build_paytable({18, 2}, TableMode::restricted));
  REQUIRE(!nes.empty());
  CHECK(nes.front().s1.mask == SubsetStrategy::of({1, 2, 15, 16, 17, 18}, Role::bettor).mask);
  CHECK(nes.front().s2.mask ==
        SubsetStrategy::of({11, 12, 13, 14, 15, 16, 17, 18}, Role::caller).mask);
}
