#pragma once

/**
 * Variable-bet poker with a finite deck: Player I picks a bet size s in
 * {0..b} (s = 0 checks), Player II calls or folds knowing s.
 *
 * The bettor's program has one constraint per (card of Player II, call set Y):
 * Y collects the bet sizes she would call, and always contains 0 because a
 * check goes straight to showdown. That is n*2^b constraints. The caller's
 * program needs only n*(b+1). Both optima are asserted equal and the
 * returned matrices are certified by the exact deviation check.
 */

#include <optional>
#include <vector>

#include "poker/errors.hpp"
#include "poker/game.hpp"
#include "poker/verify.hpp"

namespace poker {

/// Subset of {0..b} containing 0: the bet sizes Player II calls.
struct CallSet {
  std::uint32_t mask = 1;  // bit s set <=> s is called; bit 0 always set

  bool contains(int s) const { return (mask >> s) & 1u; }
  int size() const { return __builtin_popcount(mask); }
  std::vector<int> bets() const {
    std::vector<int> out;
    for (std::uint32_t m = mask; m; m &= m - 1) out.push_back(__builtin_ctz(m));
    return out;
  }
};

/// All 2^b call sets, ordered by (size, lexicographic on elements).
std::vector<CallSet> enumerate_call_sets(int b);

struct NewmanSolution {
  GameParams params;
  Rational value;
  NewmanStrategy p_matrix;  // bettor, rows sum to 1
  NewmanStrategy q_matrix;  // caller, q[., 0] = 1
  RatVec value_given_caller_card;  // v_j of the bettor's program
  RatVec value_given_bettor_card;  // v_i of the caller's program
  DeviationReport certificate;
};

/// allowed_bets restricts both sides to a sublist of {0..b} (must contain 0);
/// empty means the full range. Used by tests to project onto the fixed-bet
/// game. max_constraints guards the n*2^b growth of the bettor's program.
NewmanSolution newman_mixed(const GameParams& params, std::vector<int> allowed_bets = {},
                            long long max_constraints = 1000000);

struct SaturationScan {
  int n = 0;
  std::vector<Rational> values;       // values[k] is the value at bet size k+1
  std::optional<int> saturation_b;    // least b whose value persists through b_max
};

SaturationScan saturation_scan(int n, int b_max, int jobs = 1);

}  // namespace poker
