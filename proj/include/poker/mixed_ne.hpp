#pragma once

/**
 * Mixed equilibria of the fixed-bet two-player game.
 *
 * vn_slow solves the matrix-game primal/dual pair over subset strategies
 * (exponential, kept for small decks and as a cross-check); vn_fast solves
 * the card-by-card programs, one per player, whose optima meet at the game
 * value. Every returned pair of strategies is certified by an exact
 * deviation check before it leaves this module.
 */

#include <vector>

#include "poker/errors.hpp"
#include "poker/game.hpp"
#include "poker/lp.hpp"
#include "poker/verify.hpp"

namespace poker {

struct MixedNESolution {
  GameParams params;
  Rational value;
  CardStrategy p_strategy;  // Player I bet probabilities
  CardStrategy q_strategy;  // Player II call probabilities
  /// Optimal v_j of the bettor's program: Player I's conditional gain given
  /// Player II's card j.
  RatVec value_given_caller_card;
  /// Optimal v_i of the caller's program: Player I's conditional gain given
  /// his own card i.
  RatVec value_given_bettor_card;
  DeviationReport certificate;

  bool pure() const;
};

struct SlowMixedNE {
  GameParams params;
  std::vector<std::pair<SubsetStrategy, Rational>> row_mixture;
  std::vector<std::pair<SubsetStrategy, Rational>> col_mixture;
  Rational value;
};

/// Matrix-game LP over all subset strategies. Guarded: 2^n variables.
SlowMixedNE vn_slow(const GameParams& params, int max_cards = 7);

/// Card-by-card programs; the two solves run concurrently when `parallel`.
MixedNESolution vn_fast(const GameParams& params, bool parallel = true);

std::vector<MixedNESolution> vn_fast_scan(int n_lo, int n_hi, int b_lo, int b_hi, int jobs = 1);

/// The two card-by-card programs, exposed for tests and diagnostics.
LinearProgram vn_fast_bettor_program(const GameParams& params);
LinearProgram vn_fast_caller_program(const GameParams& params);

}  // namespace poker
