#pragma once

/**
 * The three-player finite-deck game. Player I checks or bets b; Players II
 * and III independently call or fold; payoffs follow the call2/call3 stakes.
 *
 * build_tensors is the slow oracle: exact payoffs for every deterministic
 * subset-strategy triple. three_fast_ne finds a certified equilibrium with
 * Players II and III playing identically: it searches the structured family
 * observed in this game — Player I bets cards below a outright, mixes at a,
 * checks the middle, bets from B_cut up; callers fold below c, mix at c,
 * call above — solving the two indifference equations (Player I at a,
 * callers at c) exactly for the mixing probabilities, and accepts only
 * profiles whose deviation gaps are exactly zero.
 */

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "poker/errors.hpp"
#include "poker/game.hpp"
#include "poker/verify.hpp"

namespace poker {

struct PayoffTensors {
  GameParams params;
  std::vector<SubsetStrategy> bettor_strategies;
  std::vector<SubsetStrategy> caller2_strategies;
  std::vector<SubsetStrategy> caller3_strategies;
  // flattened [bettor][caller2][caller3], one tensor per player
  std::vector<Rational> m1, m2, m3;

  std::size_t index(std::size_t i, std::size_t j, std::size_t k) const {
    return (i * caller2_strategies.size() + j) * caller3_strategies.size() + k;
  }
};

PayoffTensors build_tensors(const GameParams& params, int max_cards = 5);

/// Expected payoffs of a mixed profile evaluated through the tensors: each
/// card strategy induces a product distribution over subsets.
std::array<Rational, 3> tensor_mixture_value(const PayoffTensors& tensors,
                                             const ThreeStrategyProfile& prof);

struct ThreeStructure {
  int bluff_card = 0;    // a: bets below with probability 1, mixes here
  Rational bluff_prob;   // alpha = p_a
  int value_start = 0;   // B_cut: bets from this card up
  int call_card = 0;     // c: callers mix here, call strictly above
  Rational call_prob;    // gamma = q_c
};

struct ThreeNESolution {
  GameParams params;
  std::array<Rational, 3> values;
  ThreeStrategyProfile profile;  // q == r
  ThreeStructure structure;
  DeviationReport certificate;
};

struct ThreeSolveError : std::runtime_error {
  ThreeSolveError(const std::string& msg, ThreeStructure best, std::vector<Rational> gaps)
      : std::runtime_error(msg), best_structure(best), best_gaps(std::move(gaps)) {}
  ThreeStructure best_structure;  // smallest-gap candidate seen
  std::vector<Rational> best_gaps;
};

ThreeNESolution three_fast_ne(const GameParams& params, int jobs = 1);

/// Builds the structured profile for given cuts and mixing probabilities.
ThreeStrategyProfile structured_profile(const GameParams& params, const ThreeStructure& s);

struct ThreeScanRecord {
  GameParams params;
  std::optional<ThreeNESolution> solution;
  std::string error;  // nonempty when the instance failed
};

std::vector<ThreeScanRecord> three_value_scan(int n_lo, int n_hi, int b_lo, int b_hi,
                                              int jobs = 1);

}  // namespace poker
