#pragma once

/**
 * Independent equilibrium certification and Monte Carlo estimation.
 *
 * The deviation checkers recompute, in exact rationals, the best pure
 * response of every player against the other strategies held fixed. The
 * expected payoff is additive over a player's own cards, so the best
 * response decomposes card by card (and per proposed bet for the caller in
 * the variable-bet game). A profile is certified iff every gap is exactly 0.
 */

#include <cstdint>
#include <optional>
#include <vector>

#include "poker/game.hpp"

namespace poker {

struct DeviationReport {
  std::vector<Rational> gaps;  // best response minus current payoff, >= 0
  std::vector<std::optional<RatVec>> card_witnesses;  // improving pure strategy, if any
  std::vector<std::optional<RatMat>> bet_witnesses;   // variable-bet form of the same

  bool certified() const {
    for (const auto& g : gaps)
      if (!g.is_zero()) return false;
    return true;
  }
};

// Conditional expected payoffs given one player's card, over ordered deals of
// the remaining cards (already divided by the deal count). These are the
// building blocks the solvers' constraints are made of; the checkers below
// recombine them rather than trusting any solver state.
Rational two_check_body(const GameParams& params, int i);
Rational two_bet_body(const GameParams& params, int i, const CardStrategy& q);
Rational two_fold_body(const GameParams& params, int j, const CardStrategy& p);
Rational two_call_body(const GameParams& params, int j, const CardStrategy& p);

Rational three_check_body(const GameParams& params, int i);
Rational three_bet_body(const GameParams& params, int i, const CardStrategy& q,
                        const CardStrategy& r);
/// Payoff of a caller holding `own` who folds, against the bettor's p.
Rational three_fold_body(const GameParams& params, int own, const CardStrategy& p);
/// Payoff of a caller holding `own` who calls, against the bettor's p and
/// the other caller's strategy.
Rational three_call_body(const GameParams& params, int own, const CardStrategy& p,
                         const CardStrategy& other);

DeviationReport epsilon_ne_two(const GameParams& params, const CardStrategy& p,
                               const CardStrategy& q);

/// allowed_bets restricts both players' deviations (and play) to the given
/// bet sizes; empty means all of 0..b. 0 is always treated as available.
DeviationReport epsilon_ne_newman(const GameParams& params, const NewmanStrategy& pm,
                                  const NewmanStrategy& qm,
                                  const std::vector<int>& allowed_bets = {});

DeviationReport epsilon_ne_three(const GameParams& params, const ThreeStrategyProfile& prof);

/**
 * SplitMix64 (Steele, Lea & Flood's mixing function): output k of stream
 * `seed` is mix(seed + (k+1) * 0x9E3779B97F4A7C15). Purely counter-based, so
 * any two implementations of the same formula produce identical streams.
 */
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0,1) using the top 53 bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Unbiased integer in [0, m) by rejection below the largest multiple of m.
  std::uint64_t below(std::uint64_t m) {
    const std::uint64_t limit = (0 - m) - ((0 - m) % m);  // floor(2^64/m)*m
    std::uint64_t r;
    do {
      r = next();
    } while (r >= limit);
    return r % m;
  }

  /// Exact Bernoulli draw with rational success probability.
  bool bernoulli(const Rational& p);

 private:
  std::uint64_t state_;
};

struct McResult {
  std::vector<double> estimate;   // one entry per player
  std::vector<double> std_error;  // matching standard errors
  long long trials = 0;
};

McResult mc_two(const GameParams& params, const CardStrategy& p, const CardStrategy& q,
                long long trials, std::uint64_t seed, int jobs = 1);
McResult mc_newman(const GameParams& params, const NewmanStrategy& pm, const NewmanStrategy& qm,
                   long long trials, std::uint64_t seed, int jobs = 1);
McResult mc_three(const GameParams& params, const ThreeStrategyProfile& prof, long long trials,
                  std::uint64_t seed, int jobs = 1);
/// Continuous three-player model under cut strategies: Player I bets outside
/// (A,B), callers call above C; hands are independent uniforms on (0,1).
McResult mc_three_continuous(double A, double B, double C, double b, long long trials,
                             std::uint64_t seed, int jobs = 1);

}  // namespace poker
