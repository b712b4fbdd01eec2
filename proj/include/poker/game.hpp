#pragma once

/**
 * Game model: deck/bet parameters, strategy representations and exact
 * expected-payoff evaluators for the two-player fixed-bet game, the
 * variable-bet (Newman) game and the three-player game.
 *
 * Cards are 1..n, dealt without replacement, so hands are always distinct
 * and ties are impossible; evaluators treat equal cards as an error.
 * Payoffs are net gain relative to pre-ante wealth.
 */

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "poker/dense.hpp"

namespace poker {

struct GameParams {
  int n = 2;  // deck size, cards 1..n
  int b = 1;  // bet size

  void validate() const {
    if (n < 2) throw std::invalid_argument("GameParams: deck size must be >= 2");
    if (b < 1) throw std::invalid_argument("GameParams: bet size must be >= 1");
  }
};

enum class Role { bettor, caller };

/// Deterministic rule "act iff card is in the set", kept as a bitmask
/// (bit i-1 = card i). Deck sizes here never exceed 64.
struct SubsetStrategy {
  std::uint64_t mask = 0;
  Role role = Role::bettor;

  bool contains(int card) const { return (mask >> (card - 1)) & 1u; }
  int size() const { return __builtin_popcountll(mask); }

  std::vector<int> cards() const {
    std::vector<int> out;
    for (std::uint64_t m = mask; m; m &= m - 1) out.push_back(__builtin_ctzll(m) + 1);
    return out;
  }
  static SubsetStrategy of(std::initializer_list<int> cs, Role role) {
    SubsetStrategy s{0, role};
    for (int c : cs) s.mask |= 1ull << (c - 1);
    return s;
  }
  /// 0/1 probability vector over cards 1..n.
  RatVec indicator(int n) const {
    RatVec v = RatVec::Constant(n, Rational(0));
    for (int i = 1; i <= n; ++i)
      if (contains(i)) v[i - 1] = Rational(1);
    return v;
  }

  friend bool operator==(const SubsetStrategy&, const SubsetStrategy&) = default;
};

/// (size, lexicographic-on-sorted-elements) order used everywhere subsets
/// are enumerated or reported, so outputs are reproducible.
bool subset_before(const SubsetStrategy& a, const SubsetStrategy& b);

/// All 2^n subsets of {1..n} in subset_before order.
std::vector<SubsetStrategy> enumerate_subsets(int n, Role role);

std::string subset_str(const SubsetStrategy& s);

/// Per-card action probabilities: bet probability for the bettor,
/// call probability for a caller. Entry i-1 belongs to card i.
using CardStrategy = RatVec;

bool is_valid_card_strategy(const CardStrategy& p);

/// n x (b+1) matrix of action probabilities for the variable-bet game.
/// Bettor rows are distributions over bet sizes 0..b (s = 0 is a check);
/// caller entries are call probabilities with column 0 pinned to 1
/// (a check always reaches showdown).
struct NewmanStrategy {
  RatMat probs;
  Role role = Role::bettor;

  void validate(const GameParams& params) const;
};

struct ThreeStrategyProfile {
  CardStrategy p;  // Player I, bettor
  CardStrategy q;  // Player II, caller
  CardStrategy r;  // Player III, caller

  void validate(const GameParams& params) const;
};

/// Two-way showdown at the given stake: +stake if i beats j, -stake if not.
Rational call(int i, int j, const Rational& stake);

/// Two-way showdown where the third player folded: the winner also picks up
/// the folder's ante, so i beats j for stake+1 and loses stake otherwise.
Rational call2(int i, int j, const Rational& stake);

/// Three-way showdown: +2*stake to the top card, -stake to each loser.
Rational call3(int i, int j, int k, const Rational& stake);

/// Expected gain of Player I when both sides play deterministic subset rules.
/// S1 bets iff card in set; S2 calls iff card in set.
Rational payoff_pure(const GameParams& params, const SubsetStrategy& s1, const SubsetStrategy& s2);

/// Expected gain of Player I under card-by-card mixed strategies, evaluated
/// as the bilinear form in the bet and call probabilities.
Rational payoff_bilinear(const GameParams& params, const CardStrategy& p, const CardStrategy& q);

/// Expected gain of Player I in the variable-bet game.
Rational payoff_newman(const GameParams& params, const NewmanStrategy& pm, const NewmanStrategy& qm);

/// Expected gains (v1, v2, v3) of the three players. Betting tree: Player I
/// checks into a three-way showdown at stake 1, or bets; callers decide
/// independently; both fold -> +2 to Player I; one caller -> call2 at stake
/// b+1; both call -> call3 at stake b+1.
std::array<Rational, 3> payoff_three(const GameParams& params, const ThreeStrategyProfile& prof);

}  // namespace poker
