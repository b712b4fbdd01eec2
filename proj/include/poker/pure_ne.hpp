#pragma once

/**
 * Pure Nash equilibria of the fixed-bet two-player game.
 *
 * Vanilla mode ranges over every subset strategy of both players (2^n by 2^n
 * cells); restricted mode over Player I rules "check iff A <= i <= B" and
 * Player II rules "call iff j >= C". A cell is an equilibrium iff it is
 * simultaneously a column maximum (Player I cannot improve) and a row
 * minimum (Player II cannot), ties included.
 */

#include <utility>
#include <vector>

#include "poker/errors.hpp"
#include "poker/game.hpp"

namespace poker {

enum class TableMode { vanilla, restricted };

struct PayTable {
  GameParams params;
  TableMode mode = TableMode::vanilla;
  std::vector<SubsetStrategy> row_strategies;  // bettor
  std::vector<SubsetStrategy> col_strategies;  // caller
  /// Player I's expected gain per cell. Left empty above the
  /// materialization cutoff; enumeration then streams the rows instead.
  RatMat entries;

  bool materialized() const { return entries.size() > 0; }
  Rational entry(int r, int c) const;
};

struct PureNE {
  SubsetStrategy s1, s2;
  Rational value;
};

/// Vanilla tables are refused above `max_table_bits` cards and left lazy
/// (entries not materialized) above 10.
PayTable build_paytable(const GameParams& params, TableMode mode, int max_table_bits = 13);

/// All pure equilibria of the table, sorted lexicographically on (S1, S2).
std::vector<PureNE> enumerate_pure_ne(const PayTable& table, int jobs = 1);

/// Restricted-mode equilibrium values per deck size 2..n_max; deck sizes with
/// an empty equilibrium set are skipped. All equilibria of one deck share a
/// value (checked).
std::vector<std::pair<int, Rational>> restricted_value_scan(int n_max, int b);

/// Pure lexicographic order on sorted card lists, used for reporting.
bool subset_lex_before(const SubsetStrategy& a, const SubsetStrategy& b);

}  // namespace poker
