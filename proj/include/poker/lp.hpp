#pragma once

/**
 * Exact rational linear programming.
 *
 * Inequality-form programs with per-variable box bounds (either side may be
 * unbounded). solve_lp runs a two-phase bounded-variable simplex with
 * Bland's rule, so every solve is deterministic and terminates; optimal
 * answers are re-certified internally (exact primal feasibility plus exact
 * reduced-cost optimality) before they are returned.
 */

#include <optional>
#include <string>
#include <vector>

#include "poker/dense.hpp"

namespace poker {

enum class Sense { maximize, minimize };
enum class Rel { le, ge, eq };

struct LinearProgram {
  struct Constraint {
    RatVec coeffs;
    Rel rel = Rel::le;
    Rational rhs;
  };
  struct Bounds {
    std::optional<Rational> lower;  // nullopt = unbounded below
    std::optional<Rational> upper;  // nullopt = unbounded above
  };

  std::vector<std::string> variables;
  RatVec objective;
  Sense sense = Sense::maximize;
  std::vector<Constraint> constraints;
  std::vector<Bounds> bounds;  // one entry per variable

  /// Appends a variable and returns its index.
  int add_variable(std::string name, std::optional<Rational> lower = Rational(0),
                   std::optional<Rational> upper = std::nullopt);
  void add_constraint(RatVec coeffs, Rel rel, Rational rhs);

  void validate() const;  // throws std::invalid_argument on malformed input
};

struct LPSolution {
  enum class Status { optimal, infeasible, unbounded };

  Status status = Status::infeasible;
  Rational value;                       // optimal objective (original sense)
  std::vector<std::string> variables;   // same order as the program
  RatVec x;                             // vertex assignment, exact

  const Rational& operator[](std::string_view name) const;
  bool optimal() const { return status == Status::optimal; }
};

LPSolution solve_lp(const LinearProgram& lp);

/// Exact check that x satisfies every constraint and bound of lp.
bool feasible(const LinearProgram& lp, const RatVec& x);

/// Plain-text tableau-style dump of the program, for bug reports.
std::string dump_lp(const LinearProgram& lp);

}  // namespace poker
