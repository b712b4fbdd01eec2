#include "poker/lp.hpp"

#include <sstream>
#include <stdexcept>

namespace poker {

int LinearProgram::add_variable(std::string name, std::optional<Rational> lower,
                                std::optional<Rational> upper) {
  variables.push_back(std::move(name));
  bounds.push_back({std::move(lower), std::move(upper)});
  RatVec obj = RatVec::Constant(static_cast<Eigen::Index>(variables.size()), Rational(0));
  obj.head(objective.size()) = objective;
  objective = std::move(obj);
  return static_cast<int>(variables.size()) - 1;
}

void LinearProgram::add_constraint(RatVec coeffs, Rel rel, Rational rhs) {
  constraints.push_back({std::move(coeffs), rel, std::move(rhs)});
}

void LinearProgram::validate() const {
  const auto nv = static_cast<Eigen::Index>(variables.size());
  if (objective.size() != nv)
    throw std::invalid_argument("LinearProgram: objective length != variable count");
  if (static_cast<Eigen::Index>(bounds.size()) != nv)
    throw std::invalid_argument("LinearProgram: bounds length != variable count");
  for (const auto& c : constraints)
    if (c.coeffs.size() != nv)
      throw std::invalid_argument("LinearProgram: constraint length != variable count");
  for (const auto& b : bounds)
    if (b.lower && b.upper && *b.lower > *b.upper)
      throw std::invalid_argument("LinearProgram: lower bound exceeds upper bound");
}

const Rational& LPSolution::operator[](std::string_view name) const {
  for (size_t i = 0; i < variables.size(); ++i)
    if (variables[i] == name) return x[static_cast<Eigen::Index>(i)];
  throw std::invalid_argument("LPSolution: unknown variable '" + std::string(name) + "'");
}

bool feasible(const LinearProgram& lp, const RatVec& x) {
  if (x.size() != static_cast<Eigen::Index>(lp.variables.size())) return false;
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    const auto& b = lp.bounds[j];
    if (b.lower && x[j] < *b.lower) return false;
    if (b.upper && x[j] > *b.upper) return false;
  }
  for (const auto& c : lp.constraints) {
    Rational lhs(0);
    for (Eigen::Index j = 0; j < x.size(); ++j)
      if (!c.coeffs[j].is_zero()) lhs += c.coeffs[j] * x[j];
    switch (c.rel) {
      case Rel::le: if (lhs > c.rhs) return false; break;
      case Rel::ge: if (lhs < c.rhs) return false; break;
      case Rel::eq: if (lhs != c.rhs) return false; break;
    }
  }
  return true;
}

std::string dump_lp(const LinearProgram& lp) {
  std::ostringstream os;
  os << (lp.sense == Sense::maximize ? "maximize" : "minimize");
  for (Eigen::Index j = 0; j < lp.objective.size(); ++j)
    if (!lp.objective[j].is_zero()) os << " " << lp.objective[j] << "*" << lp.variables[j];
  os << "\n";
  for (const auto& c : lp.constraints) {
    os << "  ";
    bool any = false;
    for (Eigen::Index j = 0; j < c.coeffs.size(); ++j) {
      if (c.coeffs[j].is_zero()) continue;
      if (any) os << " + ";
      os << c.coeffs[j] << "*" << lp.variables[j];
      any = true;
    }
    if (!any) os << "0";
    os << (c.rel == Rel::le ? " <= " : c.rel == Rel::ge ? " >= " : " = ") << c.rhs << "\n";
  }
  for (size_t j = 0; j < lp.variables.size(); ++j) {
    const auto& b = lp.bounds[j];
    os << "  " << (b.lower ? b.lower->str() : std::string("-inf")) << " <= " << lp.variables[j]
       << " <= " << (b.upper ? b.upper->str() : std::string("+inf")) << "\n";
  }
  return os.str();
}

namespace {

// Bounded-variable simplex over the computational form
//   maximize c'x  s.t.  A x = rhs,  0 <= x_j <= upper_j (upper may be +inf),
// built from the user program by shifting/mirroring/splitting variables and
// appending slack columns. Artificial columns give the phase-1 start.
class Simplex {
 public:
  enum class ColStatus { at_lower, at_upper, basic };

  explicit Simplex(const LinearProgram& lp) : lp_(lp) { build(); }

  LPSolution run() {
    // Phase 1: maximize -sum(artificials); feasible iff the optimum is 0.
    if (!artificials_.empty()) {
      RatVec c1 = RatVec::Constant(num_cols(), Rational(0));
      for (int a : artificials_) c1[a] = Rational(-1);
      iterate(c1, /*phase1=*/true);
      Rational art_total(0);
      const RatVec vals = column_values();
      for (int a : artificials_) art_total += vals[a];
      if (!art_total.is_zero()) return reconstruct(LPSolution::Status::infeasible);
      drive_out_artificials();
      for (int a : artificials_) upper_[a] = Rational(0);  // pinned for phase 2
    }

    const bool bounded = iterate(real_objective_, /*phase1=*/false);
    if (!bounded) return reconstruct(LPSolution::Status::unbounded);
    certify();
    return reconstruct(LPSolution::Status::optimal);
  }

 private:
  Eigen::Index num_cols() const { return T_.cols(); }
  Eigen::Index num_rows() const { return T_.rows(); }

  bool fixed(Eigen::Index j) const { return upper_[j] && upper_[j]->is_zero(); }

  void build() {
    lp_.validate();
    const int nv = static_cast<int>(lp_.variables.size());
    const int m = static_cast<int>(lp_.constraints.size());

    // Column layout: transformed structural variables first, then slacks,
    // then artificials. Everything has lower bound 0 after the transform.
    col_map_.assign(nv, {});
    int next = 0;
    for (int v = 0; v < nv; ++v) {
      const auto& b = lp_.bounds[v];
      auto& cm = col_map_[v];
      if (b.lower) {
        cm.kind = kShifted;
        cm.offset = *b.lower;
        cm.col = next++;
        upper_.push_back(b.upper ? std::optional<Rational>(*b.upper - *b.lower) : std::nullopt);
      } else if (b.upper) {
        cm.kind = kMirrored;
        cm.offset = *b.upper;
        cm.col = next++;
        upper_.push_back(std::nullopt);
      } else {
        cm.kind = kSplit;
        cm.col = next++;
        cm.col_neg = next++;
        upper_.push_back(std::nullopt);
        upper_.push_back(std::nullopt);
      }
    }
    const int n_struct = next;
    std::vector<int> slack_col(m, -1);
    int n_slack_used = 0;
    for (int i = 0; i < m; ++i)
      if (lp_.constraints[i].rel != Rel::eq) slack_col[i] = n_struct + n_slack_used++;
    const int base_art = n_struct + n_slack_used;

    // rhs after the variable transform
    RatVec rhs = RatVec::Constant(m, Rational(0));
    for (int i = 0; i < m; ++i) rhs[i] = lp_.constraints[i].rhs;

    RatMat A = RatMat::Constant(m, base_art, Rational(0));
    for (int i = 0; i < m; ++i) {
      const RatVec& coef = lp_.constraints[i].coeffs;
      for (int v = 0; v < nv; ++v) {
        if (coef[v].is_zero()) continue;
        const auto& cm = col_map_[v];
        switch (cm.kind) {
          case kShifted:
            A(i, cm.col) = coef[v];
            if (!cm.offset.is_zero()) rhs[i] -= coef[v] * cm.offset;
            break;
          case kMirrored:
            A(i, cm.col) = -coef[v];
            rhs[i] -= coef[v] * cm.offset;
            break;
          default:
            A(i, cm.col) = coef[v];
            A(i, cm.col_neg) = -coef[v];
            break;
        }
      }
      if (slack_col[i] >= 0) {
        A(i, slack_col[i]) = lp_.constraints[i].rel == Rel::le ? Rational(1) : Rational(-1);
        upper_.push_back(std::nullopt);
      }
    }

    // objective on transformed columns (maximize internally)
    const Rational flip = lp_.sense == Sense::maximize ? Rational(1) : Rational(-1);
    real_objective_ = RatVec::Constant(base_art, Rational(0));
    for (int v = 0; v < nv; ++v) {
      const Rational cv = flip * lp_.objective[v];
      if (cv.is_zero()) continue;
      const auto& cm = col_map_[v];
      switch (cm.kind) {
        case kShifted: real_objective_[cm.col] = cv; break;
        case kMirrored: real_objective_[cm.col] = -cv; break;
        default:
          real_objective_[cm.col] = cv;
          real_objective_[cm.col_neg] = -cv;
          break;
      }
    }

    // Starting basis: the slack where it can carry the row's residual,
    // otherwise an artificial column.
    basic_.assign(m, -1);
    status_.assign(base_art, ColStatus::at_lower);
    std::vector<int> art_rows;
    for (int i = 0; i < m; ++i) {
      const Rel rel = lp_.constraints[i].rel;
      const bool slack_ok =
          slack_col[i] >= 0 &&
          ((rel == Rel::le && rhs[i].sign() >= 0) || (rel == Rel::ge && rhs[i].sign() <= 0));
      if (slack_ok) {
        basic_[i] = slack_col[i];
      } else {
        art_rows.push_back(i);
      }
    }
    const int n_art = static_cast<int>(art_rows.size());
    T_ = RatMat::Constant(m, base_art + n_art, Rational(0));
    T_.leftCols(base_art) = A;
    rhs_ = rhs;
    for (int k = 0; k < n_art; ++k) {
      const int i = art_rows[k];
      const int col = base_art + k;
      // artificial carries |rhs| in its row; flip the row if rhs is negative
      if (rhs_[i].sign() < 0) {
        T_.row(i) = -T_.row(i);
        rhs_[i] = -rhs_[i];
      }
      T_(i, col) = Rational(1);
      upper_.push_back(std::nullopt);
      status_.push_back(ColStatus::at_lower);
      basic_[i] = col;
      artificials_.push_back(col);
    }
    // Normalize slack-basic rows so the basic column is +1 (its value is
    // then the nonnegative residual checked by slack_ok above).
    for (int i = 0; i < m; ++i) {
      const Rational& pivot = T_(i, basic_[i]);
      if (pivot.sign() < 0) {
        T_.row(i) = -T_.row(i);
        rhs_[i] = -rhs_[i];
      }
      status_[basic_[i]] = ColStatus::basic;
    }

    // phase-2 objective padded over artificials
    RatVec padded = RatVec::Constant(base_art + n_art, Rational(0));
    padded.head(base_art) = real_objective_;
    real_objective_ = std::move(padded);
  }

  // Values of the basic variables, accounting for columns parked at upper.
  RatVec basic_values() const {
    RatVec xb = rhs_;
    for (Eigen::Index j = 0; j < num_cols(); ++j)
      if (status_[j] == ColStatus::at_upper)
        for (Eigen::Index r = 0; r < num_rows(); ++r)
          if (!T_(r, j).is_zero()) xb[r] -= T_(r, j) * *upper_[j];
    return xb;
  }

  RatVec column_values() const {
    RatVec vals = RatVec::Constant(num_cols(), Rational(0));
    for (Eigen::Index j = 0; j < num_cols(); ++j)
      if (status_[j] == ColStatus::at_upper) vals[j] = *upper_[j];
    const RatVec xb = basic_values();
    for (Eigen::Index r = 0; r < num_rows(); ++r) vals[basic_[r]] = xb[r];
    return vals;
  }

  RatVec reduced_costs(const RatVec& c) const {
    RatVec d = c;
    for (Eigen::Index r = 0; r < num_rows(); ++r) {
      const Rational& cb = c[basic_[r]];
      if (cb.is_zero()) continue;
      for (Eigen::Index j = 0; j < num_cols(); ++j)
        if (!T_(r, j).is_zero()) d[j] -= cb * T_(r, j);
    }
    return d;
  }

  // Bland's rule iteration; returns false on unboundedness.
  bool iterate(const RatVec& c, bool phase1) {
    RatVec d = reduced_costs(c);
    for (;;) {
      RatVec xb = basic_values();

      // entering: lowest-index improving column
      Eigen::Index enter = -1;
      int dir = 0;
      for (Eigen::Index j = 0; j < num_cols(); ++j) {
        if (status_[j] == ColStatus::basic || fixed(j)) continue;
        if (status_[j] == ColStatus::at_lower && d[j].sign() > 0) { enter = j; dir = 1; break; }
        if (status_[j] == ColStatus::at_upper && d[j].sign() < 0) { enter = j; dir = -1; break; }
      }
      if (enter < 0) return true;  // optimal for this phase

      // ratio test; candidates carry the variable index for Bland tie-breaks
      bool have_t = false, flip_best = false, to_upper_best = false;
      Rational best_t;
      Eigen::Index leave_row = -1;
      long best_var = -1;
      if (upper_[enter]) {  // the entering column can flip to its other bound
        best_t = *upper_[enter];
        have_t = true;
        flip_best = true;
        best_var = static_cast<long>(enter);
      }
      for (Eigen::Index r = 0; r < num_rows(); ++r) {
        const Rational a = dir > 0 ? T_(r, enter) : -T_(r, enter);
        Rational t;
        bool to_upper;
        if (a.sign() > 0) {
          t = xb[r] / a;
          to_upper = false;
        } else if (a.sign() < 0 && upper_[basic_[r]]) {
          t = (*upper_[basic_[r]] - xb[r]) / -a;
          to_upper = true;
        } else {
          continue;
        }
        const long var = static_cast<long>(basic_[r]);
        if (!have_t || t < best_t || (t == best_t && var < best_var)) {
          have_t = true;
          best_t = t;
          flip_best = false;
          to_upper_best = to_upper;
          leave_row = r;
          best_var = var;
        }
      }
      if (!have_t) {
        if (phase1) throw std::logic_error("solve_lp: phase-1 objective unbounded");
        return false;
      }
      if (flip_best) {
        status_[enter] = dir > 0 ? ColStatus::at_upper : ColStatus::at_lower;
        continue;
      }
      pivot(leave_row, enter, to_upper_best, d);
    }
  }

  void pivot(Eigen::Index row, Eigen::Index enter, bool leave_to_upper, RatVec& d) {
    const Rational piv = T_(row, enter);
    if (piv.is_zero()) throw std::logic_error("solve_lp: zero pivot");
    T_.row(row) /= piv;
    rhs_[row] /= piv;
    for (Eigen::Index r = 0; r < num_rows(); ++r) {
      if (r == row) continue;
      const Rational f = T_(r, enter);
      if (f.is_zero()) continue;
      T_.row(r) -= f * T_.row(row);
      rhs_[r] -= f * rhs_[row];
    }
    const Rational fd = d[enter];
    if (!fd.is_zero()) d -= fd * RatVec(T_.row(row).transpose());

    const Eigen::Index leaving = basic_[row];
    status_[leaving] = leave_to_upper ? ColStatus::at_upper : ColStatus::at_lower;
    status_[enter] = ColStatus::basic;
    basic_[row] = enter;
  }

  void drive_out_artificials() {
    RatVec dummy = RatVec::Constant(num_cols(), Rational(0));
    for (Eigen::Index r = 0; r < num_rows(); ++r) {
      const Eigen::Index b = basic_[r];
      bool is_art = false;
      for (int a : artificials_) is_art |= (a == b);
      if (!is_art) continue;
      for (Eigen::Index j = 0; j < num_cols(); ++j) {
        bool j_art = false;
        for (int a : artificials_) j_art |= (a == j);
        if (j_art || T_(r, j).is_zero()) continue;
        pivot(r, j, false, dummy);
        break;
      }
      // no eligible column: the row is redundant; the artificial stays
      // basic at value zero and its row can never change it again
    }
  }

  // Exact post-solve certificate: primal feasibility of the final point and
  // reduced-cost optimality (= dual feasibility + complementary slackness).
  void certify() const {
    const RatVec vals = column_values();
    for (Eigen::Index j = 0; j < num_cols(); ++j) {
      if (vals[j].sign() < 0 || (upper_[j] && vals[j] > *upper_[j]))
        throw std::logic_error("solve_lp: certificate failed (bound violated)");
    }
    for (int a : artificials_)
      if (!vals[a].is_zero())
        throw std::logic_error("solve_lp: certificate failed (artificial nonzero)");
    const RatVec d = reduced_costs(real_objective_);
    for (Eigen::Index j = 0; j < num_cols(); ++j) {
      if (fixed(j)) continue;
      switch (status_[j]) {
        case ColStatus::basic:
          if (!d[j].is_zero()) throw std::logic_error("solve_lp: certificate failed (basic cost)");
          break;
        case ColStatus::at_lower:
          if (d[j].sign() > 0) throw std::logic_error("solve_lp: certificate failed (at lower)");
          break;
        case ColStatus::at_upper:
          if (d[j].sign() < 0) throw std::logic_error("solve_lp: certificate failed (at upper)");
          break;
      }
    }
  }

  LPSolution reconstruct(LPSolution::Status st) const {
    LPSolution sol;
    sol.status = st;
    sol.variables = lp_.variables;
    if (st != LPSolution::Status::optimal) return sol;
    const RatVec vals = column_values();
    const int nv = static_cast<int>(lp_.variables.size());
    sol.x = RatVec::Constant(nv, Rational(0));
    for (int v = 0; v < nv; ++v) {
      const auto& cm = col_map_[v];
      switch (cm.kind) {
        case kShifted: sol.x[v] = cm.offset + vals[cm.col]; break;
        case kMirrored: sol.x[v] = cm.offset - vals[cm.col]; break;
        default: sol.x[v] = vals[cm.col] - vals[cm.col_neg]; break;
      }
    }
    Rational value(0);
    for (int v = 0; v < nv; ++v)
      if (!lp_.objective[v].is_zero()) value += lp_.objective[v] * sol.x[v];
    sol.value = value;
    if (!feasible(lp_, sol.x))
      throw std::logic_error("solve_lp: certificate failed (primal infeasible result)");
    return sol;
  }

  enum Kind { kShifted = 0, kMirrored = 1, kSplit = 2 };
  struct ColMapEntry {
    Kind kind = kShifted;
    int col = -1, col_neg = -1;
    Rational offset;
  };

  const LinearProgram& lp_;
  RatMat T_;     // current tableau B^{-1}[A]
  RatVec rhs_;   // B^{-1} b
  RatVec real_objective_;
  std::vector<std::optional<Rational>> upper_;
  std::vector<ColStatus> status_;
  std::vector<Eigen::Index> basic_;
  std::vector<int> artificials_;
  std::vector<ColMapEntry> col_map_;
};

}  // namespace

LPSolution solve_lp(const LinearProgram& lp) {
  Simplex s(lp);
  return s.run();
}

}  // namespace poker
