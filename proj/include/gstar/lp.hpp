#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gstar/errors.hpp"
#include "gstar/rational.hpp"

namespace gstar {

enum class Relation { LessEqual, Equal, GreaterEqual };

struct Term {
  int var;
  Rational coef;
};

struct LinearConstraint {
  std::vector<Term> terms;  ///< sparse coefficient vector
  Relation relation;
  Rational rhs;
};

/// Minimize a single designated variable over nonnegative variables, linear
/// constraints and optional per-variable upper bounds.
class LinearProgram {
public:
  int add_variable(std::string name, std::optional<Rational> upper = std::nullopt) {
    names_.push_back(std::move(name));
    upper_.push_back(std::move(upper));
    return static_cast<int>(names_.size()) - 1;
  }

  void add_constraint(std::vector<Term> terms, Relation relation, Rational rhs) {
    constraints_.push_back({std::move(terms), relation, std::move(rhs)});
  }

  void minimize(int var) { objective_ = var; }

  int num_variables() const { return static_cast<int>(names_.size()); }
  const std::string& name(int var) const { return names_.at(var); }
  const std::optional<Rational>& upper(int var) const { return upper_.at(var); }
  const std::vector<LinearConstraint>& constraints() const { return constraints_; }
  int objective() const { return objective_; }

  int find(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == name) return static_cast<int>(i);
    return -1;
  }

  /// Throws DomainError if the program is not well formed.
  void check() const {
    if (objective_ < 0 || objective_ >= num_variables()) throw DomainError("linear program has no objective variable");
    bool objective_used = false;
    for (const auto& c : constraints_)
      for (const auto& t : c.terms) {
        if (t.var < 0 || t.var >= num_variables()) throw DomainError("constraint references unknown variable " + std::to_string(t.var));
        if (t.var == objective_ && !t.coef.is_zero()) objective_used = true;
      }
    if (!objective_used) throw DomainError("objective variable '" + names_[objective_] + "' appears in no constraint");
    for (const auto& u : upper_)
      if (u && u->sign() < 0) throw DomainError("negative upper bound");
  }

private:
  std::vector<std::string> names_;
  std::vector<std::optional<Rational>> upper_;
  std::vector<LinearConstraint> constraints_;
  int objective_ = -1;
};

enum class LPStatus { Optimal, Infeasible, Unbounded };

struct LPOutcome {
  LPStatus status = LPStatus::Infeasible;
  Rational value;                   ///< optimum (Optimal only)
  std::vector<Rational> assignment; ///< per variable (Optimal only)
};

/// Exact check that `x` is nonnegative, within bounds and satisfies every constraint.
inline bool satisfies(const LinearProgram& lp, std::span<const Rational> x) {
  if (static_cast<int>(x.size()) != lp.num_variables()) return false;
  for (int j = 0; j < lp.num_variables(); ++j) {
    if (x[j].sign() < 0) return false;
    if (lp.upper(j) && x[j] > *lp.upper(j)) return false;
  }
  for (const auto& c : lp.constraints()) {
    Rational lhs = 0;
    for (const auto& t : c.terms) lhs += t.coef * x[t.var];
    switch (c.relation) {
      case Relation::LessEqual: if (lhs > c.rhs) return false; break;
      case Relation::Equal: if (lhs != c.rhs) return false; break;
      case Relation::GreaterEqual: if (lhs < c.rhs) return false; break;
    }
  }
  return true;
}

namespace detail {

// Dense two-phase primal simplex with Bland's rule. Columns are laid out as
// structural | slack/surplus | artificial, rhs kept separately.
class SimplexTableau {
public:
  explicit SimplexTableau(const LinearProgram& lp) : n_struct_(lp.num_variables()) {
    struct Row {
      std::vector<Term> terms;
      Relation rel;
      Rational rhs;
    };
    std::vector<Row> rows;
    for (const auto& c : lp.constraints()) rows.push_back({c.terms, c.relation, c.rhs});
    for (int j = 0; j < n_struct_; ++j)
      if (lp.upper(j)) rows.push_back({{{j, Rational(1)}}, Relation::LessEqual, *lp.upper(j)});
    for (auto& row : rows) {
      if (row.rhs.sign() < 0) {
        for (auto& t : row.terms) t.coef = -t.coef;
        row.rhs = -row.rhs;
        if (row.rel == Relation::LessEqual)
          row.rel = Relation::GreaterEqual;
        else if (row.rel == Relation::GreaterEqual)
          row.rel = Relation::LessEqual;
      }
    }
    int n_slack = 0;
    int n_art = 0;
    for (const auto& row : rows) {
      if (row.rel != Relation::Equal) ++n_slack;
      if (row.rel != Relation::LessEqual) ++n_art;
    }
    first_art_ = n_struct_ + n_slack;
    n_cols_ = first_art_ + n_art;
    const int m = static_cast<int>(rows.size());
    a_.assign(m, std::vector<Rational>(n_cols_));
    rhs_.resize(m);
    basis_.resize(m);
    int slack = n_struct_;
    int art = first_art_;
    for (int i = 0; i < m; ++i) {
      for (const auto& t : rows[i].terms) a_[i][t.var] += t.coef;
      rhs_[i] = rows[i].rhs;
      switch (rows[i].rel) {
        case Relation::LessEqual:
          a_[i][slack] = 1;
          basis_[i] = slack++;
          break;
        case Relation::GreaterEqual:
          a_[i][slack++] = -1;
          a_[i][art] = 1;
          basis_[i] = art++;
          break;
        case Relation::Equal:
          a_[i][art] = 1;
          basis_[i] = art++;
          break;
      }
    }
  }

  LPOutcome solve(int objective_var) {
    // Phase 1: minimize the sum of artificials.
    cost_.assign(n_cols_, Rational(0));
    cost_value_ = 0;
    for (int i = 0; i < rows(); ++i) {
      if (basis_[i] < first_art_) continue;
      for (int j = 0; j < first_art_; ++j)
        if (!a_[i][j].is_zero()) cost_[j] -= a_[i][j];
      cost_value_ -= rhs_[i];
    }
    if (!iterate()) return {LPStatus::Unbounded, {}, {}};
    if (cost_value_.sign() != 0) return {LPStatus::Infeasible, {}, {}};
    drive_out_artificials();

    // Phase 2: minimize the objective variable.
    cost_.assign(n_cols_, Rational(0));
    cost_value_ = 0;
    cost_[objective_var] = 1;
    for (int i = 0; i < rows(); ++i) {
      if (basis_[i] != objective_var) continue;
      for (int j = 0; j < first_art_; ++j)
        if (!a_[i][j].is_zero()) cost_[j] -= a_[i][j];
      cost_value_ -= rhs_[i];
    }
    if (!iterate()) return {LPStatus::Unbounded, {}, {}};

    LPOutcome out;
    out.status = LPStatus::Optimal;
    out.assignment.assign(n_struct_, Rational(0));
    for (int i = 0; i < rows(); ++i)
      if (basis_[i] < n_struct_) out.assignment[basis_[i]] = rhs_[i];
    out.value = out.assignment[objective_var];
    return out;
  }

private:
  int rows() const { return static_cast<int>(a_.size()); }

  // Bland's rule pivoting until optimal; false when unbounded.
  bool iterate() {
    while (true) {
      int enter = -1;
      for (int j = 0; j < first_art_; ++j)
        if (cost_[j].sign() < 0) {
          enter = j;
          break;
        }
      if (enter < 0) return true;
      int leave = -1;
      Rational best_ratio;
      for (int i = 0; i < rows(); ++i) {
        if (a_[i][enter].sign() <= 0) continue;
        Rational ratio = rhs_[i] / a_[i][enter];
        if (leave < 0 || ratio < best_ratio || (ratio == best_ratio && basis_[i] < basis_[leave])) {
          leave = i;
          best_ratio = std::move(ratio);
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  }

  void pivot(int pr, int pc) {
    auto& prow = a_[pr];
    const Rational inv = prow[pc].reciprocal();
    std::vector<int> nz;
    for (int j = 0; j < n_cols_; ++j)
      if (!prow[j].is_zero()) {
        prow[j] *= inv;
        nz.push_back(j);
      }
    rhs_[pr] *= inv;
    auto eliminate = [&](std::vector<Rational>& row, Rational& rhs) {
      if (row[pc].is_zero()) return;
      const Rational factor = row[pc];
      for (int j : nz) row[j] -= factor * prow[j];
      rhs -= factor * rhs_[pr];
    };
    for (int i = 0; i < rows(); ++i)
      if (i != pr) eliminate(a_[i], rhs_[i]);
    eliminate(cost_, cost_value_);
    basis_[pr] = pc;
  }

  void drive_out_artificials() {
    for (int i = 0; i < rows();) {
      if (basis_[i] < first_art_) {
        ++i;
        continue;
      }
      int col = -1;
      for (int j = 0; j < first_art_; ++j)
        if (!a_[i][j].is_zero()) {
          col = j;
          break;
        }
      if (col >= 0) {
        pivot(i, col);
        ++i;
      } else {
        // Redundant row.
        a_.erase(a_.begin() + i);
        rhs_.erase(rhs_.begin() + i);
        basis_.erase(basis_.begin() + i);
      }
    }
  }

  int n_struct_;
  int first_art_ = 0;
  int n_cols_ = 0;
  std::vector<std::vector<Rational>> a_;
  std::vector<Rational> rhs_;
  std::vector<int> basis_;
  std::vector<Rational> cost_;
  Rational cost_value_;  ///< negated current objective value
};

}  // namespace detail

/// Exact optimum of `lp`. Optimal outcomes carry an assignment that
/// re-verifies with `satisfies`.
inline LPOutcome solve_min(const LinearProgram& lp) {
  lp.check();
  detail::SimplexTableau tableau(lp);
  return tableau.solve(lp.objective());
}

}  // namespace gstar
