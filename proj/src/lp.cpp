#include "polieq/lp.hpp"

#include <optional>
#include <stdexcept>

namespace polieq {

int LinearProgram::add_variable(std::string name) {
  variables.push_back(std::move(name));
  return static_cast<int>(variables.size()) - 1;
}

void LinearProgram::add_constraint(LinearForm lhs, Relation rel, Rational rhs) {
  constraints.push_back({std::move(lhs), rel, std::move(rhs)});
}

Rational evaluate(const LinearForm& form, const std::vector<Rational>& point) {
  Rational sum = 0;
  for (const auto& t : form) sum += t.coefficient * point[static_cast<std::size_t>(t.variable)];
  return sum;
}

bool satisfies(const LinearProgram& lp, const std::vector<Rational>& point) {
  for (const auto& c : lp.constraints) {
    const Rational lhs = evaluate(c.lhs, point);
    switch (c.relation) {
      case Relation::kEqual:
        if (lhs != c.rhs) return false;
        break;
      case Relation::kGreaterEqual:
        if (lhs < c.rhs) return false;
        break;
      case Relation::kLessEqual:
        if (lhs > c.rhs) return false;
        break;
    }
  }
  return true;
}

namespace {

// Dense tableau. Row 0..m-1 are constraints, column `cols` holds the rhs.
class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * (cols + 1)), basis_(rows, 0) {}

  Rational& at(std::size_t r, std::size_t c) { return a_[r * (cols_ + 1) + c]; }
  Rational& rhs(std::size_t r) { return at(r, cols_); }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::vector<std::size_t>& basis() { return basis_; }

  void pivot(std::size_t r, std::size_t c) {
    const Rational piv = at(r, c);
    for (std::size_t j = 0; j <= cols_; ++j) at(r, j) /= piv;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == r) continue;
      const Rational f = at(i, c);
      if (f == 0) continue;
      for (std::size_t j = 0; j <= cols_; ++j) {
        if (at(r, j) != 0) at(i, j) -= f * at(r, j);
      }
    }
    basis_[r] = c;
  }

  void drop_row(std::size_t r) {
    a_.erase(a_.begin() + static_cast<std::ptrdiff_t>(r * (cols_ + 1)),
             a_.begin() + static_cast<std::ptrdiff_t>((r + 1) * (cols_ + 1)));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
    --rows_;
  }

 private:
  std::size_t rows_, cols_;
  std::vector<Rational> a_;
  std::vector<std::size_t> basis_;
};

// Maximises cost . x over the tableau's feasible basis restricted to columns
// `usable`. Bland's rule: lowest-index entering column, ties in the ratio test
// to the lowest basic index. Returns false when unbounded.
bool run_simplex(Tableau& t, const std::vector<Rational>& cost, const std::vector<char>& usable) {
  const std::size_t n = t.cols();
  for (;;) {
    // reduced cost of column j: cost_j - sum_i cost_{basis_i} * a_ij
    std::optional<std::size_t> entering;
    for (std::size_t j = 0; j < n && !entering; ++j) {
      if (!usable[j]) continue;
      Rational rc = cost[j];
      for (std::size_t i = 0; i < t.rows(); ++i) {
        const Rational& a = t.at(i, j);
        if (a != 0) rc -= cost[t.basis()[i]] * a;
      }
      if (rc > 0) entering = j;
    }
    if (!entering) return true;
    const std::size_t c = *entering;
    std::optional<std::size_t> leaving;
    Rational best;
    for (std::size_t i = 0; i < t.rows(); ++i) {
      const Rational& a = t.at(i, c);
      if (a <= 0) continue;
      Rational ratio = t.rhs(i) / a;
      if (!leaving || ratio < best || (ratio == best && t.basis()[i] < t.basis()[*leaving])) {
        leaving = i;
        best = ratio;
      }
    }
    if (!leaving) return false;
    t.pivot(*leaving, c);
  }
}

}  // namespace

LpOutcome lp_solve(const LinearProgram& lp) {
  const std::size_t nv = lp.variables.size();

  // Presolve bounds: x = 0 fixes x, x >= 0 makes x nonnegative.
  std::vector<char> fixed_zero(nv, 0), nonneg(nv, 0);
  std::vector<char> consumed(lp.constraints.size(), 0);
  for (std::size_t k = 0; k < lp.constraints.size(); ++k) {
    const auto& c = lp.constraints[k];
    if (c.lhs.size() != 1 || c.rhs != 0 || c.lhs[0].coefficient == 0) continue;
    const auto v = static_cast<std::size_t>(c.lhs[0].variable);
    const int sign = sgn(c.lhs[0].coefficient);
    if (c.relation == Relation::kEqual) {
      fixed_zero[v] = 1;
      consumed[k] = 1;
    } else if ((c.relation == Relation::kGreaterEqual && sign > 0) ||
               (c.relation == Relation::kLessEqual && sign < 0)) {
      nonneg[v] = 1;
      consumed[k] = 1;
    }
  }

  // Column map: each live variable gets a "+" column; free ones also a "-".
  std::vector<int> plus(nv, -1), minus(nv, -1);
  std::size_t ncols = 0;
  for (std::size_t v = 0; v < nv; ++v) {
    if (fixed_zero[v]) continue;
    plus[v] = static_cast<int>(ncols++);
    if (!nonneg[v]) minus[v] = static_cast<int>(ncols++);
  }
  const std::size_t structural = ncols;

  struct Row {
    std::vector<std::pair<std::size_t, Rational>> coeffs;
    Relation rel;
    Rational rhs;
  };
  std::vector<Row> rows;
  for (std::size_t k = 0; k < lp.constraints.size(); ++k) {
    if (consumed[k]) continue;
    const auto& c = lp.constraints[k];
    std::vector<Rational> dense(structural);
    for (const auto& term : c.lhs) {
      const auto v = static_cast<std::size_t>(term.variable);
      if (fixed_zero[v]) continue;
      dense[static_cast<std::size_t>(plus[v])] += term.coefficient;
      if (minus[v] >= 0) dense[static_cast<std::size_t>(minus[v])] -= term.coefficient;
    }
    Row row{{}, c.relation, c.rhs};
    for (std::size_t j = 0; j < structural; ++j) {
      if (dense[j] != 0) row.coeffs.emplace_back(j, dense[j]);
    }
    if (row.coeffs.empty()) {
      const bool ok = (row.rel == Relation::kEqual && row.rhs == 0) ||
                      (row.rel == Relation::kGreaterEqual && row.rhs <= 0) ||
                      (row.rel == Relation::kLessEqual && row.rhs >= 0);
      if (!ok) return LpOutcome{LpStatus::kInfeasible, {}, 0};
      continue;
    }
    if (row.rhs < 0) {
      row.rhs = -row.rhs;
      for (auto& [j, a] : row.coeffs) a = -a;
      if (row.rel == Relation::kGreaterEqual) row.rel = Relation::kLessEqual;
      else if (row.rel == Relation::kLessEqual) row.rel = Relation::kGreaterEqual;
    }
    rows.push_back(std::move(row));
  }

  // Slack (<=), surplus (>=) and artificial (>=, =) columns.
  std::size_t slack_cols = 0, artificial_cols = 0;
  for (const auto& r : rows) {
    if (r.rel != Relation::kEqual) ++slack_cols;
    if (r.rel != Relation::kLessEqual) ++artificial_cols;
  }
  const std::size_t first_artificial = structural + slack_cols;
  const std::size_t total = first_artificial + artificial_cols;
  Tableau t(rows.size(), total);
  std::size_t next_slack = structural, next_art = first_artificial;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (const auto& [j, a] : rows[i].coeffs) t.at(i, j) = a;
    t.rhs(i) = rows[i].rhs;
    switch (rows[i].rel) {
      case Relation::kLessEqual:
        t.at(i, next_slack) = 1;
        t.basis()[i] = next_slack++;
        break;
      case Relation::kGreaterEqual:
        t.at(i, next_slack++) = -1;
        t.at(i, next_art) = 1;
        t.basis()[i] = next_art++;
        break;
      case Relation::kEqual:
        t.at(i, next_art) = 1;
        t.basis()[i] = next_art++;
        break;
    }
  }

  // Phase 1: maximise -(sum of artificials).
  if (artificial_cols > 0) {
    std::vector<Rational> cost(total);
    for (std::size_t j = first_artificial; j < total; ++j) cost[j] = -1;
    std::vector<char> usable(total, 1);
    run_simplex(t, cost, usable);
    Rational infeasibility = 0;
    for (std::size_t i = 0; i < t.rows(); ++i) {
      if (t.basis()[i] >= first_artificial) infeasibility += t.rhs(i);
    }
    if (infeasibility > 0) return LpOutcome{LpStatus::kInfeasible, {}, 0};
    // Drive remaining (zero-level) artificials out of the basis.
    for (std::size_t i = 0; i < t.rows();) {
      if (t.basis()[i] < first_artificial) {
        ++i;
        continue;
      }
      std::optional<std::size_t> col;
      for (std::size_t j = 0; j < first_artificial && !col; ++j) {
        if (t.at(i, j) != 0) col = j;
      }
      if (col) {
        t.pivot(i, *col);
        ++i;
      } else {
        t.drop_row(i);  // redundant equality
      }
    }
  }

  // Phase 2.
  std::vector<Rational> cost(total);
  for (const auto& term : lp.objective) {
    const auto v = static_cast<std::size_t>(term.variable);
    if (fixed_zero[v]) continue;
    cost[static_cast<std::size_t>(plus[v])] += term.coefficient;
    if (minus[v] >= 0) cost[static_cast<std::size_t>(minus[v])] -= term.coefficient;
  }
  std::vector<char> usable(total, 0);
  for (std::size_t j = 0; j < first_artificial; ++j) usable[j] = 1;
  if (!run_simplex(t, cost, usable)) return LpOutcome{LpStatus::kUnbounded, {}, 0};

  std::vector<Rational> column_value(total);
  for (std::size_t i = 0; i < t.rows(); ++i) column_value[t.basis()[i]] = t.rhs(i);
  LpOutcome out;
  out.status = LpStatus::kOptimal;
  out.assignment.resize(nv);
  for (std::size_t v = 0; v < nv; ++v) {
    if (fixed_zero[v]) continue;
    out.assignment[v] = column_value[static_cast<std::size_t>(plus[v])];
    if (minus[v] >= 0) out.assignment[v] -= column_value[static_cast<std::size_t>(minus[v])];
  }
  out.objective = evaluate(lp.objective, out.assignment);
  if (!satisfies(lp, out.assignment)) throw std::logic_error("simplex returned an infeasible point");
  return out;
}

}  // namespace polieq
