#pragma once

#include "polieq/rational.hpp"

#include <string>
#include <utility>
#include <vector>

namespace polieq {

enum class Relation { kEqual, kGreaterEqual, kLessEqual };

struct Term {
  int variable;
  Rational coefficient;
};

using LinearForm = std::vector<Term>;

struct Constraint {
  LinearForm lhs;
  Relation relation;
  Rational rhs;
};

/// Variables are unrestricted in sign unless a constraint bounds them; the
/// solver recognises single-variable rows `c*x >= 0` and `c*x = 0` as bounds.
struct LinearProgram {
  std::vector<std::string> variables;
  std::vector<Constraint> constraints;
  LinearForm objective;  // maximised

  int add_variable(std::string name);
  void add_constraint(LinearForm lhs, Relation rel, Rational rhs);
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

struct LpOutcome {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<Rational> assignment;  // per variable, when optimal
  Rational objective;
};

/// Two-phase tableau simplex over exact rationals with Bland's rule.
LpOutcome lp_solve(const LinearProgram& lp);

/// Evaluates a linear form at a point.
Rational evaluate(const LinearForm& form, const std::vector<Rational>& point);

/// True iff `point` satisfies every constraint exactly.
bool satisfies(const LinearProgram& lp, const std::vector<Rational>& point);

}  // namespace polieq
