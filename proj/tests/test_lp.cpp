#include "polieq/lp.hpp"

#include <doctest.h>

#include <optional>
#include <random>

using namespace polieq;

namespace {

LinearProgram one_var() {
  LinearProgram lp;
  lp.add_variable("x");
  return lp;
}

}  // namespace

TEST_CASE("lp_solve: bounded single variable") {
  LinearProgram lp = one_var();
  lp.add_constraint({{0, 1}}, Relation::kLessEqual, 1);
  lp.add_constraint({{0, 1}}, Relation::kGreaterEqual, 0);
  lp.objective = {{0, 1}};
  const auto out = lp_solve(lp);
  REQUIRE(out.status == LpStatus::kOptimal);
  CHECK(out.assignment[0] == 1);
  CHECK(out.objective == 1);
}

TEST_CASE("lp_solve: infeasible") {
  LinearProgram lp = one_var();
  lp.add_constraint({{0, 1}}, Relation::kGreaterEqual, 1);
  lp.add_constraint({{0, 1}}, Relation::kLessEqual, 0);
  CHECK(lp_solve(lp).status == LpStatus::kInfeasible);
}

TEST_CASE("lp_solve: unbounded") {
  LinearProgram lp = one_var();
  lp.add_constraint({{0, 1}}, Relation::kGreaterEqual, 0);
  lp.objective = {{0, 1}};
  CHECK(lp_solve(lp).status == LpStatus::kUnbounded);

  LinearProgram free_var = one_var();
  free_var.add_constraint({{0, 1}}, Relation::kLessEqual, 3);
  free_var.objective = {{0, -1}};
  CHECK(lp_solve(free_var).status == LpStatus::kUnbounded);
}

TEST_CASE("lp_solve: free variables may go negative") {
  LinearProgram lp = one_var();
  lp.add_constraint({{0, 1}}, Relation::kLessEqual, Rational(-5, 2));
  lp.objective = {{0, 1}};
  const auto out = lp_solve(lp);
  REQUIRE(out.status == LpStatus::kOptimal);
  CHECK(out.assignment[0] == Rational(-5, 2));
}

TEST_CASE("lp_solve: textbook program") {
  // max 3x + 2y, x + y <= 4, x + 3y <= 6, x <= 3, x, y >= 0  ->  11 at (3, 1)
  LinearProgram lp;
  const int x = lp.add_variable("x"), y = lp.add_variable("y");
  lp.add_constraint({{x, 1}}, Relation::kGreaterEqual, 0);
  lp.add_constraint({{y, 1}}, Relation::kGreaterEqual, 0);
  lp.add_constraint({{x, 1}, {y, 1}}, Relation::kLessEqual, 4);
  lp.add_constraint({{x, 1}, {y, 3}}, Relation::kLessEqual, 6);
  lp.add_constraint({{x, 1}}, Relation::kLessEqual, 3);
  lp.objective = {{x, 3}, {y, 2}};
  const auto out = lp_solve(lp);
  REQUIRE(out.status == LpStatus::kOptimal);
  CHECK(out.objective == 11);
  CHECK(out.assignment == std::vector<Rational>{3, 1});
  CHECK(satisfies(lp, out.assignment));
  CHECK(evaluate(lp.objective, out.assignment) == 11);
}

TEST_CASE("lp_solve: equalities, fixed zeros and degeneracy") {
  LinearProgram lp;
  for (const char* n : {"a", "b", "c"}) lp.add_variable(n);
  for (int v = 0; v < 3; ++v) lp.add_constraint({{v, 1}}, Relation::kGreaterEqual, 0);
  lp.add_constraint({{2, 1}}, Relation::kEqual, 0);
  lp.add_constraint({{0, 1}, {1, 1}, {2, 1}}, Relation::kEqual, 1);
  lp.add_constraint({{0, 1}, {1, -1}}, Relation::kEqual, 0);
  lp.add_constraint({{0, 2}, {1, 2}}, Relation::kEqual, 2);  // redundant
  lp.objective = {{0, 1}, {2, 10}};
  const auto out = lp_solve(lp);
  REQUIRE(out.status == LpStatus::kOptimal);
  CHECK(out.assignment == std::vector<Rational>{Rational(1, 2), Rational(1, 2), 0});
}

TEST_CASE("property: random two-variable programs match vertex enumeration") {
  std::mt19937_64 rng(5);
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  for (int trial = 0; trial < 300; ++trial) {
    struct Row {
      Rational a, b, c;  // a x + b y <= c
    };
    std::vector<Row> rows{{-1, 0, 0}, {0, -1, 0}, {1, 0, 10}, {0, 1, 10}};
    const int extra = pick(1, 4);
    for (int i = 0; i < extra; ++i) rows.push_back({pick(-5, 5), pick(-5, 5), pick(-10, 20)});
    const Rational ox = pick(-4, 4), oy = pick(-4, 4);

    std::optional<Rational> best;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      for (std::size_t j = i + 1; j < rows.size(); ++j) {
        const Rational det = rows[i].a * rows[j].b - rows[i].b * rows[j].a;
        if (det == 0) continue;
        const Rational px = (rows[i].c * rows[j].b - rows[i].b * rows[j].c) / det;
        const Rational py = (rows[i].a * rows[j].c - rows[i].c * rows[j].a) / det;
        bool ok = true;
        for (const auto& r : rows) ok = ok && r.a * px + r.b * py <= r.c;
        if (!ok) continue;
        const Rational val = ox * px + oy * py;
        if (!best || val > *best) best = val;
      }
    }

    LinearProgram lp;
    lp.add_variable("x");
    lp.add_variable("y");
    for (const auto& r : rows) lp.add_constraint({{0, r.a}, {1, r.b}}, Relation::kLessEqual, r.c);
    lp.objective = {{0, ox}, {1, oy}};
    const auto out = lp_solve(lp);
    CAPTURE(trial);
    if (!best) {
      CHECK(out.status == LpStatus::kInfeasible);
    } else {
      REQUIRE(out.status == LpStatus::kOptimal);
      CHECK(out.objective == *best);
      CHECK(satisfies(lp, out.assignment));
    }
  }
}
