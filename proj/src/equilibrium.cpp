#include "polieq/equilibrium.hpp"

#include <stdexcept>

namespace polieq {

std::string to_string(EquilibriumKind k) { return k == EquilibriumKind::kNash ? "nash" : "political"; }

std::string to_string(ConstraintVariant v) {
  return v == ConstraintVariant::kOwnerRestricted ? "owner" : "literal";
}

EquilibriumKind parse_kind(const std::string& s) {
  if (s == "nash") return EquilibriumKind::kNash;
  if (s == "political") return EquilibriumKind::kPolitical;
  throw std::invalid_argument("unknown mode '" + s + "'");
}

ConstraintVariant parse_variant(const std::string& s) {
  if (s == "owner") return ConstraintVariant::kOwnerRestricted;
  if (s == "literal") return ConstraintVariant::kPaperLiteral;
  throw std::invalid_argument("unknown constraint variant '" + s + "'");
}

void check_region(const Game& g, const VertexSet& q, const VertexSet& s) {
  if (q.universe() != g.num_vertices() || s.universe() != g.num_vertices()) {
    throw std::invalid_argument("region sets do not match the game's vertex count");
  }
  if (!s.is_subset_of(q)) throw std::invalid_argument("S is not a subset of Q");
  if (!is_strongly_connected(g, s)) {
    throw std::invalid_argument("S is not strongly connected with at least one edge");
  }
  if (!shortest_path(g, g.initial(), s, q)) {
    throw std::invalid_argument("S is not reachable from the initial vertex inside Q");
  }
}

std::vector<Rational> weighted_rewards(const Game& g, const std::vector<Rational>& edge_ratio) {
  std::vector<Rational> out(g.num_players());
  for (EdgeId e = 0; e < static_cast<EdgeId>(g.num_edges()); ++e) {
    const Rational& r = edge_ratio[static_cast<std::size_t>(e)];
    if (r == 0) continue;
    for (PlayerId p = 0; p < static_cast<PlayerId>(g.num_players()); ++p) {
      out[static_cast<std::size_t>(p)] += r * g.reward(e, p);
    }
  }
  return out;
}

namespace {

LinearForm reward_form(const Game& g, PlayerId p, const VertexSet& s) {
  LinearForm form;
  for (EdgeId e = 0; e < static_cast<EdgeId>(g.num_edges()); ++e) {
    const auto& ed = g.edge(e);
    if (!s.contains(ed.from) || !s.contains(ed.to)) continue;
    const Rational& r = g.reward(e, p);
    if (r != 0) form.push_back({edge_variable(g, e), r});
  }
  return form;
}

}  // namespace

LinearProgram build_program(const Game& g, const Mode& mode, const VertexSet& q,
                            const VertexSet& s, const Thresholds& thresholds,
                            const ObjectiveSpec& objective) {
  check_region(g, q, s);
  LinearProgram lp;
  for (VertexId v = 0; v < static_cast<VertexId>(g.num_vertices()); ++v) {
    lp.add_variable("p[" + g.vertex_name(v) + "]");
  }
  for (const auto& ed : g.edges()) {
    lp.add_variable("p[" + g.vertex_name(ed.from) + "->" + g.vertex_name(ed.to) + "]");
  }
  auto in_s = [&](EdgeId e) { return s.contains(g.edge(e).from) && s.contains(g.edge(e).to); };

  // Zero outside S, nonnegative inside.
  for (VertexId v = 0; v < static_cast<VertexId>(g.num_vertices()); ++v) {
    lp.add_constraint({{vertex_variable(v), 1}}, s.contains(v) ? Relation::kGreaterEqual : Relation::kEqual, 0);
  }
  for (EdgeId e = 0; e < static_cast<EdgeId>(g.num_edges()); ++e) {
    lp.add_constraint({{edge_variable(g, e), 1}}, in_s(e) ? Relation::kGreaterEqual : Relation::kEqual, 0);
  }
  // Normalisation.
  LinearForm total;
  for (VertexId v = 0; v < static_cast<VertexId>(g.num_vertices()); ++v) total.push_back({vertex_variable(v), 1});
  lp.add_constraint(std::move(total), Relation::kEqual, 1);
  // Flow: a vertex's ratio equals both its outgoing and its incoming edge mass.
  for (VertexId v : s.members()) {
    LinearForm out{{vertex_variable(v), 1}}, in{{vertex_variable(v), 1}};
    for (EdgeId e : g.out_edges(v)) {
      if (in_s(e)) out.push_back({edge_variable(g, e), -1});
    }
    for (EdgeId e : g.in_edges(v)) {
      if (in_s(e)) in.push_back({edge_variable(g, e), -1});
    }
    lp.add_constraint(std::move(out), Relation::kEqual, 0);
    lp.add_constraint(std::move(in), Relation::kEqual, 0);
  }
  // Rewards.
  for (PlayerId p = 0; p < static_cast<PlayerId>(g.num_players()); ++p) {
    const auto& t = thresholds[static_cast<std::size_t>(p)];
    if (!mode.constrains(p) || !t) continue;
    lp.add_constraint(reward_form(g, p, s), Relation::kGreaterEqual, *t);
  }
  for (const auto& [p, floor] : objective.floors) {
    lp.add_constraint(reward_form(g, p, s), Relation::kGreaterEqual, floor);
  }
  lp.objective = reward_form(g, objective.maximise.value_or(mode.beneficiary), s);
  return lp;
}

Thresholds derive_thresholds(const Game& g, const Mode& mode, const VertexSet& q,
                             const PunishmentTable& punish) {
  Thresholds t(g.num_players());
  const auto members = q.members();
  for (VertexId v : members) {
    const PlayerId o = g.owner(v);
    if (!mode.constrains(o) || t[static_cast<std::size_t>(o)]) continue;
    std::optional<Rational> best;
    for (VertexId u : members) {
      if (mode.variant == ConstraintVariant::kOwnerRestricted && g.owner(u) != o) continue;
      const Rational& r = punish.value(o, u);
      if (!best || r > *best) best = r;
    }
    t[static_cast<std::size_t>(o)] = best;
  }
  return t;
}

std::optional<RatioProfile> solve_program(const Game& g, const Mode& mode, const VertexSet& q,
                                          const VertexSet& s, const Thresholds& thresholds,
                                          const ObjectiveSpec& objective) {
  const LinearProgram lp = build_program(g, mode, q, s, thresholds, objective);
  const LpOutcome outcome = lp_solve(lp);
  if (outcome.status != LpStatus::kOptimal) return std::nullopt;
  RatioProfile prof{q, s, {}, {}, {}, outcome.objective};
  const auto n = g.num_vertices();
  prof.vertex_ratio.assign(outcome.assignment.begin(), outcome.assignment.begin() + static_cast<std::ptrdiff_t>(n));
  prof.edge_ratio.assign(outcome.assignment.begin() + static_cast<std::ptrdiff_t>(n), outcome.assignment.end());
  prof.rewards = weighted_rewards(g, prof.edge_ratio);
  return prof;
}

std::optional<RatioProfile> solve_region(const Game& g, const Mode& mode, const VertexSet& q,
                                         const VertexSet& s, const PunishmentTable& punish,
                                         const ObjectiveSpec& objective) {
  if (!(reachable(g, q) == q)) throw std::invalid_argument("Q is not closed under reachability from the initial vertex");
  return solve_program(g, mode, q, s, derive_thresholds(g, mode, q, punish), objective);
}

std::vector<std::string> check_profile(const Game& g, const RatioProfile& profile) {
  std::vector<std::string> issues;
  const auto& s = profile.recurrent;
  Rational total = 0;
  for (VertexId v = 0; v < static_cast<VertexId>(g.num_vertices()); ++v) {
    const Rational& r = profile.vertex_ratio[static_cast<std::size_t>(v)];
    total += r;
    if (r < 0) issues.push_back("negative ratio at vertex '" + g.vertex_name(v) + "'");
    if (r != 0 && !s.contains(v)) issues.push_back("vertex '" + g.vertex_name(v) + "' outside S has mass");
  }
  if (total != 1) issues.emplace_back("vertex ratios do not sum to 1");
  for (EdgeId e = 0; e < static_cast<EdgeId>(g.num_edges()); ++e) {
    const Rational& r = profile.edge_ratio[static_cast<std::size_t>(e)];
    const auto& ed = g.edge(e);
    if (r < 0) issues.push_back("negative ratio on edge #" + std::to_string(e));
    if (r != 0 && !(s.contains(ed.from) && s.contains(ed.to))) {
      issues.push_back("edge '" + g.vertex_name(ed.from) + "' -> '" + g.vertex_name(ed.to) + "' outside S has mass");
    }
  }
  for (VertexId v = 0; v < static_cast<VertexId>(g.num_vertices()); ++v) {
    Rational out = 0, in = 0;
    for (EdgeId e : g.out_edges(v)) out += profile.edge_ratio[static_cast<std::size_t>(e)];
    for (EdgeId e : g.in_edges(v)) in += profile.edge_ratio[static_cast<std::size_t>(e)];
    const Rational& r = profile.vertex_ratio[static_cast<std::size_t>(v)];
    if (out != r || in != r) issues.push_back("flow not conserved at '" + g.vertex_name(v) + "'");
  }
  if (weighted_rewards(g, profile.edge_ratio) != profile.rewards) {
    issues.emplace_back("stored rewards differ from the weighted edge sums");
  }
  return issues;
}

}  // namespace polieq
