#include "polieq/enumeration.hpp"

#include <algorithm>
#include <set>

namespace polieq {

std::vector<std::vector<std::optional<Rational>>> threshold_choices(const Game& g,
                                                                    const PunishmentTable& punish,
                                                                    const Mode& mode) {
  std::vector<std::vector<std::optional<Rational>>> choices(g.num_players());
  for (PlayerId p = 0; p < static_cast<PlayerId>(g.num_players()); ++p) {
    auto& list = choices[static_cast<std::size_t>(p)];
    const auto owned = g.owned_by(p);
    if (mode.constrains(p) && !owned.empty()) {
      std::set<Rational> values;
      if (mode.variant == ConstraintVariant::kOwnerRestricted) {
        for (VertexId v : owned) values.insert(punish.value(p, v));
      } else {
        for (VertexId v = 0; v < static_cast<VertexId>(g.num_vertices()); ++v) values.insert(punish.value(p, v));
      }
      list.assign(values.begin(), values.end());
    }
    list.emplace_back(std::nullopt);
  }
  return choices;
}

void for_each_threshold_vector(const Game& g, const PunishmentTable& punish, const Mode& mode,
                               const std::function<bool(const ThresholdVector&)>& visit) {
  const auto choices = threshold_choices(g, punish, mode);
  const std::size_t k = choices.size();
  std::vector<std::size_t> digit(k, 0);
  ThresholdVector t(k);
  for (;;) {
    for (std::size_t p = 0; p < k; ++p) t[p] = choices[p][digit[p]];
    if (!visit(t)) return;
    // last player varies fastest
    std::size_t p = k;
    while (p > 0) {
      --p;
      if (++digit[p] < choices[p].size()) break;
      digit[p] = 0;
      if (p == 0) return;
    }
    if (k == 0) return;
  }
}

std::vector<ThresholdVector> threshold_vectors(const Game& g, const PunishmentTable& punish,
                                               const Mode& mode) {
  std::vector<ThresholdVector> out;
  for_each_threshold_vector(g, punish, mode, [&](const ThresholdVector& t) {
    out.push_back(t);
    return true;
  });
  return out;
}

AdmissibleRegion admissible_region(const Game& g, const Mode& mode, const ThresholdVector& t,
                                   const PunishmentTable& punish) {
  VertexSet allowed(g.num_vertices());
  for (VertexId v = 0; v < static_cast<VertexId>(g.num_vertices()); ++v) {
    const PlayerId o = g.owner(v);
    const auto& to = t[static_cast<std::size_t>(o)];
    bool ok;
    if (!mode.constrains(o)) {
      ok = true;
    } else if (!to) {
      ok = false;
    } else {
      ok = punish.value(o, v) <= *to;
    }
    if (ok && mode.variant == ConstraintVariant::kPaperLiteral) {
      for (PlayerId p = 0; p < static_cast<PlayerId>(g.num_players()) && ok; ++p) {
        const auto& tp = t[static_cast<std::size_t>(p)];
        if (mode.constrains(p) && tp && punish.value(p, v) > *tp) ok = false;
      }
    }
    if (ok) allowed.insert(v);
  }
  AdmissibleRegion region{reachable(g, allowed), {}};
  region.candidates = sccs(g, region.visited);
  return region;
}

namespace {

EquilibriumWitness make_witness(const Game& g, const Mode& mode, RatioProfile profile,
                                Thresholds thresholds) {
  EquilibriumWitness w;
  w.mode = mode;
  w.entry = *shortest_path(g, g.initial(), profile.recurrent, profile.visited);
  w.rewards = profile.rewards;
  w.optimum = profile.objective;
  w.thresholds = std::move(thresholds);
  w.profile = std::move(profile);
  return w;
}

}  // namespace

std::optional<EquilibriumWitness> optimize(const Game& g, const Mode& mode,
                                           const PunishmentTable& punish,
                                           const ObjectiveSpec& objective) {
  std::optional<EquilibriumWitness> best;
  std::size_t explored = 0;
  // Identical (S, thresholds) programs recur across threshold vectors.
  std::set<std::pair<VertexSet, std::vector<std::optional<Rational>>>> seen;
  for_each_threshold_vector(g, punish, mode, [&](const ThresholdVector& t) {
    const auto region = admissible_region(g, mode, t, punish);
    for (const auto& s : region.candidates) {
      if (!seen.emplace(s, t).second) continue;
      ++explored;
      auto profile = solve_program(g, mode, region.visited, s, t, objective);
      if (profile && (!best || profile->objective > best->optimum)) {
        best = make_witness(g, mode, std::move(*profile), t);
      }
    }
    return true;
  });
  if (best) best->regions_explored = explored;
  return best;
}

std::optional<EquilibriumWitness> optimize(const Game& g, const Mode& mode) {
  return optimize(g, mode, punishment_table(g));
}

bool decide(const Game& g, const Mode& mode, const Rational& threshold) {
  const auto w = optimize(g, mode);
  return w && w->optimum >= threshold;
}

std::optional<EquilibriumWitness> exhaustive_optimize(const Game& g, const Mode& mode,
                                                      const PunishmentTable& punish,
                                                      const ObjectiveSpec& objective,
                                                      std::size_t max_vertices) {
  const std::size_t n = g.num_vertices();
  if (n > max_vertices) {
    throw BoundExceeded("exhaustive search limited to " + std::to_string(max_vertices) + " vertices");
  }
  auto to_set = [n](std::uint32_t mask) {
    VertexSet s(n);
    for (std::size_t v = 0; v < n; ++v) {
      if (mask >> v & 1U) s.insert(static_cast<VertexId>(v));
    }
    return s;
  };
  std::optional<EquilibriumWitness> best;
  std::size_t explored = 0;
  const std::uint32_t full = n == 32 ? ~0U : (1U << n) - 1U;
  for (std::uint32_t qm = 1; qm <= full && qm != 0; ++qm) {
    if (!(qm >> g.initial() & 1U)) continue;
    const VertexSet q = to_set(qm);
    if (!(reachable(g, q) == q)) continue;
    const Thresholds t = derive_thresholds(g, mode, q, punish);
    for (std::uint32_t sm = qm; sm != 0; sm = (sm - 1) & qm) {
      const VertexSet s = to_set(sm);
      if (!is_strongly_connected(g, s)) continue;
      ++explored;
      auto profile = solve_program(g, mode, q, s, t, objective);
      if (profile && (!best || profile->objective > best->optimum)) {
        best = make_witness(g, mode, std::move(*profile), t);
      }
    }
  }
  if (best) best->regions_explored = explored;
  return best;
}

std::vector<std::string> check_witness(const Game& g, const EquilibriumWitness& w,
                                       const PunishmentTable& punish) {
  std::vector<std::string> issues = check_profile(g, w.profile);
  const auto& q = w.profile.visited;
  if (!(reachable(g, q) == q)) issues.emplace_back("Q is not reachability-closed");
  if (!w.profile.recurrent.is_subset_of(q)) issues.emplace_back("S is not inside Q");
  if (w.entry.empty() || w.entry.front() != g.initial()) {
    issues.emplace_back("entry path does not start at the initial vertex");
  } else {
    for (std::size_t i = 0; i < w.entry.size(); ++i) {
      if (!q.contains(w.entry[i])) issues.emplace_back("entry path leaves Q");
      if (i + 1 < w.entry.size() && !g.find_edge(w.entry[i], w.entry[i + 1])) {
        issues.emplace_back("entry path uses a non-edge");
      }
    }
    if (!w.profile.recurrent.contains(w.entry.back())) issues.emplace_back("entry path does not reach S");
  }
  if (w.rewards != w.profile.rewards) issues.emplace_back("witness rewards differ from the profile");
  const Thresholds floors = derive_thresholds(g, w.mode, q, punish);
  for (PlayerId p = 0; p < static_cast<PlayerId>(g.num_players()); ++p) {
    const auto& f = floors[static_cast<std::size_t>(p)];
    if (f && w.profile.rewards[static_cast<std::size_t>(p)] < *f) {
      issues.push_back("player '" + g.player_name(p) + "' would profit from deviating");
    }
  }
  return issues;
}

}  // namespace polieq
