#include "polieq/schedule.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace polieq {

namespace {

void begin_island(Scheduler& s, std::size_t j) {
  s.island = j;
  s.remaining = s.round * s.islands[j].weight * s.unit;
  auto route = shortest_path(*s.game, s.current, VertexSet(s.game->num_vertices(), {s.islands[j].resume}),
                             s.recurrent);
  if (!route) throw std::logic_error("island unreachable inside S");
  s.path.assign(route->begin() + 1, route->end());
  s.phase = s.path.empty() ? Phase::kIsland : Phase::kTransfer;
}

EdgeId quota_choice(const Scheduler& s, VertexId v) {
  const auto& outs = s.support_out[static_cast<std::size_t>(v)];
  const __int128 nv = s.visits[static_cast<std::size_t>(v)];
  const __int128 pv = s.vertex_quota[static_cast<std::size_t>(v)];
  for (EdgeId e : outs) {
    const __int128 ne = s.taken[static_cast<std::size_t>(e)];
    if (ne * pv < static_cast<__int128>(s.edge_quota[static_cast<std::size_t>(e)]) * nv) return e;
  }
  return outs.front();
}

}  // namespace

Scheduler build_schedule(const Game& g, const EquilibriumWitness& w) {
  const auto& prof = w.profile;
  if (prof.vertex_ratio.size() != g.num_vertices() || prof.edge_ratio.size() != g.num_edges()) {
    throw std::invalid_argument("witness does not match the game");
  }
  if (auto issues = check_profile(g, prof); !issues.empty()) {
    throw std::invalid_argument("invalid witness: " + issues.front());
  }
  if (w.entry.empty() || w.entry.front() != g.initial() || !prof.recurrent.contains(w.entry.back())) {
    throw std::invalid_argument("invalid witness entry path");
  }

  Scheduler s;
  s.game = std::make_shared<const Game>(g);
  s.recurrent = prof.recurrent;

  VertexSet support(g.num_vertices());
  s.support_out.assign(g.num_vertices(), {});
  for (EdgeId e = 0; e < static_cast<EdgeId>(g.num_edges()); ++e) {
    if (prof.edge_ratio[static_cast<std::size_t>(e)] > 0) {
      support.insert(g.edge(e).from);
      s.support_out[static_cast<std::size_t>(g.edge(e).from)].push_back(e);
    }
  }
  if (support.empty()) throw std::invalid_argument("witness support is empty");

  // Integer quotas and the segment unit.
  std::vector<Rational> masses(prof.vertex_ratio);
  masses.insert(masses.end(), prof.edge_ratio.begin(), prof.edge_ratio.end());
  const Integer scale = common_denominator(masses);
  for (const auto& r : prof.vertex_ratio) s.vertex_quota.push_back(to_int64(Rational(r * scale).get_num()));
  for (const auto& r : prof.edge_ratio) s.edge_quota.push_back(to_int64(Rational(r * scale).get_num()));
  std::vector<Rational> quotients;
  for (EdgeId e = 0; e < static_cast<EdgeId>(g.num_edges()); ++e) {
    const auto& r = prof.edge_ratio[static_cast<std::size_t>(e)];
    if (r > 0) quotients.push_back(r / prof.vertex_ratio[static_cast<std::size_t>(g.edge(e).from)]);
  }
  s.unit = to_int64(common_denominator(quotients));

  // Islands: SCCs of the support graph.
  std::vector<Edge> support_edges;
  for (EdgeId e = 0; e < static_cast<EdgeId>(g.num_edges()); ++e) {
    if (prof.edge_ratio[static_cast<std::size_t>(e)] > 0) support_edges.push_back(g.edge(e));
  }
  const Game support_game(g.players(), g.vertices(), std::vector<PlayerId>(g.num_vertices(), 0),
                          g.initial(), std::move(support_edges), {});
  std::vector<Rational> island_mass;
  for (const auto& comp : sccs(support_game, support)) {
    Island isl;
    isl.vertices = comp.members();
    isl.resume = isl.vertices.front();
    Rational mass = 0;
    for (VertexId v : isl.vertices) mass += prof.vertex_ratio[static_cast<std::size_t>(v)];
    island_mass.push_back(mass);
    s.islands.push_back(std::move(isl));
  }
  const Integer den = common_denominator(island_mass);
  Integer g_all = 0;
  std::vector<Integer> weights;
  for (const auto& m : island_mass) {
    Integer c = Rational(m * den).get_num();
    weights.push_back(c);
    mpz_gcd(g_all.get_mpz_t(), g_all.get_mpz_t(), c.get_mpz_t());
  }
  for (std::size_t j = 0; j < weights.size(); ++j) s.islands[j].weight = to_int64(weights[j] / g_all);

  s.visits.assign(g.num_vertices(), 0);
  s.taken.assign(g.num_edges(), 0);
  s.current = w.entry.front();
  s.path.assign(w.entry.begin() + 1, w.entry.end());
  s.phase = Phase::kEntry;
  s.round = 1;
  if (s.path.empty()) begin_island(s, 0);
  return s;
}

std::pair<std::vector<VertexId>, Scheduler> advance(const Scheduler& in, std::int64_t steps) {
  Scheduler s = in;
  std::vector<VertexId> out;
  out.reserve(static_cast<std::size_t>(std::max<std::int64_t>(steps, 0)));
  for (std::int64_t k = 0; k < steps; ++k) {
    out.push_back(s.current);
    if (s.phase != Phase::kIsland) {
      s.current = s.path.front();
      s.path.erase(s.path.begin());
      ++s.other_moves;
      if (s.path.empty()) {
        if (s.phase == Phase::kEntry) begin_island(s, 0);
        else s.phase = Phase::kIsland;
      }
      continue;
    }
    const VertexId v = s.current;
    ++s.visits[static_cast<std::size_t>(v)];
    const EdgeId e = quota_choice(s, v);
    ++s.taken[static_cast<std::size_t>(e)];
    s.current = s.game->edge(e).to;
    ++s.island_moves;
    if (--s.remaining == 0) {
      s.islands[s.island].resume = s.current;
      std::size_t next = s.island + 1;
      if (next == s.islands.size()) {
        next = 0;
        ++s.round;
      }
      begin_island(s, next);
    }
  }
  return {std::move(out), std::move(s)};
}

std::vector<Rational> running_means(const Game& g, const std::vector<VertexId>& segment) {
  if (segment.size() < 2) throw std::invalid_argument("segment traverses no edge");
  std::vector<std::int64_t> count(g.num_edges(), 0);
  for (std::size_t i = 0; i + 1 < segment.size(); ++i) {
    auto e = g.find_edge(segment[i], segment[i + 1]);
    if (!e) throw std::invalid_argument("segment step " + std::to_string(i) + " is not an edge");
    ++count[static_cast<std::size_t>(*e)];
  }
  std::vector<Rational> mean(g.num_players());
  const auto edges = static_cast<long>(segment.size() - 1);
  for (PlayerId p = 0; p < static_cast<PlayerId>(g.num_players()); ++p) {
    Rational sum = 0;
    for (EdgeId e = 0; e < static_cast<EdgeId>(g.num_edges()); ++e) {
      if (count[static_cast<std::size_t>(e)] != 0) sum += g.reward(e, p) * count[static_cast<std::size_t>(e)];
    }
    mean[static_cast<std::size_t>(p)] = sum / edges;
  }
  return mean;
}

Rational simulate_deviation(const Game& g, const Scheduler& s, PlayerId deviator, std::int64_t at,
                            EdgeId alt, std::int64_t horizon, const PunishmentTable& punish) {
  if (at < 0 || horizon <= 0) throw std::invalid_argument("step index and horizon must be nonnegative/positive");
  const auto [play, unused] = advance(s, at + 2);
  const VertexId v = play[static_cast<std::size_t>(at)];
  if (g.owner(v) != deviator) {
    throw std::invalid_argument("vertex '" + g.vertex_name(v) + "' at step " + std::to_string(at) +
                                " is not owned by the deviator");
  }
  if (alt < 0 || alt >= static_cast<EdgeId>(g.num_edges()) || g.edge(alt).from != v) {
    throw std::invalid_argument("deviation edge does not leave the scheduled vertex");
  }
  if (g.edge(alt).to == play[static_cast<std::size_t>(at) + 1]) {
    throw std::invalid_argument("deviation edge coincides with the scheduled move");
  }

  StrategyPair response{punish.strategy[static_cast<std::size_t>(deviator)],
                        punish.coalition[static_cast<std::size_t>(deviator)]};
  const auto choice = combine(response);
  const LassoPlay after = follow_positional(g, g.edge(alt).to, choice);

  // Edges after alt: prefix edges, then the cycle repeated.
  auto edge_reward = [&](VertexId a) {
    return g.reward(choice[static_cast<std::size_t>(a)], deviator);
  };
  Rational sum = g.reward(alt, deviator);
  std::int64_t left = horizon - 1;
  for (std::size_t i = 0; i < after.prefix.size() && left > 0; ++i, --left) sum += edge_reward(after.prefix[i]);
  if (left > 0) {
    Rational cycle_sum = 0;
    for (VertexId a : after.cycle) cycle_sum += edge_reward(a);
    const auto len = static_cast<std::int64_t>(after.cycle.size());
    sum += cycle_sum * static_cast<long>(left / len);
    for (std::int64_t i = 0; i < left % len; ++i) sum += edge_reward(after.cycle[static_cast<std::size_t>(i)]);
  }
  return sum / static_cast<long>(horizon);
}

}  // namespace polieq
