#include "polieq/mpg.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <map>
#include <stdexcept>

namespace polieq {

namespace {

struct ScaledWeights {
  Integer denominator;             // rewards of p were multiplied by this
  std::vector<std::int64_t> weight;  // per edge
  std::int64_t max_abs = 0;
};

ScaledWeights scale_rewards(const Game& g, PlayerId p) {
  std::vector<Rational> rewards;
  rewards.reserve(g.num_edges());
  for (EdgeId e = 0; e < static_cast<EdgeId>(g.num_edges()); ++e) rewards.push_back(g.reward(e, p));
  ScaledWeights out;
  out.denominator = common_denominator(rewards);
  out.weight.reserve(rewards.size());
  for (const auto& r : rewards) {
    Rational scaled = r * out.denominator;
    const std::int64_t w = to_int64(scaled.get_num());
    out.weight.push_back(w);
    out.max_abs = std::max(out.max_abs, std::abs(w));
  }
  return out;
}

// Cycle mean of a functional graph walk, as (sum, length) in scaled units.
struct Mean {
  std::int64_t sum;
  std::int64_t len;
};

bool less(const Mean& a, const Mean& b) {
  return static_cast<__int128>(a.sum) * b.len < static_cast<__int128>(b.sum) * a.len;
}

}  // namespace

std::vector<Rational> punishment_values(const Game& g, PlayerId p) {
  const auto n = static_cast<std::int64_t>(g.num_vertices());
  const ScaledWeights sw = scale_rewards(g, p);
  std::vector<Rational> values(g.num_vertices());
  if (sw.max_abs == 0) return values;

  const std::int64_t W = sw.max_abs;
  const Integer horizon_z = Integer(4) * n * n * n * W;
  if (horizon_z * W > Integer(std::numeric_limits<std::int64_t>::max() / 4)) {
    throw std::overflow_error("value iteration horizon too large for 64-bit accumulation");
  }
  const std::int64_t k = to_int64(horizon_z);

  std::vector<std::int64_t> cur(g.num_vertices(), 0), next(g.num_vertices(), 0);
  for (std::int64_t step = 0; step < k; ++step) {
    for (VertexId v = 0; v < static_cast<VertexId>(n); ++v) {
      const bool maximise = g.owner(v) == p;
      std::int64_t best = maximise ? std::numeric_limits<std::int64_t>::min()
                                   : std::numeric_limits<std::int64_t>::max();
      for (EdgeId e : g.out_edges(v)) {
        const std::int64_t cand = sw.weight[static_cast<std::size_t>(e)] + cur[static_cast<std::size_t>(g.edge(e).to)];
        best = maximise ? std::max(best, cand) : std::min(best, cand);
      }
      next[static_cast<std::size_t>(v)] = best;
    }
    cur.swap(next);
  }

  // |nu_k(v)/k - value(v)| <= 2nW/k, and distinct rationals with denominator
  // <= n are more than 1/n^2 = 4nW/k apart, so exactly one candidate fits.
  const Integer tolerance = Integer(2) * n * W;
  for (VertexId v = 0; v < static_cast<VertexId>(n); ++v) {
    const Integer nu = cur[static_cast<std::size_t>(v)];
    std::optional<Rational> found;
    for (std::int64_t q = 1; q <= n; ++q) {
      // nearest integer a to nu*q/k
      Rational exact(nu * q, horizon_z);
      Integer a;
      Rational shifted = exact + Rational(1, 2);
      mpz_fdiv_q(a.get_mpz_t(), shifted.get_num_mpz_t(), shifted.get_den_mpz_t());
      Integer diff = a * horizon_z - nu * q;
      if (abs(diff) <= tolerance * q) {
        Rational cand(a, q);
        cand.canonicalize();
        if (found && *found != cand) {
          throw std::logic_error("ambiguous rounding in value iteration");
        }
        found = cand;
      }
    }
    if (!found) throw std::logic_error("value iteration did not converge to a rational value");
    values[static_cast<std::size_t>(v)] = *found / sw.denominator;
  }
  return values;
}

LassoPlay follow_positional(const Game& g, VertexId v, const std::vector<EdgeId>& choice) {
  std::vector<int> pos(g.num_vertices(), -1);
  std::vector<VertexId> walk;
  while (pos[static_cast<std::size_t>(v)] == -1) {
    pos[static_cast<std::size_t>(v)] = static_cast<int>(walk.size());
    walk.push_back(v);
    v = g.edge(choice[static_cast<std::size_t>(v)]).to;
  }
  const auto start = static_cast<std::size_t>(pos[static_cast<std::size_t>(v)]);
  LassoPlay play;
  play.prefix.assign(walk.begin(), walk.begin() + static_cast<std::ptrdiff_t>(start));
  play.cycle.assign(walk.begin() + static_cast<std::ptrdiff_t>(start), walk.end());
  return play;
}

std::vector<EdgeId> combine(const StrategyPair& s) {
  std::vector<EdgeId> out = s.player.choice;
  for (std::size_t v = 0; v < out.size(); ++v) {
    if (out[v] == kNoEdge) out[v] = s.coalition.choice[v];
  }
  return out;
}

namespace {

// Minimal-credit energy game on one value class. `energy_side(v)` says whether
// v belongs to the side that keeps the energy nonnegative. Returns the chosen
// edge for each vertex of that side.
std::vector<EdgeId> energy_strategy(const Game& g, const std::vector<char>& in_class,
                                    const std::vector<std::vector<EdgeId>>& allowed,
                                    const std::vector<std::int64_t>& weight,
                                    const std::vector<char>& energy_side) {
  const auto n = g.num_vertices();
  std::int64_t wmax = 0;
  for (std::size_t v = 0; v < n; ++v) {
    if (!in_class[v]) continue;
    for (EdgeId e : allowed[v]) wmax = std::max(wmax, std::abs(weight[static_cast<std::size_t>(e)]));
  }
  const std::int64_t cap = static_cast<std::int64_t>(n) * wmax;
  std::vector<std::int64_t> credit(n, 0);
  auto need = [&](EdgeId e) {
    return std::max<std::int64_t>(0, credit[static_cast<std::size_t>(g.edge(e).to)] - weight[static_cast<std::size_t>(e)]);
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t v = 0; v < n; ++v) {
      if (!in_class[v]) continue;
      std::int64_t best = energy_side[v] ? std::numeric_limits<std::int64_t>::max() : 0;
      for (EdgeId e : allowed[v]) {
        best = energy_side[v] ? std::min(best, need(e)) : std::max(best, need(e));
      }
      if (best > credit[v]) {
        if (best > cap) throw std::logic_error("energy iteration diverged on a value class");
        credit[v] = best;
        changed = true;
      }
    }
  }
  std::vector<EdgeId> choice(n, kNoEdge);
  for (std::size_t v = 0; v < n; ++v) {
    if (!in_class[v] || !energy_side[v]) continue;
    for (EdgeId e : allowed[v]) {
      if (need(e) <= credit[v]) {
        choice[v] = e;
        break;
      }
    }
  }
  return choice;
}

}  // namespace

StrategyPair punishment_strategies(const Game& g, PlayerId p, const std::vector<Rational>& values) {
  const auto n = g.num_vertices();
  const ScaledWeights sw = scale_rewards(g, p);
  StrategyPair out;
  out.player.choice.assign(n, kNoEdge);
  out.coalition.choice.assign(n, kNoEdge);

  std::map<Rational, std::vector<VertexId>> classes;
  for (VertexId v = 0; v < static_cast<VertexId>(n); ++v) classes[values[static_cast<std::size_t>(v)]].push_back(v);

  for (const auto& [value, members] : classes) {
    std::vector<char> in_class(n, 0);
    for (VertexId v : members) in_class[static_cast<std::size_t>(v)] = 1;
    std::vector<std::vector<EdgeId>> allowed(n);
    for (VertexId v : members) {
      for (EdgeId e : g.out_edges(v)) {
        if (in_class[static_cast<std::size_t>(g.edge(e).to)]) allowed[static_cast<std::size_t>(v)].push_back(e);
      }
      if (allowed[static_cast<std::size_t>(v)].empty()) {
        throw std::logic_error("value class of vertex '" + g.vertex_name(v) + "' is not closed");
      }
    }
    // Shift weights so the class value becomes zero: w' = Q*w - A where
    // value*D = A/Q.
    Rational scaled = value * sw.denominator;
    const std::int64_t A = to_int64(scaled.get_num());
    const std::int64_t Q = to_int64(scaled.get_den());
    std::vector<std::int64_t> shifted(g.num_edges()), negated(g.num_edges());
    for (std::size_t e = 0; e < g.num_edges(); ++e) {
      shifted[e] = Q * sw.weight[e] - A;
      negated[e] = -shifted[e];
    }
    std::vector<char> is_player(n, 0), is_coalition(n, 0);
    for (VertexId v : members) {
      is_player[static_cast<std::size_t>(v)] = g.owner(v) == p;
      is_coalition[static_cast<std::size_t>(v)] = g.owner(v) != p;
    }
    const auto pc = energy_strategy(g, in_class, allowed, shifted, is_player);
    const auto cc = energy_strategy(g, in_class, allowed, negated, is_coalition);
    for (VertexId v : members) {
      const auto i = static_cast<std::size_t>(v);
      if (is_player[i]) out.player.choice[i] = pc[i];
      else out.coalition.choice[i] = cc[i];
    }
  }

  const auto joint = combine(out);
  for (VertexId v = 0; v < static_cast<VertexId>(n); ++v) {
    if (lasso_payoff(g, follow_positional(g, v, joint), p) != values[static_cast<std::size_t>(v)]) {
      throw std::logic_error("punishment strategies do not reproduce the value at '" + g.vertex_name(v) + "'");
    }
  }
  return out;
}

StrategyPair punishment_strategies(const Game& g, PlayerId p) {
  return punishment_strategies(g, p, punishment_values(g, p));
}

PunishmentTable punishment_table(const Game& g) {
  PunishmentTable t;
  for (PlayerId p = 0; p < static_cast<PlayerId>(g.num_players()); ++p) {
    auto values = punishment_values(g, p);
    auto strategies = punishment_strategies(g, p, values);
    t.values.push_back(std::move(values));
    t.strategy.push_back(std::move(strategies.player));
    t.coalition.push_back(std::move(strategies.coalition));
  }
  return t;
}

std::vector<Rational> brute_force_values(const Game& g, PlayerId p, std::uint64_t bound) {
  const auto n = g.num_vertices();
  const ScaledWeights sw = scale_rewards(g, p);

  std::vector<VertexId> mine, theirs;
  std::uint64_t profiles = 1;
  for (VertexId v = 0; v < static_cast<VertexId>(n); ++v) {
    (g.owner(v) == p ? mine : theirs).push_back(v);
    profiles *= g.out_edges(v).size();
    if (profiles > bound) throw BoundExceeded("strategy profile count exceeds " + std::to_string(bound));
  }

  // Odometer over the out-edge choices of a vertex group; returns false after
  // the last combination.
  auto advance = [&](std::vector<std::size_t>& digits, const std::vector<VertexId>& group) {
    for (std::size_t i = 0; i < group.size(); ++i) {
      if (++digits[i] < g.out_edges(group[i]).size()) return true;
      digits[i] = 0;
    }
    return false;
  };

  std::vector<EdgeId> choice(n);
  std::vector<Mean> best(n, Mean{std::numeric_limits<std::int64_t>::min() / 4, 1});
  std::vector<Mean> worst(n);
  std::vector<int> pos(n);
  std::vector<VertexId> walk;

  std::vector<std::size_t> dm(mine.size(), 0);
  do {
    for (std::size_t i = 0; i < mine.size(); ++i) choice[static_cast<std::size_t>(mine[i])] = g.out_edges(mine[i])[dm[i]];
    std::fill(worst.begin(), worst.end(), Mean{std::numeric_limits<std::int64_t>::max() / 4, 1});
    std::vector<std::size_t> dt(theirs.size(), 0);
    do {
      for (std::size_t i = 0; i < theirs.size(); ++i) choice[static_cast<std::size_t>(theirs[i])] = g.out_edges(theirs[i])[dt[i]];
      for (VertexId start = 0; start < static_cast<VertexId>(n); ++start) {
        std::fill(pos.begin(), pos.end(), -1);
        walk.clear();
        VertexId v = start;
        while (pos[static_cast<std::size_t>(v)] == -1) {
          pos[static_cast<std::size_t>(v)] = static_cast<int>(walk.size());
          walk.push_back(v);
          v = g.edge(choice[static_cast<std::size_t>(v)]).to;
        }
        Mean m{0, 0};
        for (auto i = static_cast<std::size_t>(pos[static_cast<std::size_t>(v)]); i < walk.size(); ++i) {
          m.sum += sw.weight[static_cast<std::size_t>(choice[static_cast<std::size_t>(walk[i])])];
          ++m.len;
        }
        if (less(m, worst[static_cast<std::size_t>(start)])) worst[static_cast<std::size_t>(start)] = m;
      }
    } while (advance(dt, theirs));
    for (std::size_t v = 0; v < n; ++v) {
      if (less(best[v], worst[v])) best[v] = worst[v];
    }
  } while (advance(dm, mine));

  std::vector<Rational> values(n);
  for (std::size_t v = 0; v < n; ++v) {
    values[v] = Rational(best[v].sum, best[v].len);
    values[v].canonicalize();
    values[v] /= sw.denominator;
  }
  return values;
}

}  // namespace polieq
