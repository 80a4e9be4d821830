#pragma once

#include "polieq/game.hpp"

#include <cstdint>
#include <vector>

namespace polieq {

/// Positional strategy: choice[v] is the chosen out-edge at v, or kNoEdge for
/// vertices the strategy does not control.
struct PositionalStrategy {
  std::vector<EdgeId> choice;
};

/// Solution of the zero-sum game "p against everybody else" for every player p.
struct PunishmentTable {
  /// values[p][v]: what p can secure from v when all others minimise her
  /// mean payoff.
  std::vector<std::vector<Rational>> values;
  /// strategy[p] is defined on p's vertices.
  std::vector<PositionalStrategy> strategy;
  /// coalition[p] is defined on all vertices not owned by p.
  std::vector<PositionalStrategy> coalition;

  const Rational& value(PlayerId p, VertexId v) const {
    return values[static_cast<std::size_t>(p)][static_cast<std::size_t>(v)];
  }
};

/// Exact values of the two-player game for p by finite-horizon value
/// iteration on integer-scaled weights (4 n^3 W rounds) followed by rounding
/// to the unique nearby rational with denominator at most n.
std::vector<Rational> punishment_values(const Game& g, PlayerId p);

struct StrategyPair {
  PositionalStrategy player;
  PositionalStrategy coalition;
};

/// Optimal positional strategies for both sides of the game for p, given its
/// values. Throws std::logic_error if replay does not reproduce the values.
StrategyPair punishment_strategies(const Game& g, PlayerId p, const std::vector<Rational>& values);
StrategyPair punishment_strategies(const Game& g, PlayerId p);

PunishmentTable punishment_table(const Game& g);

/// The play from v in which every vertex follows the given choice function
/// (total over all vertices).
LassoPlay follow_positional(const Game& g, VertexId v, const std::vector<EdgeId>& choice);

/// Merges a player strategy and a coalition strategy into one total choice
/// function.
std::vector<EdgeId> combine(const StrategyPair& s);

class BoundExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exact max-min over every pair of positional strategies. Throws
/// BoundExceeded when the number of strategy profiles exceeds `bound`.
std::vector<Rational> brute_force_values(const Game& g, PlayerId p,
                                         std::uint64_t bound = 1'000'000);

}  // namespace polieq
