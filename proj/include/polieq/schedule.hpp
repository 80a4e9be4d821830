#pragma once

#include "polieq/enumeration.hpp"

#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

namespace polieq {

enum class Phase { kEntry, kIsland, kTransfer };

/// One maximal strongly connected part of a profile's support.
struct Island {
  std::vector<VertexId> vertices;  // increasing
  std::int64_t weight = 1;         // c_j, proportional to the island's vertex mass
  VertexId resume = -1;            // where the island's next segment starts
};

/// Deterministic controller producing the play of a witness. A plain value:
/// advance() returns the successor state and leaves its argument untouched.
struct Scheduler {
  std::shared_ptr<const Game> game;
  VertexSet recurrent;                   // S
  std::vector<std::int64_t> vertex_quota;  // p_v scaled to integers
  std::vector<std::int64_t> edge_quota;    // p_e scaled by the same factor
  std::vector<std::vector<EdgeId>> support_out;  // support out-edges, document order
  std::vector<Island> islands;
  std::int64_t unit = 1;  // L: common denominator of all p_e / p_v

  VertexId current = -1;  // next vertex to emit
  Phase phase = Phase::kEntry;
  std::vector<VertexId> path;  // vertices still to follow in entry/transfer
  std::size_t island = 0;      // j
  std::int64_t round = 1;      // i
  std::int64_t remaining = 0;  // quota moves left in the current segment

  std::vector<std::int64_t> visits;  // n_v, island moves only
  std::vector<std::int64_t> taken;   // n_e, island moves only
  std::int64_t island_moves = 0;
  std::int64_t other_moves = 0;  // entry and transfer
};

/// Throws std::invalid_argument when the witness is malformed or its support
/// is empty.
Scheduler build_schedule(const Game& g, const EquilibriumWitness& w);

/// Emits the next `steps` vertices of the play (the first call starts with
/// the initial vertex).
std::pair<std::vector<VertexId>, Scheduler> advance(const Scheduler& s, std::int64_t steps);

/// Per-player average reward over the edges of a finite play segment. Throws
/// std::invalid_argument for segments with no edge or with a non-edge step.
std::vector<Rational> running_means(const Game& g, const std::vector<VertexId>& segment);

/// Replays the schedule to step `at`, where `deviator` owns the vertex and
/// takes `alt` instead of the scheduled edge; afterwards the deviator plays
/// her optimal positional strategy and everyone else punishes her. Returns her
/// mean reward over `horizon` edges starting with `alt`.
Rational simulate_deviation(const Game& g, const Scheduler& s, PlayerId deviator, std::int64_t at,
                            EdgeId alt, std::int64_t horizon, const PunishmentTable& punish);

}  // namespace polieq
