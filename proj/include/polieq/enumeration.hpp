#pragma once

#include "polieq/equilibrium.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace polieq {

/// Per-player threshold; nullopt means the player may own no visited vertex.
using ThresholdVector = Thresholds;

struct EquilibriumWitness {
  Mode mode;
  RatioProfile profile;           // carries Q and S
  std::vector<VertexId> entry;    // initial ... first vertex of S, inside Q
  Thresholds thresholds;          // the reward floors the profile was solved under
  std::vector<Rational> rewards;  // per player
  Rational optimum;               // maximised reward
  std::size_t regions_explored = 0;
};

/// Candidate values per player in enumeration order: ascending punishment
/// values (at her own vertices, or at all vertices for the literal variant),
/// then "unconstrained". Players owning no vertex, and the beneficiary in
/// political mode, only get "unconstrained".
std::vector<std::vector<std::optional<Rational>>> threshold_choices(const Game& g,
                                                                    const PunishmentTable& punish,
                                                                    const Mode& mode);

/// Cartesian product of threshold_choices, visited in lexicographic order.
/// Stops early when the visitor returns false.
void for_each_threshold_vector(const Game& g, const PunishmentTable& punish, const Mode& mode,
                               const std::function<bool(const ThresholdVector&)>& visit);

/// Materialised form of for_each_threshold_vector.
std::vector<ThresholdVector> threshold_vectors(const Game& g, const PunishmentTable& punish,
                                               const Mode& mode);

struct AdmissibleRegion {
  VertexSet visited;                 // maximal Q for the thresholds
  std::vector<VertexSet> candidates;  // its SCCs, each a possible S
};

AdmissibleRegion admissible_region(const Game& g, const Mode& mode, const ThresholdVector& t,
                                   const PunishmentTable& punish);

/// Best equilibrium outcome for the beneficiary (or for `objective.maximise`,
/// subject to `objective.floors`), searching threshold vectors and the SCCs of
/// their maximal visited sets.
std::optional<EquilibriumWitness> optimize(const Game& g, const Mode& mode,
                                           const PunishmentTable& punish,
                                           const ObjectiveSpec& objective = {});
std::optional<EquilibriumWitness> optimize(const Game& g, const Mode& mode);

/// True iff some equilibrium gives the beneficiary at least `threshold`.
bool decide(const Game& g, const Mode& mode, const Rational& threshold);

/// Oracle: every reachability-closed Q and every strongly connected S inside
/// it. Throws BoundExceeded above `max_vertices`.
std::optional<EquilibriumWitness> exhaustive_optimize(const Game& g, const Mode& mode,
                                                      const PunishmentTable& punish,
                                                      const ObjectiveSpec& objective = {},
                                                      std::size_t max_vertices = 14);

/// Re-validates a witness from scratch: profile invariants, entry path, and
/// the reward floors implied by Q and the punishment values.
std::vector<std::string> check_witness(const Game& g, const EquilibriumWitness& w,
                                       const PunishmentTable& punish);

}  // namespace polieq
