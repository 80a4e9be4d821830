#pragma once

#include "polieq/game.hpp"
#include "polieq/lp.hpp"
#include "polieq/mpg.hpp"

#include <optional>
#include <string>
#include <vector>

namespace polieq {

enum class EquilibriumKind { kNash, kPolitical };

/// Which vertices of the visited set feed a player's threshold:
/// kOwnerRestricted uses only her own vertices, kPaperLiteral uses all of them.
enum class ConstraintVariant { kOwnerRestricted, kPaperLiteral };

struct Mode {
  EquilibriumKind kind = EquilibriumKind::kPolitical;
  PlayerId beneficiary = 0;
  ConstraintVariant variant = ConstraintVariant::kOwnerRestricted;

  /// Whether player p's deviations must be unprofitable.
  bool constrains(PlayerId p) const { return kind == EquilibriumKind::kNash || p != beneficiary; }
};

std::string to_string(EquilibriumKind k);
std::string to_string(ConstraintVariant v);
EquilibriumKind parse_kind(const std::string& s);        // "nash" | "political"
ConstraintVariant parse_variant(const std::string& s);   // "owner" | "literal"

/// Lower bound per player on her long-run reward; nullopt = unconstrained.
using Thresholds = std::vector<std::optional<Rational>>;

/// Extra rows appended to the reward part of the system, and the player
/// whose reward is maximised (the beneficiary unless overridden).
struct ObjectiveSpec {
  std::optional<PlayerId> maximise;
  std::vector<std::pair<PlayerId, Rational>> floors;
};

/// Variable layout of the programs built here: one ratio per vertex followed
/// by one per edge.
inline int vertex_variable(VertexId v) { return v; }
inline int edge_variable(const Game& g, EdgeId e) { return static_cast<int>(g.num_vertices()) + e; }

/// Long-run occupation ratios realising one equilibrium outcome.
struct RatioProfile {
  VertexSet visited;    // Q
  VertexSet recurrent;  // S
  std::vector<Rational> vertex_ratio;
  std::vector<Rational> edge_ratio;
  std::vector<Rational> rewards;  // per player: sum_e p_e r_p(e)
  Rational objective;             // value of the maximised reward
};

/// Throws std::invalid_argument naming the violated precondition.
void check_region(const Game& g, const VertexSet& q, const VertexSet& s);

LinearProgram build_program(const Game& g, const Mode& mode, const VertexSet& q,
                            const VertexSet& s, const Thresholds& thresholds,
                            const ObjectiveSpec& objective = {});

/// Thresholds implied by a visited set: the largest punishment value over the
/// relevant vertices of q, for every constrained player owning a vertex of q.
Thresholds derive_thresholds(const Game& g, const Mode& mode, const VertexSet& q,
                             const PunishmentTable& punish);

std::optional<RatioProfile> solve_program(const Game& g, const Mode& mode, const VertexSet& q,
                                          const VertexSet& s, const Thresholds& thresholds,
                                          const ObjectiveSpec& objective = {});

/// Best profile for region (Q, S) with thresholds derived from Q, or nothing
/// if the region admits no equilibrium.
std::optional<RatioProfile> solve_region(const Game& g, const Mode& mode, const VertexSet& q,
                                         const VertexSet& s, const PunishmentTable& punish,
                                         const ObjectiveSpec& objective = {});

/// Re-checks the structural invariants of a profile exactly (nonnegativity,
/// support inside S, normalisation, flow conservation, reward sums). Returns
/// one message per violation.
std::vector<std::string> check_profile(const Game& g, const RatioProfile& profile);

/// Per-player weighted reward sum_e ratio_e * r_p(e).
std::vector<Rational> weighted_rewards(const Game& g, const std::vector<Rational>& edge_ratio);

}  // namespace polieq
