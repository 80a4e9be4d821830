#pragma once

#include "polieq/enumeration.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace polieq {

/// "sha256:<hex>" of the game's canonical serialisation.
std::string game_digest(const Game& g);

struct ReportOptions {
  std::string command;
  std::optional<Rational> threshold;  // decision mode when set
  std::vector<PlayerId> objectives;   // lexicographic runs: priority order
  double duration_ms = 0;
};

/// JSON report for an optimisation result (or its absence). Keys keep a fixed
/// order and every number except counts and the duration is a rational
/// string, so reports are byte-identical across runs apart from
/// "duration_ms".
nlohmann::ordered_json make_report(const Game& g, const Mode& mode,
                                   const std::optional<EquilibriumWitness>& w,
                                   const ReportOptions& options);

/// Rebuilds the witness stored in a report. Throws ParseError on malformed
/// reports.
EquilibriumWitness witness_from_report(const Game& g, const nlohmann::json& report);

/// Re-validates a report against its game: digest, profile invariants,
/// entry path, reward floors from freshly computed punishment values, and
/// the claimed optimum. Empty iff the report checks out.
std::vector<std::string> verify_report(const Game& g, const nlohmann::json& report);

}  // namespace polieq
