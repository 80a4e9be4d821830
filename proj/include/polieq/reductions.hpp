#pragma once

#include "polieq/enumeration.hpp"

#include <array>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace polieq {

/// 3-CNF formula. Literals are DIMACS-style: +v or -v for v in [1, num_vars].
struct CnfFormula {
  int num_vars = 0;
  std::vector<std::array<int, 3>> clauses;
};

/// Reads DIMACS CNF. Clauses must have exactly three literals unless `pad` is
/// set, in which case shorter clauses are filled by repeating their first
/// literal ("1 2" becomes "1 1 2"). Throws ParseError.
CnfFormula parse_cnf(std::string_view text, bool pad = false);

/// Name of the beneficiary in generated hardness games.
inline constexpr std::string_view kReductionDictator = "d";

/// Hardness game with 2n+1 players and 5n+4m+2 vertices whose best
/// equilibrium pays the dictator 1 iff the formula is satisfiable, 0 otherwise.
Game reduce_3sat(const CnfFormula& f);

/// Rewards 0 become -1, and fresh vertex-less players absorb the remaining
/// sum so that every edge sums to zero. Requires all rewards in {0, 1}.
Game make_zero_sum(const Game& g);

inline constexpr std::string_view kSocietyPlayer = "society";

/// Appends a vertex-less player whose reward is the weighted sum of all
/// others' rewards. Missing weights default to 1.
Game add_social_player(const Game& g, const std::map<std::string, Rational>& weights = {});

/// Optimises the listed players' rewards in priority order, fixing each
/// optimum as a floor before moving to the next objective.
std::optional<EquilibriumWitness> lexicographic_optimize(const Game& g, const Mode& mode,
                                                         const std::vector<PlayerId>& objectives,
                                                         const PunishmentTable& punish);
std::optional<EquilibriumWitness> lexicographic_optimize(const Game& g, const Mode& mode,
                                                         const std::vector<PlayerId>& objectives);

}  // namespace polieq
