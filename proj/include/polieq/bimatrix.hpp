#pragma once

#include "polieq/rational.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace polieq {

using Matrix = std::vector<std::vector<Rational>>;

/// Two-player normal-form game. Rows are the dictator's actions, columns the
/// opponent's; A holds the dictator's payoffs, B the opponent's.
struct Bimatrix {
  std::vector<std::string> dictator_actions;
  std::vector<std::string> opponent_actions;
  Matrix A;
  Matrix B;
};

struct MixedProfile {
  std::vector<Rational> dictator;  // x
  std::vector<Rational> opponent;  // y
  Rational dictator_payoff;        // x A y
  Rational opponent_payoff;        // x B y
};

/// Reads {rows, cols, A, B, dictator: "row"|"col"}; A and B are indexed
/// [row][col] as written and A always holds the dictator's payoffs. Throws
/// ParseError.
Bimatrix parse_bimatrix(std::string_view text);

/// Best mixture for the dictator against an opponent who must be best
/// responding with the pure action assigned to her. Among the dictator's
/// optima the opponent's payoff is maximised.
MixedProfile political_optimum(const Bimatrix& m);

/// Extreme Nash equilibria by enumerating vertices of both best-response
/// polytopes. Throws std::length_error when 2^(a+b) exceeds `limit`.
std::vector<MixedProfile> nash_equilibria(const Bimatrix& m, std::uint64_t limit = 1U << 20);

/// True iff x and y are mutual best responses (exact).
bool is_nash(const Bimatrix& m, const std::vector<Rational>& x, const std::vector<Rational>& y);

MixedProfile make_profile(const Bimatrix& m, std::vector<Rational> x, std::vector<Rational> y);

}  // namespace polieq
