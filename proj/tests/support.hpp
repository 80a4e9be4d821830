#pragma once

#include "polieq/game.hpp"
#include "polieq/reductions.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

namespace polieq::testing {

inline std::string data_path(const std::string& name) { return std::string(POLIEQ_TEST_DATA) + "/" + name; }

inline std::string read_data(const std::string& name) {
  std::ifstream in(data_path(name), std::ios::binary);
  if (!in) throw std::runtime_error("missing fixture " + name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Game fig1() { return parse_game(read_data("fig1.json")); }

struct RandomGameSpec {
  int max_vertices = 6;
  int max_players = 3;
  int max_reward = 2;
  int max_out_degree = 3;
};

/// Random valid game: vertex 0 is initial, every vertex has 1..max_out_degree
/// distinct successors and integer rewards in [-max_reward, max_reward].
inline Game random_game(std::mt19937_64& rng, const RandomGameSpec& spec = {}) {
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  const int n = pick(1, spec.max_vertices);
  const int k = pick(1, spec.max_players);
  std::vector<std::string> players, vertices;
  for (int p = 0; p < k; ++p) players.push_back("p" + std::to_string(p));
  std::vector<PlayerId> owner;
  for (int v = 0; v < n; ++v) {
    vertices.push_back("v" + std::to_string(v));
    owner.push_back(pick(0, k - 1));
  }
  std::vector<Edge> edges;
  std::vector<std::vector<Rational>> rewards;
  for (int v = 0; v < n; ++v) {
    std::vector<int> targets(static_cast<std::size_t>(n));
    for (int t = 0; t < n; ++t) targets[static_cast<std::size_t>(t)] = t;
    std::shuffle(targets.begin(), targets.end(), rng);
    const int degree = pick(1, std::min(n, spec.max_out_degree));
    targets.resize(static_cast<std::size_t>(degree));
    std::sort(targets.begin(), targets.end());
    for (int t : targets) {
      edges.push_back({v, t});
      std::vector<Rational> r;
      for (int p = 0; p < k; ++p) r.emplace_back(pick(-spec.max_reward, spec.max_reward));
      rewards.push_back(std::move(r));
    }
  }
  return Game(std::move(players), std::move(vertices), std::move(owner), 0, std::move(edges), std::move(rewards));
}

/// Random 3-CNF formula with up to `max_vars` variables and `max_clauses`
/// clauses.
inline CnfFormula random_formula(std::mt19937_64& rng, int max_vars, int max_clauses) {
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  CnfFormula f;
  f.num_vars = pick(1, max_vars);
  const int m = pick(1, max_clauses);
  for (int j = 0; j < m; ++j) {
    std::array<int, 3> c{};
    for (int& lit : c) lit = pick(1, f.num_vars) * (pick(0, 1) ? 1 : -1);
    f.clauses.push_back(c);
  }
  return f;
}

/// Brute-force satisfiability over all 2^n assignments.
inline bool satisfiable(const CnfFormula& f) {
  for (std::uint32_t a = 0; a < (1U << f.num_vars); ++a) {
    bool all = true;
    for (const auto& c : f.clauses) {
      bool any = false;
      for (int lit : c) {
        const bool value = (a >> (std::abs(lit) - 1)) & 1U;
        if (value == (lit > 0)) any = true;
      }
      if (!any) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

}  // namespace polieq::testing
