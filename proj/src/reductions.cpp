#include "polieq/reductions.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace polieq {

CnfFormula parse_cnf(std::string_view text, bool pad) {
  std::istringstream in{std::string(text)};
  std::string line;
  CnfFormula f;
  int declared_clauses = -1;
  std::vector<int> clause;
  std::size_t line_no = 0;

  auto fail = [&](const std::string& msg) -> ParseError {
    return ParseError("line " + std::to_string(line_no) + ": " + msg);
  };
  auto finish_clause = [&]() {
    if (clause.empty()) throw fail("empty clause");
    if (clause.size() > 3 || (clause.size() < 3 && !pad)) {
      throw fail("clause has " + std::to_string(clause.size()) + " literals, expected 3");
    }
    std::vector<int> lits = clause;
    while (lits.size() < 3) lits.insert(lits.begin(), lits.front());
    f.clauses.push_back({lits[0], lits[1], lits[2]});
    clause.clear();
  };

  bool header = false;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    if (tok == "c") continue;
    if (tok == "%") break;
    if (tok == "p") {
      std::string fmt;
      if (header || !(ls >> fmt >> f.num_vars >> declared_clauses) || fmt != "cnf" || f.num_vars < 1 ||
          declared_clauses < 1) {
        throw fail("malformed problem line");
      }
      header = true;
      continue;
    }
    if (!header) throw fail("clause before the 'p cnf' header");
    do {
      char* end = nullptr;
      const long lit = std::strtol(tok.c_str(), &end, 10);
      if (end == tok.c_str() || *end != '\0') throw fail("bad literal '" + tok + "'");
      if (lit == 0) {
        finish_clause();
      } else {
        if (std::labs(lit) > f.num_vars) throw fail("literal " + tok + " exceeds variable count");
        clause.push_back(static_cast<int>(lit));
      }
    } while (ls >> tok);
  }
  if (!header) throw ParseError("missing 'p cnf' header");
  if (!clause.empty()) throw ParseError("last clause is not terminated by 0");
  if (static_cast<int>(f.clauses.size()) != declared_clauses) {
    throw ParseError("header declares " + std::to_string(declared_clauses) + " clauses, found " +
                     std::to_string(f.clauses.size()));
  }
  return f;
}

namespace {

std::string literal_name(int lit) {
  return (lit > 0 ? "z" : "~z") + std::to_string(std::abs(lit));
}

}  // namespace

Game reduce_3sat(const CnfFormula& f) {
  const int n = f.num_vars;
  const int m = static_cast<int>(f.clauses.size());

  std::vector<std::string> players{std::string(kReductionDictator)};
  for (int i = 1; i <= n; ++i) {
    players.push_back(literal_name(i));
    players.push_back(literal_name(-i));
  }
  const PlayerId dictator = 0;
  auto player_of = [](int lit) { return static_cast<PlayerId>(2 * std::abs(lit) - (lit > 0 ? 1 : 0)); };

  std::vector<std::string> vertices;
  std::vector<PlayerId> owner;
  auto add_vertex = [&](std::string name, PlayerId o) {
    vertices.push_back(std::move(name));
    owner.push_back(o);
    return static_cast<VertexId>(vertices.size() - 1);
  };

  // Dictator chain 0..n+m; the last assignment vertex doubles as the first
  // validation vertex.
  std::vector<VertexId> chain;
  for (int i = 0; i <= n + m; ++i) chain.push_back(add_vertex("d" + std::to_string(i), dictator));
  std::vector<std::array<VertexId, 2>> assign(static_cast<std::size_t>(n) + 1);
  for (int i = 1; i <= n; ++i) {
    assign[static_cast<std::size_t>(i)] = {add_vertex("asg_" + literal_name(i), player_of(i)),
                                           add_vertex("asg_" + literal_name(-i), player_of(-i))};
  }
  std::vector<std::array<VertexId, 3>> validate_v(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) {
    for (int k = 0; k < 3; ++k) {
      const int lit = f.clauses[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
      validate_v[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] = add_vertex(
          "val" + std::to_string(j + 1) + "_" + std::to_string(k + 1) + "_" + literal_name(lit), player_of(lit));
    }
  }
  const VertexId abs_v = add_vertex("abs", dictator);
  std::vector<std::array<VertexId, 2>> ring(static_cast<std::size_t>(n) + 1);
  for (int i = 1; i <= n; ++i) {
    ring[static_cast<std::size_t>(i)] = {add_vertex("ring_" + literal_name(i), player_of(i)),
                                         add_vertex("ring_" + literal_name(-i), player_of(-i))};
  }

  const auto k = players.size();
  std::vector<Edge> edges;
  std::vector<std::vector<Rational>> rewards;
  auto add_edge = [&](VertexId from, VertexId to, std::vector<Rational> r) {
    edges.push_back({from, to});
    r.resize(k);
    rewards.push_back(std::move(r));
  };
  const std::vector<Rational> none(k, 0);

  for (int i = 1; i <= n; ++i) {
    const auto& pair = assign[static_cast<std::size_t>(i)];
    add_edge(chain[static_cast<std::size_t>(i - 1)], pair[0], none);
    add_edge(chain[static_cast<std::size_t>(i - 1)], pair[1], none);
    for (VertexId lit_v : pair) {
      add_edge(lit_v, chain[static_cast<std::size_t>(i)], none);
      add_edge(lit_v, abs_v, none);
    }
  }
  for (int j = 0; j < m; ++j) {
    for (VertexId lit_v : validate_v[static_cast<std::size_t>(j)]) {
      add_edge(chain[static_cast<std::size_t>(n + j)], lit_v, none);
    }
    for (VertexId lit_v : validate_v[static_cast<std::size_t>(j)]) {
      add_edge(lit_v, chain[static_cast<std::size_t>(n + j + 1)], none);
      add_edge(lit_v, abs_v, none);
    }
  }
  add_edge(chain[static_cast<std::size_t>(n + m)], ring[1][0], none);
  add_edge(chain[static_cast<std::size_t>(n + m)], ring[1][1], none);
  for (int i = 1; i <= n; ++i) {
    const int next = i == n ? 1 : i + 1;
    for (int side = 0; side < 2; ++side) {
      const int lit = side == 0 ? i : -i;
      std::vector<Rational> r(k, 1);
      r[static_cast<std::size_t>(player_of(-lit))] = 0;  // counter-literal is disadvantaged
      for (VertexId to : ring[static_cast<std::size_t>(next)]) {
        add_edge(ring[static_cast<std::size_t>(i)][static_cast<std::size_t>(side)], to, r);
      }
    }
  }
  std::vector<Rational> absorbing(k, 1);
  absorbing[static_cast<std::size_t>(dictator)] = 0;
  add_edge(abs_v, abs_v, absorbing);

  return Game(std::move(players), std::move(vertices), std::move(owner), chain[0], std::move(edges),
              std::move(rewards));
}

Game make_zero_sum(const Game& g) {
  const auto k = g.num_players();
  std::vector<std::vector<Rational>> rewards(g.num_edges());
  std::vector<long> sums(g.num_edges());
  long widest = 0;
  for (EdgeId e = 0; e < static_cast<EdgeId>(g.num_edges()); ++e) {
    long s = 0;
    for (PlayerId p = 0; p < static_cast<PlayerId>(k); ++p) {
      const Rational& r = g.reward(e, p);
      if (r != 0 && r != 1) {
        throw std::invalid_argument("zero-sum transform needs rewards in {0, 1}; edge #" + std::to_string(e) +
                                    " has " + to_string(r));
      }
      rewards[static_cast<std::size_t>(e)].push_back(r == 1 ? 1 : -1);
      s += r == 1 ? 1 : -1;
    }
    sums[static_cast<std::size_t>(e)] = s;
    widest = std::max(widest, std::labs(s));
  }
  // Every sum has the parity of the player count, so `widest` already matches.
  const long extra = widest;
  std::vector<std::string> players = g.players();
  for (long i = 1; i <= extra; ++i) {
    std::string name = "zs" + std::to_string(i);
    while (g.find_player(name)) name += "'";
    players.push_back(name);
  }
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    const long plus = (extra - sums[e]) / 2;
    for (long i = 0; i < extra; ++i) rewards[e].push_back(i < plus ? 1 : -1);
  }
  std::vector<PlayerId> owner;
  for (VertexId v = 0; v < static_cast<VertexId>(g.num_vertices()); ++v) owner.push_back(g.owner(v));
  return Game(std::move(players), g.vertices(), std::move(owner), g.initial(), g.edges(), std::move(rewards));
}

Game add_social_player(const Game& g, const std::map<std::string, Rational>& weights) {
  if (g.find_player(kSocietyPlayer)) {
    throw std::invalid_argument("game already has a player named '" + std::string(kSocietyPlayer) + "'");
  }
  std::vector<Rational> w(g.num_players(), 1);
  for (const auto& [name, value] : weights) w[static_cast<std::size_t>(g.player_id(name))] = value;
  std::vector<std::string> players = g.players();
  players.emplace_back(kSocietyPlayer);
  std::vector<std::vector<Rational>> rewards(g.num_edges());
  for (EdgeId e = 0; e < static_cast<EdgeId>(g.num_edges()); ++e) {
    Rational social = 0;
    for (PlayerId p = 0; p < static_cast<PlayerId>(g.num_players()); ++p) {
      rewards[static_cast<std::size_t>(e)].push_back(g.reward(e, p));
      social += w[static_cast<std::size_t>(p)] * g.reward(e, p);
    }
    rewards[static_cast<std::size_t>(e)].push_back(social);
  }
  std::vector<PlayerId> owner;
  for (VertexId v = 0; v < static_cast<VertexId>(g.num_vertices()); ++v) owner.push_back(g.owner(v));
  return Game(std::move(players), g.vertices(), std::move(owner), g.initial(), g.edges(), std::move(rewards));
}

std::optional<EquilibriumWitness> lexicographic_optimize(const Game& g, const Mode& mode,
                                                         const std::vector<PlayerId>& objectives,
                                                         const PunishmentTable& punish) {
  if (objectives.empty()) throw std::invalid_argument("no objectives given");
  ObjectiveSpec spec;
  std::optional<EquilibriumWitness> result;
  for (PlayerId obj : objectives) {
    spec.maximise = obj;
    result = optimize(g, mode, punish, spec);
    if (!result) return std::nullopt;
    spec.floors.emplace_back(obj, result->optimum);
  }
  return result;
}

std::optional<EquilibriumWitness> lexicographic_optimize(const Game& g, const Mode& mode,
                                                         const std::vector<PlayerId>& objectives) {
  return lexicographic_optimize(g, mode, objectives, punishment_table(g));
}

}  // namespace polieq
