#include "polieq/game.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <deque>
#include <functional>
#include <set>
#include <sstream>
#include <utility>

namespace polieq {

using nlohmann::json;
using nlohmann::ordered_json;

ParseError::ParseError(const std::string& what, std::optional<std::size_t> position)
    : std::runtime_error(position ? what + " (at byte " + std::to_string(*position) + ")" : what),
      position_(position) {}

VertexSet::VertexSet(std::size_t universe, const std::vector<VertexId>& members)
    : mask_(universe, false) {
  for (VertexId v : members) insert(v);
}

VertexSet VertexSet::all(std::size_t universe) {
  VertexSet s(universe);
  s.mask_.assign(universe, true);
  return s;
}

std::size_t VertexSet::size() const {
  return static_cast<std::size_t>(std::count(mask_.begin(), mask_.end(), true));
}

std::vector<VertexId> VertexSet::members() const {
  std::vector<VertexId> out;
  for (std::size_t i = 0; i < mask_.size(); ++i) {
    if (mask_[i]) out.push_back(static_cast<VertexId>(i));
  }
  return out;
}

bool VertexSet::is_subset_of(const VertexSet& other) const {
  for (std::size_t i = 0; i < mask_.size(); ++i) {
    if (mask_[i] && !other.mask_[i]) return false;
  }
  return true;
}

Game::Game(std::vector<std::string> players, std::vector<std::string> vertices,
           std::vector<PlayerId> owner, VertexId initial, std::vector<Edge> edges,
           std::vector<std::vector<Rational>> rewards)
    : players_(std::move(players)),
      vertices_(std::move(vertices)),
      owner_(std::move(owner)),
      initial_(initial),
      edges_(std::move(edges)),
      rewards_(std::move(rewards)) {
  const auto n = vertices_.size();
  rewards_.resize(edges_.size());
  for (auto& row : rewards_) row.resize(players_.size());
  owner_.resize(n, -1);
  out_.assign(n, {});
  in_.assign(n, {});
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const auto [from, to] = edges_[e];
    if (from >= 0 && static_cast<std::size_t>(from) < n) out_[static_cast<std::size_t>(from)].push_back(static_cast<EdgeId>(e));
    if (to >= 0 && static_cast<std::size_t>(to) < n) in_[static_cast<std::size_t>(to)].push_back(static_cast<EdgeId>(e));
  }
  for (std::size_t p = 0; p < players_.size(); ++p) player_index_.emplace(players_[p], static_cast<PlayerId>(p));
  for (std::size_t v = 0; v < n; ++v) vertex_index_.emplace(vertices_[v], static_cast<VertexId>(v));
}

std::optional<PlayerId> Game::find_player(std::string_view name) const {
  auto it = player_index_.find(std::string(name));
  if (it == player_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<VertexId> Game::find_vertex(std::string_view name) const {
  auto it = vertex_index_.find(std::string(name));
  if (it == vertex_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<EdgeId> Game::find_edge(VertexId from, VertexId to) const {
  for (EdgeId e : out_edges(from)) {
    if (edge(e).to == to) return e;
  }
  return std::nullopt;
}

PlayerId Game::player_id(std::string_view name) const {
  if (auto p = find_player(name)) return *p;
  throw std::out_of_range("unknown player '" + std::string(name) + "'");
}

VertexId Game::vertex_id(std::string_view name) const {
  if (auto v = find_vertex(name)) return *v;
  throw std::out_of_range("unknown vertex '" + std::string(name) + "'");
}

std::vector<VertexId> Game::owned_by(PlayerId p) const {
  std::vector<VertexId> out;
  for (std::size_t v = 0; v < owner_.size(); ++v) {
    if (owner_[v] == p) out.push_back(static_cast<VertexId>(v));
  }
  return out;
}

bool operator==(const Game& a, const Game& b) {
  return a.players_ == b.players_ && a.vertices_ == b.vertices_ && a.owner_ == b.owner_ &&
         a.initial_ == b.initial_ && a.edges_ == b.edges_ && a.rewards_ == b.rewards_;
}

std::vector<std::string> validate(const Game& g) {
  std::vector<std::string> issues;
  const auto n = static_cast<VertexId>(g.num_vertices());
  const auto k = static_cast<PlayerId>(g.num_players());
  auto valid_vertex = [n](VertexId v) { return v >= 0 && v < n; };

  if (g.num_players() == 0) issues.emplace_back("game has no players");
  if (n == 0) issues.emplace_back("game has no vertices");

  std::set<std::string> seen;
  for (const auto& p : g.players()) {
    if (!seen.insert(p).second) issues.push_back("duplicate player '" + p + "'");
  }
  seen.clear();
  for (const auto& v : g.vertices()) {
    if (!seen.insert(v).second) issues.push_back("duplicate vertex '" + v + "'");
  }
  if (n > 0 && !valid_vertex(g.initial())) {
    issues.push_back("initial vertex #" + std::to_string(g.initial()) + " does not exist");
  }
  for (VertexId v = 0; v < n; ++v) {
    const PlayerId o = g.owner(v);
    if (o < 0 || o >= k) issues.push_back("vertex '" + g.vertex_name(v) + "' has no valid owner");
  }
  std::set<std::pair<VertexId, VertexId>> pairs;
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    const auto [from, to] = g.edges()[e];
    if (!valid_vertex(from) || !valid_vertex(to)) {
      issues.push_back("edge #" + std::to_string(e) + " references an unknown vertex");
      continue;
    }
    if (!pairs.emplace(from, to).second) {
      issues.push_back("duplicate edge '" + g.vertex_name(from) + "' -> '" + g.vertex_name(to) + "'");
    }
  }
  for (VertexId v = 0; v < n; ++v) {
    if (g.out_edges(v).empty()) {
      issues.push_back("vertex '" + g.vertex_name(v) + "' has no outgoing edge");
    }
  }
  return issues;
}

namespace {

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) {
    if (!out.empty()) out += "; ";
    out += s;
  }
  return out;
}

const json& require(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw ParseError(std::string("missing field \"") + key + "\"");
  }
  return obj.at(key);
}

const std::string& require_string(const json& value, const std::string& what) {
  if (!value.is_string()) throw ParseError(what + " must be a string");
  return value.get_ref<const std::string&>();
}

}  // namespace

Game parse_game(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what(), e.byte);
  }
  if (!doc.is_object()) throw ParseError("game document must be a JSON object");

  std::vector<std::string> players;
  const json& jplayers = require(doc, "players");
  if (!jplayers.is_array()) throw ParseError("\"players\" must be an array");
  for (const auto& p : jplayers) players.push_back(require_string(p, "player name"));

  std::unordered_map<std::string, PlayerId> player_index;
  for (std::size_t i = 0; i < players.size(); ++i) player_index.emplace(players[i], static_cast<PlayerId>(i));
  auto lookup_player = [&](const std::string& name, const std::string& context) {
    auto it = player_index.find(name);
    if (it == player_index.end()) throw InvalidGame("unknown player '" + name + "' in " + context);
    return it->second;
  };

  std::vector<std::string> vertices;
  std::vector<PlayerId> owner;
  const json& jvertices = require(doc, "vertices");
  if (!jvertices.is_array()) throw ParseError("\"vertices\" must be an array");
  for (const auto& jv : jvertices) {
    const auto& id = require_string(require(jv, "id"), "vertex id");
    vertices.push_back(id);
    owner.push_back(lookup_player(require_string(require(jv, "owner"), "vertex owner"),
                                  "owner of vertex '" + id + "'"));
  }
  std::unordered_map<std::string, VertexId> vertex_index;
  for (std::size_t i = 0; i < vertices.size(); ++i) vertex_index.emplace(vertices[i], static_cast<VertexId>(i));
  auto lookup_vertex = [&](const std::string& name, const std::string& context) {
    auto it = vertex_index.find(name);
    if (it == vertex_index.end()) throw InvalidGame("unknown vertex '" + name + "' in " + context);
    return it->second;
  };

  const VertexId initial = lookup_vertex(require_string(require(doc, "initial"), "initial"), "\"initial\"");

  std::vector<Edge> edges;
  std::vector<std::vector<Rational>> rewards;
  const json& jedges = require(doc, "edges");
  if (!jedges.is_array()) throw ParseError("\"edges\" must be an array");
  for (const auto& je : jedges) {
    const auto& from = require_string(require(je, "from"), "edge source");
    const auto& to = require_string(require(je, "to"), "edge target");
    const std::string label = "edge '" + from + "' -> '" + to + "'";
    edges.push_back({lookup_vertex(from, label), lookup_vertex(to, label)});
    std::vector<Rational> row(players.size());
    if (je.contains("rewards")) {
      const json& jr = je.at("rewards");
      if (!jr.is_object()) throw ParseError("rewards of " + label + " must be an object");
      for (const auto& [name, value] : jr.items()) {
        const PlayerId p = lookup_player(name, "rewards of " + label);
        try {
          row[static_cast<std::size_t>(p)] = parse_rational(require_string(value, "reward"));
        } catch (const std::invalid_argument& e) {
          throw ParseError(std::string(e.what()) + " in rewards of " + label);
        }
      }
    }
    rewards.push_back(std::move(row));
  }

  Game g(std::move(players), std::move(vertices), std::move(owner), initial, std::move(edges),
         std::move(rewards));
  if (auto issues = validate(g); !issues.empty()) throw InvalidGame(join(issues));
  return g;
}

std::string serialize_game(const Game& g) {
  ordered_json doc;
  doc["players"] = g.players();
  doc["initial"] = g.vertex_name(g.initial());
  ordered_json vertices = ordered_json::array();
  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    vertices.push_back({{"id", g.vertices()[v]}, {"owner", g.player_name(g.owner(static_cast<VertexId>(v)))}});
  }
  doc["vertices"] = std::move(vertices);
  ordered_json edges = ordered_json::array();
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    const auto& ed = g.edges()[e];
    ordered_json rewards = ordered_json::object();
    for (std::size_t p = 0; p < g.num_players(); ++p) {
      const Rational& r = g.reward(static_cast<EdgeId>(e), static_cast<PlayerId>(p));
      if (r != 0) rewards[g.players()[p]] = to_string(r);
    }
    edges.push_back({{"from", g.vertex_name(ed.from)}, {"to", g.vertex_name(ed.to)}, {"rewards", std::move(rewards)}});
  }
  doc["edges"] = std::move(edges);
  return doc.dump(2) + "\n";
}

void check_play(const Game& g, const LassoPlay& play) {
  if (play.cycle.empty()) throw InvalidGame("lasso play has an empty cycle");
  std::vector<VertexId> seq = play.prefix;
  seq.insert(seq.end(), play.cycle.begin(), play.cycle.end());
  seq.push_back(play.cycle.front());
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
    if (seq[i] < 0 || seq[i] >= static_cast<VertexId>(g.num_vertices()) || seq[i + 1] < 0 ||
        seq[i + 1] >= static_cast<VertexId>(g.num_vertices()) || !g.find_edge(seq[i], seq[i + 1])) {
      throw InvalidGame("play step " + std::to_string(i) + " is not an edge of the game");
    }
  }
}

Rational lasso_payoff(const Game& g, const LassoPlay& play, PlayerId p) {
  check_play(g, play);
  Rational sum = 0;
  const auto len = play.cycle.size();
  for (std::size_t i = 0; i < len; ++i) {
    sum += g.reward(*g.find_edge(play.cycle[i], play.cycle[(i + 1) % len]), p);
  }
  return sum / static_cast<long>(len);
}

VertexSet reachable(const Game& g, const VertexSet& q) {
  VertexSet seen(g.num_vertices());
  if (!q.contains(g.initial())) return seen;
  std::deque<VertexId> queue{g.initial()};
  seen.insert(g.initial());
  while (!queue.empty()) {
    const VertexId v = queue.front();
    queue.pop_front();
    for (EdgeId e : g.out_edges(v)) {
      const VertexId t = g.edge(e).to;
      if (q.contains(t) && !seen.contains(t)) {
        seen.insert(t);
        queue.push_back(t);
      }
    }
  }
  return seen;
}

std::vector<VertexSet> sccs(const Game& g, const VertexSet& q) {
  // Tarjan, iterative.
  const auto n = g.num_vertices();
  std::vector<int> index(n, -1), low(n, 0);
  std::vector<char> on_stack(n, 0);
  std::vector<VertexId> stack;
  std::vector<VertexSet> out;
  int counter = 0;

  struct Frame {
    VertexId v;
    std::size_t next;
  };
  for (VertexId root : q.members()) {
    if (index[static_cast<std::size_t>(root)] != -1) continue;
    std::vector<Frame> call{{root, 0}};
    index[static_cast<std::size_t>(root)] = low[static_cast<std::size_t>(root)] = counter++;
    stack.push_back(root);
    on_stack[static_cast<std::size_t>(root)] = 1;
    while (!call.empty()) {
      Frame& f = call.back();
      const auto vi = static_cast<std::size_t>(f.v);
      const auto& outs = g.out_edges(f.v);
      if (f.next < outs.size()) {
        const VertexId t = g.edge(outs[f.next++]).to;
        if (!q.contains(t)) continue;
        const auto ti = static_cast<std::size_t>(t);
        if (index[ti] == -1) {
          index[ti] = low[ti] = counter++;
          stack.push_back(t);
          on_stack[ti] = 1;
          call.push_back({t, 0});
        } else if (on_stack[ti]) {
          low[vi] = std::min(low[vi], index[ti]);
        }
        continue;
      }
      if (low[vi] == index[vi]) {
        VertexSet comp(n);
        VertexId w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[static_cast<std::size_t>(w)] = 0;
          comp.insert(w);
        } while (w != f.v);
        bool has_edge = comp.size() > 1 || g.find_edge(f.v, f.v).has_value();
        if (has_edge) out.push_back(std::move(comp));
      }
      const VertexId done = f.v;
      call.pop_back();
      if (!call.empty()) {
        const auto pi = static_cast<std::size_t>(call.back().v);
        low[pi] = std::min(low[pi], low[static_cast<std::size_t>(done)]);
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const VertexSet& a, const VertexSet& b) {
    return a.members().front() < b.members().front();
  });
  return out;
}

bool is_strongly_connected(const Game& g, const VertexSet& s) {
  auto comps = sccs(g, s);
  return comps.size() == 1 && comps.front() == s;
}

std::optional<std::vector<VertexId>> shortest_path(const Game& g, VertexId from,
                                                   const VertexSet& target,
                                                   const VertexSet& within) {
  if (!within.contains(from)) return std::nullopt;
  std::vector<VertexId> parent(g.num_vertices(), -1);
  std::vector<char> seen(g.num_vertices(), 0);
  std::deque<VertexId> queue{from};
  seen[static_cast<std::size_t>(from)] = 1;
  while (!queue.empty()) {
    const VertexId v = queue.front();
    queue.pop_front();
    if (target.contains(v)) {
      std::vector<VertexId> path;
      for (VertexId w = v; w != -1; w = parent[static_cast<std::size_t>(w)]) path.push_back(w);
      std::reverse(path.begin(), path.end());
      return path;
    }
    for (EdgeId e : g.out_edges(v)) {
      const VertexId t = g.edge(e).to;
      if (within.contains(t) && !seen[static_cast<std::size_t>(t)]) {
        seen[static_cast<std::size_t>(t)] = 1;
        parent[static_cast<std::size_t>(t)] = v;
        queue.push_back(t);
      }
    }
  }
  return std::nullopt;
}

}  // namespace polieq
