#pragma once

#include "polieq/rational.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace polieq {

using PlayerId = int;
using VertexId = int;
using EdgeId = int;

inline constexpr EdgeId kNoEdge = -1;

struct Edge {
  VertexId from;
  VertexId to;
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Raised by parse_game / parse_cnf / document loaders. `position` is a byte
/// offset into the input when known.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::optional<std::size_t> position = std::nullopt);
  std::optional<std::size_t> position() const { return position_; }

 private:
  std::optional<std::size_t> position_;
};

/// A document parsed fine but describes an ill-formed game.
class InvalidGame : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Subset of a game's vertices, stored as a membership mask.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::size_t universe) : mask_(universe, false) {}
  VertexSet(std::size_t universe, const std::vector<VertexId>& members);

  static VertexSet all(std::size_t universe);

  std::size_t universe() const { return mask_.size(); }
  bool contains(VertexId v) const { return mask_[static_cast<std::size_t>(v)]; }
  void insert(VertexId v) { mask_[static_cast<std::size_t>(v)] = true; }
  void erase(VertexId v) { mask_[static_cast<std::size_t>(v)] = false; }
  std::size_t size() const;
  bool empty() const { return size() == 0; }
  /// Members in increasing id order.
  std::vector<VertexId> members() const;
  bool is_subset_of(const VertexSet& other) const;

  friend bool operator==(const VertexSet&, const VertexSet&) = default;
  friend auto operator<=>(const VertexSet& a, const VertexSet& b) { return a.mask_ <=> b.mask_; }

 private:
  std::vector<bool> mask_;
};

/// Turn-based multi-player mean-payoff game. Players, vertices and edges keep
/// document order; ids are indices into those sequences.
class Game {
 public:
  Game() = default;
  /// `rewards[e][p]` is player p's reward on edge e. Does not validate; see
  /// validate().
  Game(std::vector<std::string> players, std::vector<std::string> vertices,
       std::vector<PlayerId> owner, VertexId initial, std::vector<Edge> edges,
       std::vector<std::vector<Rational>> rewards);

  std::size_t num_players() const { return players_.size(); }
  std::size_t num_vertices() const { return vertices_.size(); }
  std::size_t num_edges() const { return edges_.size(); }

  const std::vector<std::string>& players() const { return players_; }
  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }

  const std::string& player_name(PlayerId p) const { return players_[static_cast<std::size_t>(p)]; }
  const std::string& vertex_name(VertexId v) const { return vertices_[static_cast<std::size_t>(v)]; }
  PlayerId owner(VertexId v) const { return owner_[static_cast<std::size_t>(v)]; }
  VertexId initial() const { return initial_; }
  const Edge& edge(EdgeId e) const { return edges_[static_cast<std::size_t>(e)]; }
  const Rational& reward(EdgeId e, PlayerId p) const {
    return rewards_[static_cast<std::size_t>(e)][static_cast<std::size_t>(p)];
  }
  /// Out-edges of v in document order.
  const std::vector<EdgeId>& out_edges(VertexId v) const { return out_[static_cast<std::size_t>(v)]; }
  const std::vector<EdgeId>& in_edges(VertexId v) const { return in_[static_cast<std::size_t>(v)]; }

  std::optional<PlayerId> find_player(std::string_view name) const;
  std::optional<VertexId> find_vertex(std::string_view name) const;
  std::optional<EdgeId> find_edge(VertexId from, VertexId to) const;

  PlayerId player_id(std::string_view name) const;  // throws std::out_of_range
  VertexId vertex_id(std::string_view name) const;  // throws std::out_of_range

  /// Vertices owned by p, increasing.
  std::vector<VertexId> owned_by(PlayerId p) const;

  friend bool operator==(const Game&, const Game&);

 private:
  std::vector<std::string> players_;
  std::vector<std::string> vertices_;
  std::vector<PlayerId> owner_;
  VertexId initial_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<Rational>> rewards_;

  std::vector<std::vector<EdgeId>> out_;
  std::vector<std::vector<EdgeId>> in_;
  std::unordered_map<std::string, PlayerId> player_index_;
  std::unordered_map<std::string, VertexId> vertex_index_;
};

/// Ultimately periodic play prefix . cycle^omega.
struct LassoPlay {
  std::vector<VertexId> prefix;
  std::vector<VertexId> cycle;
};

/// One description per violated invariant; empty iff the game is well formed.
std::vector<std::string> validate(const Game& g);

/// Reads the JSON game document. Throws ParseError on syntax or schema
/// problems and InvalidGame when the described game breaks an invariant.
Game parse_game(std::string_view text);

/// Canonical JSON document; parse_game(serialize_game(g)) == g.
std::string serialize_game(const Game& g);

/// Throws InvalidGame when a consecutive pair of the play is not an edge.
void check_play(const Game& g, const LassoPlay& play);

/// Mean of player p's rewards over the cycle edges (including the wrap-around
/// edge back to the cycle's first vertex).
Rational lasso_payoff(const Game& g, const LassoPlay& play, PlayerId p);

/// Vertices reachable from the initial vertex using only edges inside q.
VertexSet reachable(const Game& g, const VertexSet& q);

/// Maximal strongly connected components of the subgraph induced by q that
/// carry at least one edge, ordered by their least vertex id.
std::vector<VertexSet> sccs(const Game& g, const VertexSet& q);

/// True when the subgraph induced by s is strongly connected and has an edge.
bool is_strongly_connected(const Game& g, const VertexSet& s);

/// Shortest path from `from` to any vertex of `target`, using only vertices
/// of `within`. Out-edges are explored in document order, so ties resolve
/// towards earlier edges. Returns the vertex sequence including both ends, or
/// nothing if no such path exists.
std::optional<std::vector<VertexId>> shortest_path(const Game& g, VertexId from,
                                                   const VertexSet& target,
                                                   const VertexSet& within);

}  // namespace polieq
