#include "polieq/report.hpp"

#include <openssl/evp.h>

#include <cstdio>
#include <stdexcept>

namespace polieq {

using nlohmann::json;
using nlohmann::ordered_json;

std::string game_digest(const Game& g) {
  const std::string doc = serialize_game(g);
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(doc.data(), doc.size(), md, &len, EVP_sha256(), nullptr);
  std::string hex = "sha256:";
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    hex += buf;
  }
  return hex;
}

namespace {

ordered_json vertex_names(const Game& g, const std::vector<VertexId>& vs) {
  ordered_json out = ordered_json::array();
  for (VertexId v : vs) out.push_back(g.vertex_name(v));
  return out;
}

}  // namespace

ordered_json make_report(const Game& g, const Mode& mode, const std::optional<EquilibriumWitness>& w,
                         const ReportOptions& options) {
  ordered_json r;
  r["command"] = options.command;
  r["game_digest"] = game_digest(g);
  r["mode"] = to_string(mode.kind);
  r["variant"] = to_string(mode.variant);
  r["dictator"] = g.player_name(mode.beneficiary);
  if (options.threshold) {
    r["threshold"] = to_string(*options.threshold);
    r["decision"] = w && w->optimum >= *options.threshold;
  }
  if (!options.objectives.empty()) {
    ordered_json objs = ordered_json::array();
    for (PlayerId p : options.objectives) objs.push_back(g.player_name(p));
    r["objectives"] = std::move(objs);
  }
  r["found"] = w.has_value();
  if (w) {
    r["optimal_reward"] = to_string(w->optimum);
    ordered_json rewards = ordered_json::object();
    for (PlayerId p = 0; p < static_cast<PlayerId>(g.num_players()); ++p) {
      rewards[g.player_name(p)] = to_string(w->rewards[static_cast<std::size_t>(p)]);
    }
    r["rewards"] = std::move(rewards);
    r["Q"] = vertex_names(g, w->profile.visited.members());
    r["S"] = vertex_names(g, w->profile.recurrent.members());
    r["entry_path"] = vertex_names(g, w->entry);
    ordered_json vr = ordered_json::object();
    for (VertexId v = 0; v < static_cast<VertexId>(g.num_vertices()); ++v) {
      const Rational& x = w->profile.vertex_ratio[static_cast<std::size_t>(v)];
      if (x != 0) vr[g.vertex_name(v)] = to_string(x);
    }
    r["vertex_ratios"] = std::move(vr);
    ordered_json er = ordered_json::array();
    for (EdgeId e = 0; e < static_cast<EdgeId>(g.num_edges()); ++e) {
      const Rational& x = w->profile.edge_ratio[static_cast<std::size_t>(e)];
      if (x == 0) continue;
      er.push_back({{"from", g.vertex_name(g.edge(e).from)}, {"to", g.vertex_name(g.edge(e).to)}, {"ratio", to_string(x)}});
    }
    r["edge_ratios"] = std::move(er);
    ordered_json th = ordered_json::object();
    for (PlayerId p = 0; p < static_cast<PlayerId>(g.num_players()); ++p) {
      const auto& t = w->thresholds[static_cast<std::size_t>(p)];
      if (t && mode.constrains(p)) th[g.player_name(p)] = to_string(*t);
    }
    r["thresholds"] = std::move(th);
    r["regions_explored"] = w->regions_explored;
  }
  r["duration_ms"] = options.duration_ms;
  return r;
}

namespace {

const json& field(const json& doc, const char* key) {
  if (!doc.contains(key)) throw ParseError(std::string("report lacks \"") + key + "\"");
  return doc.at(key);
}

Rational rational_field(const json& value) {
  if (!value.is_string()) throw ParseError("expected a rational string");
  try {
    return parse_rational(value.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

VertexId vertex_field(const Game& g, const json& value) {
  if (!value.is_string()) throw ParseError("expected a vertex name");
  auto v = g.find_vertex(value.get<std::string>());
  if (!v) throw ParseError("unknown vertex '" + value.get<std::string>() + "' in report");
  return *v;
}

PlayerId player_field(const Game& g, const std::string& name) {
  auto p = g.find_player(name);
  if (!p) throw ParseError("unknown player '" + name + "' in report");
  return *p;
}

}  // namespace

EquilibriumWitness witness_from_report(const Game& g, const json& report) {
  if (!field(report, "found").get<bool>()) throw ParseError("report holds no equilibrium");
  EquilibriumWitness w;
  try {
    w.mode.kind = parse_kind(field(report, "mode").get<std::string>());
    w.mode.variant = parse_variant(field(report, "variant").get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  w.mode.beneficiary = player_field(g, field(report, "dictator").get<std::string>());
  const auto n = g.num_vertices();
  w.profile.visited = VertexSet(n);
  w.profile.recurrent = VertexSet(n);
  for (const auto& v : field(report, "Q")) w.profile.visited.insert(vertex_field(g, v));
  for (const auto& v : field(report, "S")) w.profile.recurrent.insert(vertex_field(g, v));
  for (const auto& v : field(report, "entry_path")) w.entry.push_back(vertex_field(g, v));
  w.profile.vertex_ratio.assign(n, 0);
  for (const auto& [name, value] : field(report, "vertex_ratios").items()) {
    w.profile.vertex_ratio[static_cast<std::size_t>(vertex_field(g, name))] = rational_field(value);
  }
  w.profile.edge_ratio.assign(g.num_edges(), 0);
  for (const auto& je : field(report, "edge_ratios")) {
    auto e = g.find_edge(vertex_field(g, field(je, "from")), vertex_field(g, field(je, "to")));
    if (!e) throw ParseError("report names an edge the game does not have");
    w.profile.edge_ratio[static_cast<std::size_t>(*e)] = rational_field(field(je, "ratio"));
  }
  w.rewards.assign(g.num_players(), 0);
  for (const auto& [name, value] : field(report, "rewards").items()) {
    w.rewards[static_cast<std::size_t>(player_field(g, name))] = rational_field(value);
  }
  w.profile.rewards = weighted_rewards(g, w.profile.edge_ratio);
  w.thresholds.assign(g.num_players(), std::nullopt);
  if (report.contains("thresholds")) {
    for (const auto& [name, value] : report.at("thresholds").items()) {
      w.thresholds[static_cast<std::size_t>(player_field(g, name))] = rational_field(value);
    }
  }
  w.optimum = rational_field(field(report, "optimal_reward"));
  w.profile.objective = w.optimum;
  w.regions_explored = report.value("regions_explored", std::size_t{0});
  return w;
}

std::vector<std::string> verify_report(const Game& g, const json& report) {
  std::vector<std::string> issues;
  if (field(report, "game_digest").get<std::string>() != game_digest(g)) {
    issues.emplace_back("game digest does not match");
  }
  const EquilibriumWitness w = witness_from_report(g, report);
  auto more = check_witness(g, w, punishment_table(g));
  issues.insert(issues.end(), more.begin(), more.end());
  PlayerId maximised = w.mode.beneficiary;
  if (report.contains("objectives") && !report.at("objectives").empty()) {
    maximised = player_field(g, report.at("objectives").back().get<std::string>());
  }
  if (w.optimum != w.rewards[static_cast<std::size_t>(maximised)]) {
    issues.emplace_back("optimal reward differs from the maximised player's reward");
  }
  if (w.rewards != w.profile.rewards) issues.emplace_back("reported rewards differ from the edge ratios");
  for (PlayerId p = 0; p < static_cast<PlayerId>(g.num_players()); ++p) {
    const auto& t = w.thresholds[static_cast<std::size_t>(p)];
    if (t && w.profile.rewards[static_cast<std::size_t>(p)] < *t) {
      issues.push_back("reward of '" + g.player_name(p) + "' is below its recorded threshold");
    }
  }
  return issues;
}

}  // namespace polieq
