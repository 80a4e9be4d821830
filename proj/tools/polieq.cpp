// Command-line front end: solve, values, synthesize, simulate-deviation,
// reduce-3sat, bimatrix, lex-solve, verify.

#include "polieq/bimatrix.hpp"
#include "polieq/reductions.hpp"
#include "polieq/report.hpp"
#include "polieq/schedule.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

namespace {

using namespace polieq;
using nlohmann::ordered_json;

constexpr int kOk = 0;
constexpr int kNotFound = 1;
constexpr int kInputError = 2;

/// Raised for bad user input that is not a document syntax problem.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + out_path + "'");
  out << text;
}

struct Options {
  std::string game_path;
  std::string mode = "political";
  std::string dictator;
  std::string threshold;
  std::string variant = "owner";
  std::string out;
  std::int64_t steps = 100;
  std::int64_t horizon = 100000;
  std::uint64_t seed = 1;
  std::string objectives;
  std::string cnf;
  bool pad = false;
  bool zero_sum = false;
  std::string matrix;
  std::string report;
  std::string deviator;
  std::int64_t at = -1;
  std::string to;
};

Game load_game(const Options& o) { return parse_game(read_file(o.game_path)); }

PlayerId player_arg(const Game& g, const std::string& name, const char* flag) {
  auto p = g.find_player(name);
  if (!p) throw UsageError(std::string(flag) + ": unknown player '" + name + "'");
  return *p;
}

Mode mode_arg(const Game& g, const Options& o) {
  Mode m;
  try {
    m.kind = parse_kind(o.mode);
    m.variant = parse_variant(o.variant);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  m.beneficiary = player_arg(g, o.dictator, "--dictator");
  return m;
}

std::optional<Rational> threshold_arg(const Options& o) {
  if (o.threshold.empty()) return std::nullopt;
  try {
    return parse_rational(o.threshold);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--threshold: ") + e.what());
  }
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

int finish_report(const Game& g, const Mode& mode, const std::optional<EquilibriumWitness>& w,
                  ReportOptions ro, const Options& o, std::chrono::steady_clock::time_point start) {
  ro.duration_ms = elapsed_ms(start);
  const auto report = make_report(g, mode, w, ro);
  emit(o.out, report.dump(2) + "\n");
  if (ro.threshold) return report.at("decision").get<bool>() ? kOk : kNotFound;
  return w ? kOk : kNotFound;
}

int cmd_solve(const Options& o) {
  const auto start = std::chrono::steady_clock::now();
  const Game g = load_game(o);
  const Mode mode = mode_arg(g, o);
  ReportOptions ro{"solve", threshold_arg(o), {}, 0};
  return finish_report(g, mode, optimize(g, mode), std::move(ro), o, start);
}

int cmd_lex_solve(const Options& o) {
  const auto start = std::chrono::steady_clock::now();
  const Game g = load_game(o);
  const Mode mode = mode_arg(g, o);
  std::vector<PlayerId> objectives;
  std::stringstream ss(o.objectives);
  for (std::string name; std::getline(ss, name, ',');) {
    if (!name.empty()) objectives.push_back(player_arg(g, name, "--objectives"));
  }
  if (objectives.empty()) throw UsageError("--objectives: give at least one player");
  ReportOptions ro{"lex-solve", threshold_arg(o), objectives, 0};
  return finish_report(g, mode, lexicographic_optimize(g, mode, objectives), std::move(ro), o, start);
}

int cmd_values(const Options& o) {
  const Game g = load_game(o);
  const PlayerId p = player_arg(g, o.dictator, "--dictator");
  const auto values = punishment_values(g, p);
  ordered_json doc;
  doc["player"] = g.player_name(p);
  ordered_json table = ordered_json::object();
  for (VertexId v = 0; v < static_cast<VertexId>(g.num_vertices()); ++v) {
    table[g.vertex_name(v)] = to_string(values[static_cast<std::size_t>(v)]);
  }
  doc["values"] = std::move(table);
  emit(o.out, doc.dump(2) + "\n");
  return kOk;
}

std::optional<EquilibriumWitness> witness_for(const Game& g, const Options& o) {
  if (!o.report.empty()) {
    const auto doc = nlohmann::json::parse(read_file(o.report));
    return witness_from_report(g, doc);
  }
  return optimize(g, mode_arg(g, o));
}

int cmd_synthesize(const Options& o) {
  const Game g = load_game(o);
  const auto w = witness_for(g, o);
  if (!w) {
    std::cerr << "no equilibrium found\n";
    return kNotFound;
  }
  if (o.steps < 0) throw UsageError("--steps must be nonnegative");
  const auto [play, next] = advance(build_schedule(g, *w), o.steps);
  std::string text;
  for (VertexId v : play) text += g.vertex_name(v) + "\n";
  emit(o.out, text);
  return kOk;
}

int cmd_simulate_deviation(const Options& o) {
  const Game g = load_game(o);
  const auto w = witness_for(g, o);
  if (!w) {
    std::cerr << "no equilibrium found\n";
    return kNotFound;
  }
  if (o.horizon <= 0) throw UsageError("--horizon must be positive");
  const Scheduler s = build_schedule(g, *w);
  const PunishmentTable punish = punishment_table(g);
  std::mt19937_64 rng(o.seed);

  std::optional<PlayerId> deviator;
  if (!o.deviator.empty()) deviator = player_arg(g, o.deviator, "--deviator");
  std::int64_t at = o.at;
  EdgeId alt = kNoEdge;
  // Without an explicit step, sample one among the first `steps` where the
  // deviator (or any constrained player) owns the vertex and has an option.
  const auto [play, unused] = advance(s, std::max<std::int64_t>(at, o.steps) + 2);
  std::vector<std::int64_t> options;
  for (std::int64_t i = 0; i + 1 < static_cast<std::int64_t>(play.size()); ++i) {
    if (at >= 0 && i != at) continue;
    const VertexId v = play[static_cast<std::size_t>(i)];
    const PlayerId p = g.owner(v);
    if (deviator ? p != *deviator : !w->mode.constrains(p)) continue;
    if (g.out_edges(v).size() < 2) continue;
    options.push_back(i);
  }
  if (options.empty()) throw UsageError("no step offers the deviator an alternative move");
  at = options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng)];
  const VertexId v = play[static_cast<std::size_t>(at)];
  const VertexId scheduled = play[static_cast<std::size_t>(at) + 1];
  std::vector<EdgeId> alts;
  for (EdgeId e : g.out_edges(v)) {
    if (g.edge(e).to == scheduled) continue;
    if (!o.to.empty() && g.vertex_name(g.edge(e).to) != o.to) continue;
    alts.push_back(e);
  }
  if (alts.empty()) throw UsageError("--to: not an alternative successor of '" + g.vertex_name(v) + "'");
  alt = alts[std::uniform_int_distribution<std::size_t>(0, alts.size() - 1)(rng)];
  const PlayerId p = g.owner(v);

  const Rational mean = simulate_deviation(g, s, p, at, alt, o.horizon, punish);
  const Rational& reward = w->rewards[static_cast<std::size_t>(p)];
  ordered_json doc;
  doc["deviator"] = g.player_name(p);
  doc["at"] = at;
  doc["from"] = g.vertex_name(v);
  doc["to"] = g.vertex_name(g.edge(alt).to);
  doc["horizon"] = o.horizon;
  doc["mean"] = to_string(mean);
  doc["equilibrium_reward"] = to_string(reward);
  doc["profitable"] = mean > reward;
  emit(o.out, doc.dump(2) + "\n");
  return kOk;
}

int cmd_reduce_3sat(const Options& o) {
  Game g = reduce_3sat(parse_cnf(read_file(o.cnf), o.pad));
  if (o.zero_sum) g = make_zero_sum(g);
  emit(o.out, serialize_game(g));
  return kOk;
}

ordered_json mixture(const std::vector<std::string>& labels, const std::vector<Rational>& x) {
  ordered_json out = ordered_json::object();
  for (std::size_t i = 0; i < labels.size(); ++i) out[labels[i]] = to_string(x[i]);
  return out;
}

ordered_json profile_json(const Bimatrix& m, const MixedProfile& p) {
  ordered_json j;
  j["dictator"] = mixture(m.dictator_actions, p.dictator);
  j["opponent"] = mixture(m.opponent_actions, p.opponent);
  j["payoffs"] = {to_string(p.dictator_payoff), to_string(p.opponent_payoff)};
  return j;
}

int cmd_bimatrix(const Options& o) {
  const Bimatrix m = parse_bimatrix(read_file(o.matrix));
  ordered_json doc;
  doc["command"] = "bimatrix";
  doc["political"] = profile_json(m, political_optimum(m));
  ordered_json nash = ordered_json::array();
  for (const auto& p : nash_equilibria(m)) nash.push_back(profile_json(m, p));
  doc["nash"] = std::move(nash);
  emit(o.out, doc.dump(2) + "\n");
  return kOk;
}

int cmd_verify(const Options& o) {
  const Game g = load_game(o);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(read_file(o.report));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed report: ") + e.what(), e.byte);
  }
  if (!doc.value("found", false)) {
    std::cerr << "report holds no equilibrium\n";
    return kNotFound;
  }
  const auto issues = verify_report(g, doc);
  for (const auto& issue : issues) std::cerr << issue << "\n";
  if (issues.empty()) std::cout << "ok\n";
  return issues.empty() ? kOk : kNotFound;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Optimal Nash and political equilibria in multi-player mean-payoff games"};
  app.require_subcommand(1);
  Options o;

  auto game_flags = [&](CLI::App* c) {
    c->add_option("--game", o.game_path, "Game document (JSON)")->required()->check(CLI::ExistingFile);
  };
  auto mode_flags = [&](CLI::App* c, bool dictator_required) {
    c->add_option("--mode", o.mode, "political or nash")->check(CLI::IsMember({"political", "nash"}));
    auto* d = c->add_option("--dictator", o.dictator, "Beneficiary player");
    if (dictator_required) d->required();
    c->add_option("--variant", o.variant, "Threshold reading: owner or literal")
        ->check(CLI::IsMember({"owner", "literal"}));
  };
  auto out_flag = [&](CLI::App* c) { c->add_option("--out", o.out, "Output file (default stdout)"); };

  auto* solve = app.add_subcommand("solve", "Optimal equilibrium for the dictator");
  game_flags(solve);
  mode_flags(solve, true);
  solve->add_option("--threshold", o.threshold, "Decide whether the optimum reaches this value");
  out_flag(solve);

  auto* lex = app.add_subcommand("lex-solve", "Lexicographic optimisation over several players");
  game_flags(lex);
  mode_flags(lex, true);
  lex->add_option("--objectives", o.objectives, "Comma-separated players in priority order")->required();
  lex->add_option("--threshold", o.threshold, "Decide whether the final optimum reaches this value");
  out_flag(lex);

  auto* values = app.add_subcommand("values", "Punishment values of one player");
  game_flags(values);
  values->add_option("--dictator,--player", o.dictator, "Player")->required();
  out_flag(values);

  auto* synth = app.add_subcommand("synthesize", "Stream the dictated play");
  game_flags(synth);
  mode_flags(synth, false);
  synth->add_option("--report", o.report, "Use the witness of this report")->check(CLI::ExistingFile);
  synth->add_option("--steps", o.steps, "Number of vertices to emit");
  out_flag(synth);

  auto* dev = app.add_subcommand("simulate-deviation", "Play a unilateral deviation against punishment");
  game_flags(dev);
  mode_flags(dev, false);
  dev->add_option("--report", o.report, "Use the witness of this report")->check(CLI::ExistingFile);
  dev->add_option("--deviator", o.deviator, "Deviating player (default: sampled)");
  dev->add_option("--at", o.at, "Step at which to deviate (default: sampled)");
  dev->add_option("--to", o.to, "Successor taken instead (default: sampled)");
  dev->add_option("--steps", o.steps, "Sampling window for the deviation step");
  dev->add_option("--horizon", o.horizon, "Edges averaged after the deviation");
  dev->add_option("--seed", o.seed, "Seed for the sampled choices");
  out_flag(dev);

  auto* red = app.add_subcommand("reduce-3sat", "Hardness game of a 3-CNF formula");
  red->add_option("--cnf", o.cnf, "DIMACS CNF file")->required()->check(CLI::ExistingFile);
  red->add_flag("--pad", o.pad, "Pad short clauses by repeating their first literal");
  red->add_flag("--zero-sum", o.zero_sum, "Apply the zero-sum transform");
  out_flag(red);

  auto* bim = app.add_subcommand("bimatrix", "Political optimum and Nash equilibria of a bimatrix game");
  bim->add_option("--matrix,--game", o.matrix, "Matrix document (JSON)")->required()->check(CLI::ExistingFile);
  out_flag(bim);

  auto* verify = app.add_subcommand("verify", "Re-validate a report against its game");
  game_flags(verify);
  verify->add_option("--report", o.report, "Report to check")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  auto needs_dictator = [&](CLI::App* c) {
    if (c->parsed() && o.report.empty() && o.dictator.empty()) throw UsageError("--dictator or --report is required");
  };
  try {
    needs_dictator(synth);
    needs_dictator(dev);
    if (solve->parsed()) return cmd_solve(o);
    if (lex->parsed()) return cmd_lex_solve(o);
    if (values->parsed()) return cmd_values(o);
    if (synth->parsed()) return cmd_synthesize(o);
    if (dev->parsed()) return cmd_simulate_deviation(o);
    if (red->parsed()) return cmd_reduce_3sat(o);
    if (bim->parsed()) return cmd_bimatrix(o);
    if (verify->parsed()) return cmd_verify(o);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
  } catch (const InvalidGame& e) {
    std::cerr << "error: invalid game: " << e.what() << "\n";
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
  } catch (const std::length_error& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return kInputError;
}
