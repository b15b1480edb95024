// Copyright 2026 The netepi Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// The `netepi` command line. Every invocation writes one JSON report to the
// output stream. Exit codes: 0 ok, 1 violation / rejection / counterexample
// or other library error, 2 usage, 3 malformed input.
//
//   netepi graph analyze GRAPH [--bridges] [--incident V] [--component V E]
//                              [--gateway G A B] [--cycle E]
//   netepi check PROTOCOL --formula F [--run RUN] [--valid]
//   netepi prove PROOF
//   netepi flow base PROFILE [--out FLOW]
//   netepi flow build PROFILE [--out FLOW]
//   netepi flow verify PROFILE FLOW [--enforce all|none|E,E...]
//   netepi flow reroute PROFILE BASE --edge H --target X Y [--out FLOW]
//   netepi fuzz soundness [--seed S] [--iters N] [--per-schema K]
//
// Edge lists (A, B, --enforce) are comma separated.

#pragma once

#include <cstdint>
#include <fstream>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "netepi/canonical_flow.hpp"
#include "netepi/error.hpp"
#include "netepi/formula.hpp"
#include "netepi/io.hpp"
#include "netepi/modelcheck.hpp"
#include "netepi/multigraph.hpp"
#include "netepi/proofcheck.hpp"
#include "netepi/protocol.hpp"
#include "netepi/soundness.hpp"

namespace netepi {

enum class ExitCode { kOk = 0, kViolation = 1, kUsage = 2, kFormat = 3 };

namespace cli_detail {

using io::Json;

struct Outcome {
  std::string status;  // ok, violation, rejected
  Json payload;
};

inline int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kFormatError:
    case ErrorCode::kSyntaxError:
    case ErrorCode::kUnknownVertex:
    case ErrorCode::kUnknownEdge:
    case ErrorCode::kUnknownProposition:
    case ErrorCode::kDuplicateId:
    case ErrorCode::kInvalidSignature:
    case ErrorCode::kDomainViolation:
      return static_cast<int>(ExitCode::kFormat);
    default:
      return static_cast<int>(ExitCode::kViolation);
  }
}

// Message without the "Code: " prefix carried by what().
inline std::string bare_message(const Error& err) {
  std::string s = err.what();
  const auto prefix = std::string(to_string(err.code())) + ": ";
  return s.rfind(prefix, 0) == 0 ? s.substr(prefix.size()) : s;
}

// Runs `load` on the parsed file and tags any failure with the path.
template <typename F>
auto load(const std::string& path, F&& from_json) {
  const auto j = io::read_json_file(path);
  try {
    return from_json(j);
  } catch (const Error& err) {
    if (err.code() == ErrorCode::kFormatError && bare_message(err).rfind(path, 0) == 0) throw;
    throw Error(err.code(), path + ": " + bare_message(err), err.position());
  }
}

inline std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

inline EdgeSet edge_list(const Multigraph& g, const std::string& s) {
  EdgeSet out;
  for (const auto& e : split_list(s)) {
    g.edge_index(e);
    out.insert(e);
  }
  return out;
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kFormatError, path + ": cannot write file");
  out << text;
}

inline Json violations_json(const std::vector<FlowViolation>& vs) {
  Json out = Json::array();
  for (const auto& v : vs) {
    Json item = {{"condition", v.condition}};
    if (v.edge) item["edge"] = *v.edge;
    if (v.side) item["side"] = *v.side;
    if (v.vertex) item["vertex"] = *v.vertex;
    out.push_back(item);
  }
  return out;
}

inline Json rejection_json(const Rejection& r) {
  Json out = {{"line", r.line + 1}, {"reason", to_string(r.reason)}, {"detail", r.detail}};
  if (r.lemma) out["lemma"] = *r.lemma + 1;
  return out;
}

// ---------------------------------------------------------------------------
// Subcommand bodies.

struct GraphArgs {
  std::string file;
  bool bridges = false;
  std::string incident;
  std::vector<std::string> component;
  std::vector<std::string> gateway;
  std::string cycle;
};

inline Outcome graph_analyze(const GraphArgs& a) {
  const auto g = load(a.file, io::graph_from_json);
  Json r = {{"vertices", g.vertex_count()}, {"edges", g.edge_count()},
            {"connected", is_connected(g)}};
  if (a.bridges) r["bridges"] = bridges(g);
  if (!a.incident.empty()) r["incident"] = incident_edges(g, a.incident);
  if (!a.component.empty()) {
    const auto c = component_without(g, a.component[0], a.component[1]);
    r["component"] = {{"vertices", c.vertices}, {"edges", c.edges}};
  }
  if (!a.gateway.empty()) {
    const auto& gate = a.gateway[0];
    const auto as = edge_list(g, a.gateway[1]);
    const auto bs = edge_list(g, a.gateway[2]);
    r["gateway"] = {{"gate", gate}, {"A", as}, {"B", bs}, {"holds", is_gateway(g, gate, as, bs)}};
  }
  if (!a.cycle.empty()) {
    const auto p = find_cycle_through(g, a.cycle);
    r["cycle"] = {{"edges", p.edges}, {"vertices", p.vertices}};
  }
  return {"ok", r};
}

struct CheckArgs {
  std::string file;
  std::string formula;
  std::string run;
  bool valid = false;
};

inline Outcome check(const CheckArgs& a) {
  const auto p = load(a.file, io::protocol_from_json);
  const auto f = parse(p.sig(), a.formula);
  StateSpace space(p);
  Json r = {{"formula", to_string(f)}, {"runs", space.runs().size()}};
  bool ok = true;
  if (!a.run.empty()) {
    const auto values = load(a.run, io::run_values_from_json);
    if (!is_run(p, values)) throw Error(ErrorCode::kNotARun, a.run + ": not a run of the protocol");
    const bool sat = space.satisfies(run_from_values(p, values), f);
    r["satisfied"] = sat;
    ok = ok && sat;
  }
  if (a.valid || a.run.empty()) {
    const auto v = is_valid(space, f);
    r["valid"] = v.holds;
    if (!v.holds) r["counterexample"] = io::run_to_json(p, *v.counterexample);
    ok = ok && v.holds;
  }
  return {ok ? "ok" : "violation", r};
}

inline Outcome prove(const std::string& file) {
  const auto s = load(file, io::proof_from_json);
  const auto result = check_proof(s);
  Json r = {{"lines", s.lines.size()},
            {"mode", s.mode == ProofMode::kTheorem ? "theorem" : "hypothesis"},
            {"conclusion", to_string(s.conclusion())},
            {"accepted", result.accepted()}};
  if (!result.accepted()) r["rejection"] = rejection_json(*result.rejection);
  return {result.accepted() ? "ok" : "rejected", r};
}

inline Outcome emit_flow(const KnowledgeProfile& p, const FlowAssignment& f,
                         const std::string& out, Json r) {
  const auto j = io::flow_to_json(p.graph, f);
  if (out.empty()) {
    r["flow"] = j;
  } else {
    write_file(out, io::dump(j));
    r["written"] = out;
  }
  return {"ok", r};
}

struct FlowArgs {
  std::string profile;
  std::string flow;
  std::string out;
  std::string enforce = "all";
  std::string edge;
  std::vector<std::string> target;
};

inline Outcome flow_base(const FlowArgs& a) {
  const auto p = load(a.profile, io::profile_from_json);
  return emit_flow(p, build_base(p), a.out, Json::object());
}

inline Outcome flow_build(const FlowArgs& a) {
  const auto p = load(a.profile, io::profile_from_json);
  return emit_flow(p, build_flow(p), a.out, Json::object());
}

inline Outcome flow_verify(const FlowArgs& a) {
  const auto p = load(a.profile, io::profile_from_json);
  const auto f = load(a.flow, [&](const Json& j) { return io::flow_from_json(p.graph, j); });
  EdgeSet enforced;
  if (a.enforce == "all") {
    enforced = all_edges(p.graph);
  } else if (a.enforce != "none") {
    enforced = edge_list(p.graph, a.enforce);
  }
  const auto vs = verify_flow(p, f, enforced);
  Json r = {{"enforced", enforced}, {"violations", violations_json(vs)}};
  return {vs.empty() ? "ok" : "violation", r};
}

inline Outcome flow_reroute(const FlowArgs& a) {
  const auto p = load(a.profile, io::profile_from_json);
  const auto base = load(a.flow, [&](const Json& j) { return io::flow_from_json(p.graph, j); });
  const auto target = io::end_pair_from_strings(a.target[0], a.target[1]);
  const auto res = reroute_to_match(p, base, a.edge, target);
  return emit_flow(p, res.flow, a.out, {{"case", to_string(res.which)}, {"edge", a.edge}});
}

struct FuzzArgs {
  std::uint64_t seed = 1;
  std::size_t iters = 200;
  std::size_t per_schema = 10;
};

inline Outcome fuzz(const FuzzArgs& a) {
  SoundnessConfig config;
  config.seed = a.seed;
  config.protocols = a.iters;
  config.instances_per_schema = a.per_schema;
  const auto report = fuzz_soundness(config);
  Json ces = Json::array();
  for (const auto& c : report.counterexamples) {
    ces.push_back({{"protocol_seed", c.protocol_seed},
                   {"schema", c.schema},
                   {"formula", c.formula},
                   {"run", c.run}});
  }
  Json r = {{"seed", a.seed},
            {"protocols", report.protocols},
            {"instances", report.instances},
            {"counterexamples", ces}};
  return {report.sound() ? "ok" : "violation", r};
}

}  // namespace cli_detail

// Parses `args` (without the program name), runs the command and writes the
// report to `out`. Usage diagnostics go to `err`.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  using namespace cli_detail;
  CLI::App app{"Epistemic logic of communication networks", "netepi"};
  app.require_subcommand(1);

  std::function<Outcome()> action;

  auto* graph = app.add_subcommand("graph", "Topology queries")->require_subcommand(1);
  GraphArgs ga;
  auto* analyze = graph->add_subcommand("analyze", "Analyze a graph file");
  analyze->add_option("graph", ga.file, "Graph file")->required();
  analyze->add_flag("--bridges", ga.bridges, "List bridges");
  analyze->add_option("--incident", ga.incident, "Edges incident to a vertex");
  analyze->add_option("--component", ga.component, "Component of V after removing E")
      ->expected(2);
  analyze->add_option("--gateway", ga.gateway, "Is G a gateway between A and B")->expected(3);
  analyze->add_option("--cycle", ga.cycle, "Circular path through an edge");
  analyze->callback([&] { action = [&] { return graph_analyze(ga); }; });

  CheckArgs ca;
  auto* chk = app.add_subcommand("check", "Model check a formula on a protocol");
  chk->add_option("protocol", ca.file, "Protocol file")->required();
  chk->add_option("--formula", ca.formula, "Formula")->required();
  chk->add_option("--run", ca.run, "Run file");
  chk->add_flag("--valid", ca.valid, "Check validity over all runs");
  chk->callback([&] { action = [&] { return check(ca); }; });

  std::string proof_file;
  auto* prv = app.add_subcommand("prove", "Check a proof script");
  prv->add_option("proof", proof_file, "Proof file")->required();
  prv->callback([&] { action = [&] { return prove(proof_file); }; });

  auto* flow = app.add_subcommand("flow", "Canonical flow constructions")->require_subcommand(1);
  FlowArgs fa;
  auto* base = flow->add_subcommand("base", "Base flow of a profile");
  base->add_option("profile", fa.profile, "Profile file")->required();
  base->add_option("--out", fa.out, "Write the flow to a file");
  base->callback([&] { action = [&] { return flow_base(fa); }; });
  auto* build = flow->add_subcommand("build", "Flow valid with every edge enforced");
  build->add_option("profile", fa.profile, "Profile file")->required();
  build->add_option("--out", fa.out, "Write the flow to a file");
  build->callback([&] { action = [&] { return flow_build(fa); }; });
  auto* verify = flow->add_subcommand("verify", "Check a flow against a profile");
  verify->add_option("profile", fa.profile, "Profile file")->required();
  verify->add_option("flow", fa.flow, "Flow file")->required();
  verify->add_option("--enforce", fa.enforce, "Enforced edges: all, none or a list");
  verify->callback([&] { action = [&] { return flow_verify(fa); }; });
  auto* reroute = flow->add_subcommand("reroute", "Reroute a flow to match target values");
  reroute->add_option("profile", fa.profile, "Profile file")->required();
  reroute->add_option("flow", fa.flow, "Base flow file")->required();
  reroute->add_option("--edge", fa.edge, "Target edge")->required();
  reroute->add_option("--target", fa.target, "End values at sides 0 and 1")
      ->expected(2)
      ->required();
  reroute->add_option("--out", fa.out, "Write the flow to a file");
  reroute->callback([&] { action = [&] { return flow_reroute(fa); }; });

  auto* fz = app.add_subcommand("fuzz", "Randomized checks")->require_subcommand(1);
  FuzzArgs za;
  auto* snd = fz->add_subcommand("soundness", "Axiom soundness over random protocols");
  snd->add_option("--seed", za.seed, "First protocol seed");
  snd->add_option("--iters", za.iters, "Number of protocols");
  snd->add_option("--per-schema", za.per_schema, "Instances per schema and protocol");
  snd->callback([&] { action = [&] { return fuzz(za); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : static_cast<int>(ExitCode::kUsage);
  }

  Json report;
  int code = 0;
  try {
    auto outcome = action();
    report = std::move(outcome.payload);
    report["status"] = outcome.status;
    code = outcome.status == "ok" ? 0 : static_cast<int>(ExitCode::kViolation);
  } catch (const Error& e) {
    report = {{"status", "error"}, {"error", to_string(e.code())}, {"message", bare_message(e)}};
    if (e.position()) report["position"] = *e.position();
    code = exit_code_for(e.code());
  } catch (const std::exception& e) {
    report = {{"status", "error"}, {"error", "Internal"}, {"message", e.what()}};
    code = static_cast<int>(ExitCode::kViolation);
  }
  out << io::dump(report);
  return code;
}

}  // namespace netepi
