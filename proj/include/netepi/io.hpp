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

// JSON file formats.
//
//   graph      {"vertices": [v...], "edges": [{"id": e, "ends": [v, w]}...]}
//   signature  {"graph": graph, "propositions": {e: [p...]}}
//   protocol   {"signature": signature, "domains": {e: [w...]},
//               "locals": {v: [{e: w...}...]}, "valuation": {p: [w...]}}
//   run        {e: w...}
//   proof      {"signature": signature, "mode": "theorem" | "hypothesis",
//               "hypotheses": [formula...], "lemmas": [proof...],
//               "lines": [{"formula": text, "rule": name, ...params}...]}
//   profile    {"graph": graph, "edges": {e: {"sink": b, "knows_delta": b,
//               "knows_side": [b, b]}}}
//   flow       {e: ["n/d", "n/d"]}
//
// Line, hypothesis and lemma references in proof files are 1-based. Lemmas
// may omit "signature" to inherit the enclosing one. A protocol vertex absent
// from "locals" allows every tuple.

#pragma once

#include <cstddef>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "netepi/canonical_flow.hpp"
#include "netepi/error.hpp"
#include "netepi/formula.hpp"
#include "netepi/multigraph.hpp"
#include "netepi/proofcheck.hpp"
#include "netepi/protocol.hpp"

namespace netepi::io {

using Json = nlohmann::json;

inline Json read_json_text(const std::string& text, const std::string& origin = "<input>") {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& err) {
    throw Error(ErrorCode::kFormatError, origin + ": " + err.what(), err.byte);
  }
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kFormatError, path + ": cannot open file");
  std::stringstream buf;
  buf << in.rdbuf();
  return read_json_text(buf.str(), path);
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

namespace detail {

// Wraps schema errors from the JSON library; library errors pass through.
template <typename F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Json::exception& err) {
    throw Error(ErrorCode::kFormatError, std::string(what) + ": " + err.what());
  }
}

inline EdgeSet edge_set(const Json& j) {
  EdgeSet out;
  for (const auto& e : j) out.insert(e.get<std::string>());
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Graph and signature.

inline Json graph_to_json(const Multigraph& g) {
  Json edges = Json::array();
  for (const auto& spec : g.edge_specs()) {
    edges.push_back({{"id", spec.id}, {"ends", {spec.first, spec.second}}});
  }
  return {{"vertices", g.vertices()}, {"edges", edges}};
}

inline Multigraph graph_from_json(const Json& j) {
  auto [vs, es] = detail::guarded("graph", [&] {
    std::vector<EdgeSpec> specs;
    for (const auto& e : j.at("edges")) {
      const auto& ends = e.at("ends");
      if (ends.size() != 2) throw Error(ErrorCode::kFormatError, "graph: an edge needs two ends");
      specs.push_back({e.at("id").get<std::string>(), ends[0].get<std::string>(),
                       ends[1].get<std::string>()});
    }
    return std::make_pair(j.at("vertices").get<std::vector<VertexId>>(), std::move(specs));
  });
  return Multigraph(std::move(vs), std::move(es));
}

inline Json signature_to_json(const Signature& sig) {
  return {{"graph", graph_to_json(sig.graph())}, {"propositions", sig.props()}};
}

inline Signature signature_from_json(const Json& j) {
  auto g = detail::guarded("signature", [&] { return graph_from_json(j.at("graph")); });
  auto props = detail::guarded("signature", [&] {
    return j.at("propositions").get<std::map<EdgeId, std::set<PropositionId>>>();
  });
  return Signature(std::move(g), std::move(props));
}

// ---------------------------------------------------------------------------
// Protocol and run.

inline Json protocol_to_json(const Protocol& p) {
  return {{"signature", signature_to_json(p.sig())},
          {"domains", p.domains_by_name()},
          {"locals", p.locals_by_name()},
          {"valuation", p.valuation_by_name()}};
}

inline Protocol protocol_from_json(const Json& j) {
  auto sig = detail::guarded("protocol", [&] { return signature_from_json(j.at("signature")); });
  return detail::guarded("protocol", [&] {
    auto domains = j.at("domains").get<std::map<EdgeId, std::vector<Value>>>();
    std::map<VertexId, std::vector<std::map<EdgeId, Value>>> locals;
    if (j.contains("locals")) {
      locals = j.at("locals").get<std::map<VertexId, std::vector<std::map<EdgeId, Value>>>>();
    }
    std::map<PropositionId, std::set<Value>> valuation;
    if (j.contains("valuation")) {
      valuation = j.at("valuation").get<std::map<PropositionId, std::set<Value>>>();
    }
    return Protocol(std::move(sig), domains, locals, valuation);
  });
}

inline Json run_to_json(const Protocol& p, const Run& run) { return run_values(p, run); }

inline std::map<EdgeId, Value> run_values_from_json(const Json& j) {
  return detail::guarded("run", [&] { return j.get<std::map<EdgeId, Value>>(); });
}

// ---------------------------------------------------------------------------
// Proof scripts.

inline Json justification_to_json(const Justification& j) {
  Json out = {{"rule", rule_name(j)}};
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, just::Truth> || std::is_same_v<T, just::PosIntrospection> ||
                      std::is_same_v<T, just::NegIntrospection> ||
                      std::is_same_v<T, just::Distributivity>) {
          out["edge"] = x.e;
        } else if constexpr (std::is_same_v<T, just::Gateway>) {
          out["edge"] = x.e;
          out["gate"] = x.g;
          out["A"] = x.a;
          out["B"] = x.b;
        } else if constexpr (std::is_same_v<T, just::ModusPonens>) {
          out["minor"] = x.minor + 1;
          out["major"] = x.major + 1;
        } else if constexpr (std::is_same_v<T, just::Necessitation>) {
          out["edge"] = x.e;
          out["line"] = x.line + 1;
        } else if constexpr (std::is_same_v<T, just::Hypothesis>) {
          out["index"] = x.index + 1;
        } else if constexpr (std::is_same_v<T, just::Theorem>) {
          out["lemma"] = x.lemma + 1;
        }
      },
      j);
  return out;
}

namespace detail {

// 1-based reference to a 0-based index. Zero maps past any valid index so the
// checker reports it as a bad reference.
inline std::size_t ref(const Json& j, const char* key) {
  const auto v = j.at(key).get<std::size_t>();
  return v == 0 ? static_cast<std::size_t>(-1) : v - 1;
}

inline Justification justification_from_json(const Json& j) {
  const auto rule = j.at("rule").get<std::string>();
  auto edge = [&] { return j.at("edge").get<EdgeId>(); };
  if (rule == "Tautology") return just::Tautology{};
  if (rule == "Truth") return just::Truth{edge()};
  if (rule == "PosIntrospection") return just::PosIntrospection{edge()};
  if (rule == "NegIntrospection") return just::NegIntrospection{edge()};
  if (rule == "Distributivity") return just::Distributivity{edge()};
  if (rule == "Gateway") {
    return just::Gateway{edge(), j.at("gate").get<EdgeId>(), edge_set(j.at("A")),
                         edge_set(j.at("B"))};
  }
  if (rule == "ModusPonens") return just::ModusPonens{ref(j, "minor"), ref(j, "major")};
  if (rule == "Necessitation") return just::Necessitation{edge(), ref(j, "line")};
  if (rule == "Hypothesis") return just::Hypothesis{ref(j, "index")};
  if (rule == "Theorem") return just::Theorem{ref(j, "lemma")};
  throw Error(ErrorCode::kFormatError, "proof: unknown rule '" + rule + "'");
}

inline ProofScript proof_from_json(const Json& j, const Signature* inherited) {
  ProofScript s;
  if (j.contains("signature")) {
    s.sig = signature_from_json(j.at("signature"));
  } else if (inherited) {
    s.sig = *inherited;
  } else {
    throw Error(ErrorCode::kFormatError, "proof: missing signature");
  }
  const auto mode = j.value("mode", std::string("theorem"));
  if (mode == "theorem") {
    s.mode = ProofMode::kTheorem;
  } else if (mode == "hypothesis") {
    s.mode = ProofMode::kHypothesis;
  } else {
    throw Error(ErrorCode::kFormatError, "proof: unknown mode '" + mode + "'");
  }
  if (j.contains("hypotheses")) {
    for (const auto& h : j.at("hypotheses")) {
      s.hypotheses.push_back(parse(s.sig, h.get<std::string>()));
    }
  }
  if (j.contains("lemmas")) {
    for (const auto& l : j.at("lemmas")) s.lemmas.push_back(proof_from_json(l, &s.sig));
  }
  for (const auto& line : j.at("lines")) {
    s.lines.push_back(
        {parse(s.sig, line.at("formula").get<std::string>()), justification_from_json(line)});
  }
  return s;
}

}  // namespace detail

inline Json proof_to_json(const ProofScript& s, bool with_signature = true) {
  Json out;
  if (with_signature) out["signature"] = signature_to_json(s.sig);
  out["mode"] = s.mode == ProofMode::kTheorem ? "theorem" : "hypothesis";
  if (!s.hypotheses.empty()) {
    Json hs = Json::array();
    for (const auto& h : s.hypotheses) hs.push_back(to_string(h));
    out["hypotheses"] = hs;
  }
  if (!s.lemmas.empty()) {
    Json ls = Json::array();
    for (const auto& l : s.lemmas) ls.push_back(proof_to_json(l, !(l.sig == s.sig)));
    out["lemmas"] = ls;
  }
  Json lines = Json::array();
  for (const auto& line : s.lines) {
    auto entry = justification_to_json(line.justification);
    entry["formula"] = to_string(line.formula);
    lines.push_back(entry);
  }
  out["lines"] = lines;
  return out;
}

inline ProofScript proof_from_json(const Json& j) {
  return detail::guarded("proof", [&] { return detail::proof_from_json(j, nullptr); });
}

// ---------------------------------------------------------------------------
// Knowledge profiles and flows.

inline Json profile_to_json(const KnowledgeProfile& p) {
  Json edges = Json::object();
  for (std::size_t e = 0; e < p.graph.edge_count(); ++e) {
    edges[p.graph.edge(e)] = {{"sink", bool(p.sink[e])},
                              {"knows_delta", bool(p.knows_delta[e])},
                              {"knows_side", {p.knows_side[e][0], p.knows_side[e][1]}}};
  }
  return {{"graph", graph_to_json(p.graph)}, {"edges", edges}};
}

// Edges missing from "edges" get all flags false.
inline KnowledgeProfile profile_from_json(const Json& j) {
  KnowledgeProfile p(detail::guarded("profile", [&] { return graph_from_json(j.at("graph")); }));
  detail::guarded("profile", [&] {
    for (const auto& [id, flags] : j.at("edges").items()) {
      const auto e = p.edge(id);
      p.sink[e] = flags.value("sink", false);
      p.knows_delta[e] = flags.value("knows_delta", false);
      if (flags.contains("knows_side")) {
        const auto& s = flags.at("knows_side");
        if (s.size() != 2) {
          throw Error(ErrorCode::kFormatError, "profile: knows_side needs two flags");
        }
        p.knows_side[e] = {s[0].get<bool>(), s[1].get<bool>()};
      }
    }
    return 0;
  });
  return p;
}

inline std::string rational_to_string(const Rational& r) {
  return boost::multiprecision::numerator(r).str() + "/" +
         boost::multiprecision::denominator(r).str();
}

inline Rational rational_from_string(const std::string& s) {
  try {
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    const auto slash = s.find('/');
    const auto digits = [&](std::size_t from, std::size_t to) {
      if (from >= to) return false;
      for (auto k = from; k < to; ++k) {
        if (s[k] < '0' || s[k] > '9') return false;
      }
      return true;
    };
    const auto num_end = slash == std::string::npos ? s.size() : slash;
    if (!digits(i, num_end) || (slash != std::string::npos && !digits(slash + 1, s.size()))) {
      throw Error(ErrorCode::kFormatError, "flow: malformed rational '" + s + "'");
    }
    Rational num(boost::multiprecision::cpp_int(s.substr(0, num_end)));
    if (slash == std::string::npos) return num;
    boost::multiprecision::cpp_int den(s.substr(slash + 1));
    if (den == 0) throw Error(ErrorCode::kFormatError, "flow: zero denominator in '" + s + "'");
    return num / Rational(den);
  } catch (const std::runtime_error& err) {
    if (dynamic_cast<const Error*>(&err)) throw;
    throw Error(ErrorCode::kFormatError, "flow: malformed rational '" + s + "'");
  }
}

inline Json flow_to_json(const Multigraph& g, const FlowAssignment& f) {
  Json out = Json::object();
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    out[g.edge(e)] = {rational_to_string(f.at(e, 0)), rational_to_string(f.at(e, 1))};
  }
  return out;
}

// Edges missing from the file get zero on both ends.
inline FlowAssignment flow_from_json(const Multigraph& g, const Json& j) {
  FlowAssignment f(g.edge_count());
  detail::guarded("flow", [&] {
    for (const auto& [id, ends] : j.items()) {
      const auto e = g.edge_index(id);
      if (ends.size() != 2) throw Error(ErrorCode::kFormatError, "flow: an edge needs two values");
      f.at(e, 0) = rational_from_string(ends[0].get<std::string>());
      f.at(e, 1) = rational_from_string(ends[1].get<std::string>());
    }
    return 0;
  });
  return f;
}

inline EndPair end_pair_from_strings(const std::string& a, const std::string& b) {
  return {rational_from_string(a), rational_from_string(b)};
}

}  // namespace netepi::io
