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

// Network-flow constructions over knowledge profiles.
//
// Every edge is a pipe with a sink faucet in its middle and a flow value at
// each of its two ends; a positive value means water entering the pipe at
// that end. A knowledge profile records, per edge e:
//
//   sink(e)           the faucet on e is open
//   knows_delta(e)    an observer of e knows some faucet is open
//   knows_side(e, s)  an observer of e knows some faucet is open in the
//                     component of the graph without e that contains the
//                     endpoint on side s
//
// A flow assignment is valid for a profile and a set F of enforced edges
// when it satisfies the conditions checked by verify_flow. The constructions
// below build valid flows and transform one valid flow into another that
// agrees with a prescribed pair of end values on one edge.

#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <deque>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "netepi/error.hpp"
#include "netepi/multigraph.hpp"

namespace netepi {

using Rational = boost::multiprecision::cpp_rational;

struct KnowledgeProfile {
  Multigraph graph;
  // Indexed by edge index.
  std::vector<bool> sink;
  std::vector<bool> knows_delta;
  std::vector<std::array<bool, 2>> knows_side;

  KnowledgeProfile() = default;
  explicit KnowledgeProfile(Multigraph g)
      : graph(std::move(g)),
        sink(graph.edge_count(), false),
        knows_delta(graph.edge_count(), false),
        knows_side(graph.edge_count(), {false, false}) {}

  std::size_t edge(const EdgeId& e) const { return graph.edge_index(e); }

  friend bool operator==(const KnowledgeProfile&, const KnowledgeProfile&) = default;
};

// Flow values per edge index and side.
struct FlowAssignment {
  std::vector<std::array<Rational, 2>> ends;

  FlowAssignment() = default;
  explicit FlowAssignment(std::size_t edges) : ends(edges) {}

  Rational& at(std::size_t e, int side) { return ends.at(e)[side]; }
  const Rational& at(std::size_t e, int side) const { return ends.at(e)[side]; }
  Rational sum(std::size_t e) const { return ends.at(e)[0] + ends.at(e)[1]; }

  friend bool operator==(const FlowAssignment&, const FlowAssignment&) = default;
};

using EndPair = std::array<Rational, 2>;

// ---------------------------------------------------------------------------
// Profile invariants.

struct ProfileViolation {
  std::string invariant;  // "monotonicity" or "split"
  EdgeId edge;
  std::optional<int> side;

  friend bool operator==(const ProfileViolation&, const ProfileViolation&) = default;
};

inline std::vector<ProfileViolation> validate_profile(const KnowledgeProfile& p) {
  const auto n = p.graph.edge_count();
  if (p.sink.size() != n || p.knows_delta.size() != n || p.knows_side.size() != n) {
    throw Error(ErrorCode::kInvalidProfile, "profile does not cover every edge exactly once");
  }
  if (!is_connected(p.graph)) throw Error(ErrorCode::kDisconnectedGraph, "graph is not connected");
  std::vector<ProfileViolation> out;
  for (std::size_t e = 0; e < n; ++e) {
    for (int s = 0; s < 2; ++s) {
      if (p.knows_side[e][s] && !p.knows_delta[e]) {
        out.push_back({"monotonicity", p.graph.edge(e), s});
      }
    }
    if (p.knows_delta[e] && !p.sink[e] && !p.knows_side[e][0] && !p.knows_side[e][1]) {
      out.push_back({"split", p.graph.edge(e), std::nullopt});
    }
  }
  return out;
}

namespace detail {

inline void require_valid_profile(const KnowledgeProfile& p) {
  const auto v = validate_profile(p);
  if (!v.empty()) {
    throw Error(ErrorCode::kInvalidProfile,
                v.front().invariant + " invariant fails on edge '" + v.front().edge + "'");
  }
}

inline void require_shape(const KnowledgeProfile& p, const FlowAssignment& f) {
  if (f.ends.size() != p.graph.edge_count()) {
    throw Error(ErrorCode::kInvalidInput, "flow does not cover every edge of the profile");
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Verification.

struct FlowViolation {
  std::string condition;  // 1c, 2a, 2b, 2c, 3a, 3b, local
  std::optional<EdgeId> edge;
  std::optional<int> side;
  std::optional<VertexId> vertex;

  friend bool operator==(const FlowViolation&, const FlowViolation&) = default;
};

// Conditions on a single edge given its two end values.
inline std::vector<FlowViolation> edge_conditions(const KnowledgeProfile& p, std::size_t e,
                                                  const EndPair& v, bool is_bridge,
                                                  bool enforced) {
  std::vector<FlowViolation> out;
  const auto& id = p.graph.edge(e);
  const Rational sum = v[0] + v[1];
  const bool sink = p.sink[e];
  const bool knows = p.knows_delta[e];
  if ((sum > 0) != sink) out.push_back({"1c", id, std::nullopt, std::nullopt});
  if (is_bridge) {
    if (!sink && sum != 0) out.push_back({"2a", id, std::nullopt, std::nullopt});
    for (int s = 0; s < 2; ++s) {
      if (v[s] < 0 && !p.knows_side[e][s]) out.push_back({"2b", id, s, std::nullopt});
    }
    if (enforced && knows && !sink && !(v[0] < 0 || v[1] < 0)) {
      out.push_back({"2c", id, std::nullopt, std::nullopt});
    }
  } else {
    if (sum < 0 && !knows) out.push_back({"3a", id, std::nullopt, std::nullopt});
    if (enforced && knows && !sink && !(sum < 0)) {
      out.push_back({"3b", id, std::nullopt, std::nullopt});
    }
  }
  return out;
}

inline std::vector<FlowViolation> verify_flow(const KnowledgeProfile& p, const FlowAssignment& f,
                                              const EdgeSet& enforced) {
  detail::require_shape(p, f);
  const auto& g = p.graph;
  std::vector<bool> in_f(g.edge_count(), false);
  for (const auto& e : enforced) in_f[g.edge_index(e)] = true;
  const auto bridge = bridge_mask(g);

  std::vector<FlowViolation> out;
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    auto v = edge_conditions(p, e, f.ends[e], bridge[e], in_f[e]);
    out.insert(out.end(), v.begin(), v.end());
  }
  std::vector<Rational> total(g.vertex_count());
  std::vector<bool> near_sink(g.vertex_count(), false);
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    for (int s = 0; s < 2; ++s) {
      const auto v = g.ends(e)[s];
      total[v] += f.ends[e][s];
      if (p.sink[e]) near_sink[v] = true;
    }
  }
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (!near_sink[v] && total[v] < 0) {
      out.push_back({"local", std::nullopt, std::nullopt, g.vertex(v)});
    }
  }
  return out;
}

inline EdgeSet all_edges(const Multigraph& g) {
  return EdgeSet(g.edges().begin(), g.edges().end());
}

// ---------------------------------------------------------------------------
// Paths along which flow is pushed from a knowing edge to an open sink.

enum class GammaCertificate { kStart, kInteriorBridge, kInteriorNonBridge, kTerminalSink };

inline std::string_view to_string(GammaCertificate c) {
  switch (c) {
    case GammaCertificate::kStart: return "start";
    case GammaCertificate::kInteriorBridge: return "interior-bridge";
    case GammaCertificate::kInteriorNonBridge: return "interior-nonbridge";
    case GammaCertificate::kTerminalSink: return "terminal-sink";
  }
  return "unknown";
}

// Path e0, v1, e1, ..., vk, ek with k >= 1. near_side[i] is the side of e_i
// at v_i; for e0 that is the end away from v1.
struct GammaPath {
  Path path;
  std::vector<int> near_side;
  std::vector<GammaCertificate> certificates;
};

// Conditions on a candidate path: e0 knows the side containing v1; no
// sink before the last edge; every interior bridge knows the side it leads
// into; the last edge is a sink.
inline bool is_gamma_path(const KnowledgeProfile& p, const GammaPath& gp) {
  const auto& g = p.graph;
  if (!is_valid_path(g, gp.path) || gp.path.circular) return false;
  const auto k = gp.path.vertices.size();
  if (k == 0 || gp.near_side.size() != k + 1 || gp.certificates.size() != k + 1) return false;
  const auto bridge = bridge_mask(g);
  for (std::size_t i = 0; i <= k; ++i) {
    const auto e = g.edge_index(gp.path.edges[i]);
    const int near = gp.near_side[i];
    if (near != 0 && near != 1) return false;
    if (i > 0 && g.ends(e)[near] != g.vertex_index(gp.path.vertices[i - 1])) return false;
    if (i < k) {
      const int far = 1 - near;
      if (g.ends(e)[far] != g.vertex_index(gp.path.vertices[i])) return false;
      if (p.sink[e]) return false;
      if (i == 0) {
        if (!p.knows_side[e][far] || gp.certificates[i] != GammaCertificate::kStart) return false;
      } else if (bridge[e]) {
        if (!p.knows_side[e][far] || gp.certificates[i] != GammaCertificate::kInteriorBridge) {
          return false;
        }
      } else if (gp.certificates[i] != GammaCertificate::kInteriorNonBridge) {
        return false;
      }
    } else if (!p.sink[e] || gp.certificates[i] != GammaCertificate::kTerminalSink) {
      return false;
    }
  }
  return true;
}

namespace detail {

inline std::optional<GammaPath> gamma_search(const KnowledgeProfile& p, std::size_t e0, int toward,
                                             const std::vector<bool>& bridge) {
  const auto& g = p.graph;
  const auto start = g.ends(e0)[toward];
  std::vector<std::size_t> via(g.vertex_count(), kNoEdge);
  std::vector<bool> seen(g.vertex_count(), false);
  std::deque<std::size_t> queue{start};
  seen[start] = true;
  while (!queue.empty()) {
    const auto x = queue.front();
    queue.pop_front();
    std::size_t terminal = kNoEdge;
    for (auto e : g.incident(x)) {
      if (e != e0 && p.sink[e]) {
        terminal = e;
        break;
      }
    }
    if (terminal != kNoEdge) {
      // Walk back to e0.
      std::vector<std::size_t> rev_vertices{x};
      std::vector<std::size_t> rev_edges{terminal};
      for (auto v = x; v != start;) {
        const auto e = via[v];
        rev_edges.push_back(e);
        v = g.opposite(e, v);
        rev_vertices.push_back(v);
      }
      rev_edges.push_back(e0);
      GammaPath gp;
      const auto k = rev_vertices.size();
      for (auto it = rev_edges.rbegin(); it != rev_edges.rend(); ++it) {
        gp.path.edges.push_back(g.edge(*it));
      }
      for (auto it = rev_vertices.rbegin(); it != rev_vertices.rend(); ++it) {
        gp.path.vertices.push_back(g.vertex(*it));
      }
      for (std::size_t i = 0; i <= k; ++i) {
        const auto e = g.edge_index(gp.path.edges[i]);
        if (i == 0) {
          gp.near_side.push_back(1 - toward);
          gp.certificates.push_back(GammaCertificate::kStart);
          continue;
        }
        const auto vi = g.vertex_index(gp.path.vertices[i - 1]);
        gp.near_side.push_back(g.ends(e)[0] == vi ? 0 : 1);
        if (i == k) {
          gp.certificates.push_back(GammaCertificate::kTerminalSink);
        } else {
          gp.certificates.push_back(bridge[e] ? GammaCertificate::kInteriorBridge
                                              : GammaCertificate::kInteriorNonBridge);
        }
      }
      return gp;
    }
    for (auto e : g.incident(x)) {
      if (e == e0 || p.sink[e] || g.is_loop(e)) continue;
      const auto y = g.opposite(e, x);
      if (seen[y]) continue;
      if (bridge[e] && !p.knows_side[e][g.ends(e)[0] == y ? 0 : 1]) continue;
      seen[y] = true;
      via[y] = e;
      queue.push_back(y);
    }
  }
  return std::nullopt;
}

}  // namespace detail

// Breadth-first search for a path from e through the endpoint on side
// `toward`; without a side, side 0 is tried before side 1 among the sides
// e knows. The path stops at the first reached vertex with an open sink
// other than e, taking the smallest such edge id.
inline GammaPath find_gamma_path(const KnowledgeProfile& p, const EdgeId& e,
                                 std::optional<int> toward = std::nullopt) {
  const auto ei = p.edge(e);
  if (p.sink[ei]) throw Error(ErrorCode::kInvalidInput, "edge '" + e + "' has an open sink");
  if (toward && *toward != 0 && *toward != 1) {
    throw Error(ErrorCode::kInvalidInput, "side must be 0 or 1");
  }
  if (toward && !p.knows_side[ei][*toward]) {
    throw Error(ErrorCode::kInvalidInput, "edge '" + e + "' does not know the requested side");
  }
  if (!toward && !p.knows_delta[ei]) {
    throw Error(ErrorCode::kInvalidInput, "edge '" + e + "' knows of no open sink");
  }
  const auto bridge = bridge_mask(p.graph);
  for (int s = 0; s < 2; ++s) {
    if (toward && *toward != s) continue;
    if (!p.knows_side[ei][s]) continue;
    if (auto gp = detail::gamma_search(p, ei, s, bridge)) return *gp;
  }
  throw Error(ErrorCode::kNoGammaPath, "no path from edge '" + e + "' reaches an open sink");
}

// ---------------------------------------------------------------------------
// Constructions.

inline FlowAssignment build_base(const KnowledgeProfile& p) {
  detail::require_valid_profile(p);
  FlowAssignment f(p.graph.edge_count());
  for (std::size_t e = 0; e < p.graph.edge_count(); ++e) {
    if (p.sink[e]) f.ends[e] = {Rational(1), Rational(1)};
  }
  return f;
}

// Smallest integer strictly greater than every |value| in f.
inline Rational exceeding_bound(const FlowAssignment& f) {
  Rational m = 0;
  for (const auto& pair : f.ends) {
    for (const auto& v : pair) {
      const Rational a = abs(v);
      if (a > m) m = a;
    }
  }
  const boost::multiprecision::cpp_int whole = numerator(m) / denominator(m);
  return Rational(whole + 1);
}

namespace detail {

// +lambda at the near end of every path edge, -lambda at the far end of
// every edge before the last; the first edge's near end is skipped when
// `skip_first_near` is set.
inline void push_along(const KnowledgeProfile& p, FlowAssignment& f, const GammaPath& gp,
                       const Rational& lambda, bool skip_first_near) {
  const auto k = gp.path.vertices.size();
  for (std::size_t i = 0; i <= k; ++i) {
    const auto e = p.edge(gp.path.edges[i]);
    const int near = gp.near_side[i];
    if (!(i == 0 && skip_first_near)) f.at(e, near) += lambda;
    if (i < k) f.at(e, 1 - near) -= lambda;
  }
}

}  // namespace detail

inline FlowAssignment augment_for_edge(const KnowledgeProfile& p, const FlowAssignment& f,
                                       const EdgeSet& enforced, const EdgeId& h) {
  detail::require_shape(p, f);
  const auto hi = p.edge(h);
  if (enforced.contains(h)) {
    throw Error(ErrorCode::kInvalidInput, "edge '" + h + "' is already enforced");
  }
  if (!verify_flow(p, f, enforced).empty()) {
    throw Error(ErrorCode::kInvalidInput, "input flow does not verify for the enforced set");
  }
  if (!p.knows_delta[hi] || p.sink[hi]) return f;
  const auto lambda = exceeding_bound(f);
  const auto gp = find_gamma_path(p, h);
  const bool is_bridge = bridge_mask(p.graph)[hi];
  FlowAssignment out = f;
  detail::push_along(p, out, gp, lambda, !is_bridge);
  return out;
}

inline FlowAssignment build_flow(const KnowledgeProfile& p) {
  auto f = build_base(p);
  EdgeSet enforced;
  for (const auto& h : p.graph.edges()) {
    try {
      f = augment_for_edge(p, f, enforced, h);
    } catch (const Error& err) {
      if (err.code() != ErrorCode::kNoGammaPath) throw;
      throw Error(ErrorCode::kInconsistentProfile,
                  "no flow exists: edge '" + h + "' knows of an open sink that no path reaches");
    }
    enforced.insert(h);
  }
  return f;
}

inline FlowAssignment scale_flow(const FlowAssignment& f, const Rational& lambda) {
  if (lambda <= 0) throw Error(ErrorCode::kNonPositiveScale, "scale factor must be positive");
  FlowAssignment out = f;
  for (auto& pair : out.ends) {
    for (auto& v : pair) v *= lambda;
  }
  return out;
}

enum class RerouteCase { kI, kIIa, kIIb, kIIIa, kIIIb, kIIIc };

inline std::string_view to_string(RerouteCase c) {
  switch (c) {
    case RerouteCase::kI: return "I";
    case RerouteCase::kIIa: return "IIa";
    case RerouteCase::kIIb: return "IIb";
    case RerouteCase::kIIIa: return "IIIa";
    case RerouteCase::kIIIb: return "IIIb";
    case RerouteCase::kIIIc: return "IIIc";
  }
  return "?";
}

struct RerouteResult {
  FlowAssignment flow;
  RerouteCase which;
};

// From a flow `base` valid with every edge enforced, builds another such
// flow whose two end values on `h` equal `target`.
inline RerouteResult reroute_to_match(const KnowledgeProfile& p, const FlowAssignment& base,
                                      const EdgeId& h, const EndPair& target) {
  detail::require_shape(p, base);
  const auto& g = p.graph;
  const auto hi = p.edge(h);
  if (!verify_flow(p, base, all_edges(g)).empty()) {
    throw Error(ErrorCode::kInvalidInput, "base flow does not verify with every edge enforced");
  }
  const auto bridge = bridge_mask(g);
  if (!edge_conditions(p, hi, target, bridge[hi], true).empty()) {
    throw Error(ErrorCode::kCaseViolation,
                "target values violate the conditions on edge '" + h + "'");
  }
  const auto& l = base.ends[hi];
  const auto& t = target;

  if (p.sink[hi]) {
    FlowAssignment out = base;
    out.ends[hi] = target;
    return {out, RerouteCase::kI};
  }

  if (!bridge[hi]) {
    // Cycle h, v1, e1, ..., vk, h: v1 is h's side-1 endpoint and the cycle
    // returns through h's side-0 endpoint, so side 0 is h's near end.
    const auto cycle = find_cycle_through(g, h);
    const auto k = cycle.vertices.size();
    auto near_side = [&](std::size_t i) -> int {
      if (i == 0) return 0;
      const auto e = g.edge_index(cycle.edges[i]);
      return g.ends(e)[0] == g.vertex_index(cycle.vertices[i - 1]) ? 0 : 1;
    };
    FlowAssignment out = base;
    if (!p.knows_delta[hi]) {
      const Rational d0 = t[0] - l[0];
      const Rational d1 = t[1] - l[1];
      for (std::size_t i = 0; i < k; ++i) {
        const auto e = g.edge_index(cycle.edges[i]);
        const int near = near_side(i);
        out.at(e, near) += d0;
        out.at(e, 1 - near) += d1;
      }
      return {out, RerouteCase::kIIa};
    }
    const Rational lambda = (t[0] + t[1]) / (l[0] + l[1]);
    const Rational l0 = l[0];
    out = scale_flow(base, lambda);
    for (std::size_t i = 0; i < k; ++i) {
      const auto e = g.edge_index(cycle.edges[i]);
      const int near = near_side(i);
      out.at(e, near) = lambda * (base.at(e, near) - l0) + t[0];
      out.at(e, 1 - near) = lambda * (base.at(e, 1 - near) + l0) - t[0];
    }
    return {out, RerouteCase::kIIb};
  }

  const Rational product = t[1] * l[1];
  if (product == 0) {
    if (!(t == l)) {
      throw Error(ErrorCode::kCaseViolation, "zero flow on bridge '" + h + "' cannot be rerouted");
    }
    return {base, RerouteCase::kIIIa};
  }
  if (product > 0) return {scale_flow(base, t[1] / l[1]), RerouteCase::kIIIb};

  // Opposite signs: push flow out through the side where the target is
  // negative, then rescale so the positive end matches.
  const int neg_side = t[0] < 0 ? 0 : 1;
  const int pos_side = 1 - neg_side;
  const auto gp = find_gamma_path(p, h, neg_side);
  const auto lambda = exceeding_bound(base);
  const Rational mu = t[pos_side] / (l[pos_side] + lambda);
  FlowAssignment pushed = base;
  detail::push_along(p, pushed, gp, lambda, false);
  return {scale_flow(pushed, mu), RerouteCase::kIIIc};
}

}  // namespace netepi
