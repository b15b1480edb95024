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

// Undirected multigraph with loops, plus the topology queries the logic
// needs: incidence, components after deleting an edge, bridges, gateways and
// cycles through an edge.

#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "netepi/error.hpp"

namespace netepi {

using VertexId = std::string;
using EdgeId = std::string;
using VertexSet = std::set<VertexId>;
using EdgeSet = std::set<EdgeId>;

// One of the two ends of an edge. Side 0/1 refer to the endpoints in the
// order the edge was declared, so a loop still has two distinct ends.
struct EdgeEnd {
  EdgeId edge;
  int side = 0;

  friend auto operator<=>(const EdgeEnd&, const EdgeEnd&) = default;
};

struct EdgeSpec {
  EdgeId id;
  VertexId first;
  VertexId second;
};

// Alternating sequence e0, v1, e1, ..., vk, ek. `vertices` holds v1..vk, so
// vertices.size() + 1 == edges.size(). For a circular path e0 == ek.
struct Path {
  std::vector<EdgeId> edges;
  std::vector<VertexId> vertices;
  bool circular = false;

  friend bool operator==(const Path&, const Path&) = default;
};

struct Component {
  VertexSet vertices;
  EdgeSet edges;

  friend bool operator==(const Component&, const Component&) = default;
};

class Multigraph {
 public:
  Multigraph() = default;

  // Vertices and edges are stored sorted by id; indices used by the
  // index-level API follow that order.
  Multigraph(std::vector<VertexId> vertices, std::vector<EdgeSpec> edges) {
    std::sort(vertices.begin(), vertices.end());
    if (std::adjacent_find(vertices.begin(), vertices.end()) != vertices.end()) {
      throw Error(ErrorCode::kDuplicateId, "duplicate vertex id");
    }
    vertices_ = std::move(vertices);
    for (std::size_t i = 0; i < vertices_.size(); ++i) vertex_index_[vertices_[i]] = i;

    std::sort(edges.begin(), edges.end(),
              [](const EdgeSpec& a, const EdgeSpec& b) { return a.id < b.id; });
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
      if (edges[i].id == edges[i + 1].id) {
        throw Error(ErrorCode::kDuplicateId, "duplicate edge id '" + edges[i].id + "'");
      }
    }
    incident_.assign(vertices_.size(), {});
    for (std::size_t i = 0; i < edges.size(); ++i) {
      const auto a = vertex_index(edges[i].first);
      const auto b = vertex_index(edges[i].second);
      edge_ids_.push_back(edges[i].id);
      ends_.push_back({a, b});
      edge_index_[edges[i].id] = i;
      incident_[a].push_back(i);
      if (b != a) incident_[b].push_back(i);
    }
  }

  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edge_ids_.size(); }

  const std::vector<VertexId>& vertices() const { return vertices_; }
  const std::vector<EdgeId>& edges() const { return edge_ids_; }
  const VertexId& vertex(std::size_t v) const { return vertices_.at(v); }
  const EdgeId& edge(std::size_t e) const { return edge_ids_.at(e); }

  std::optional<std::size_t> find_vertex(const VertexId& v) const {
    auto it = vertex_index_.find(v);
    if (it == vertex_index_.end()) return std::nullopt;
    return it->second;
  }
  std::optional<std::size_t> find_edge(const EdgeId& e) const {
    auto it = edge_index_.find(e);
    if (it == edge_index_.end()) return std::nullopt;
    return it->second;
  }
  std::size_t vertex_index(const VertexId& v) const {
    if (auto i = find_vertex(v)) return *i;
    throw Error(ErrorCode::kUnknownVertex, "unknown vertex '" + v + "'");
  }
  std::size_t edge_index(const EdgeId& e) const {
    if (auto i = find_edge(e)) return *i;
    throw Error(ErrorCode::kUnknownEdge, "unknown edge '" + e + "'");
  }

  // Vertex indices of the two ends, by side.
  const std::array<std::size_t, 2>& ends(std::size_t e) const { return ends_.at(e); }
  bool is_loop(std::size_t e) const { return ends_.at(e)[0] == ends_.at(e)[1]; }

  // The other endpoint of `e` seen from vertex `v` (v itself for a loop).
  std::size_t opposite(std::size_t e, std::size_t v) const {
    const auto& ab = ends_.at(e);
    return ab[0] == v ? ab[1] : ab[0];
  }

  // Side of `e` that touches vertex `v`; side 0 for loops.
  int side_at(std::size_t e, std::size_t v) const {
    const auto& ab = ends_.at(e);
    if (ab[0] == v) return 0;
    if (ab[1] == v) return 1;
    throw Error(ErrorCode::kUnknownVertex,
                "vertex '" + vertices_.at(v) + "' is not an end of '" + edge_ids_.at(e) + "'");
  }

  // Edge indices incident to v, ascending, loops listed once.
  const std::vector<std::size_t>& incident(std::size_t v) const { return incident_.at(v); }

  std::vector<EdgeSpec> edge_specs() const {
    std::vector<EdgeSpec> out;
    for (std::size_t e = 0; e < edge_count(); ++e) {
      out.push_back({edge_ids_[e], vertices_[ends_[e][0]], vertices_[ends_[e][1]]});
    }
    return out;
  }

  friend bool operator==(const Multigraph& a, const Multigraph& b) {
    return a.vertices_ == b.vertices_ && a.edge_ids_ == b.edge_ids_ && a.ends_ == b.ends_;
  }

 private:
  std::vector<VertexId> vertices_;
  std::vector<EdgeId> edge_ids_;
  std::vector<std::array<std::size_t, 2>> ends_;
  std::vector<std::vector<std::size_t>> incident_;
  std::map<VertexId, std::size_t> vertex_index_;
  std::map<EdgeId, std::size_t> edge_index_;
};

// ---------------------------------------------------------------------------
// Index-level queries.

inline constexpr std::size_t kNoEdge = static_cast<std::size_t>(-1);

// Component label per vertex in (V, E \ {removed}); pass kNoEdge to keep every
// edge. Labels are dense, assigned in ascending vertex order.
inline std::vector<std::size_t> component_labels(const Multigraph& g,
                                                 std::size_t removed = kNoEdge) {
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> label(g.vertex_count(), kUnset);
  std::size_t next = 0;
  for (std::size_t start = 0; start < g.vertex_count(); ++start) {
    if (label[start] != kUnset) continue;
    std::vector<std::size_t> stack{start};
    label[start] = next;
    while (!stack.empty()) {
      const auto v = stack.back();
      stack.pop_back();
      for (auto e : g.incident(v)) {
        if (e == removed) continue;
        const auto w = g.opposite(e, v);
        if (label[w] == kUnset) {
          label[w] = next;
          stack.push_back(w);
        }
      }
    }
    ++next;
  }
  return label;
}

// bridge[e] is true iff removing e disconnects its endpoints. Lowlink DFS
// that skips the tree edge by index, so parallel edges are never bridges.
inline std::vector<bool> bridge_mask(const Multigraph& g) {
  const auto n = g.vertex_count();
  std::vector<bool> bridge(g.edge_count(), false);
  std::vector<int> disc(n, -1), low(n, 0);
  int timer = 0;

  struct Frame {
    std::size_t v;
    std::size_t parent_edge;
    std::size_t next = 0;
  };
  for (std::size_t root = 0; root < n; ++root) {
    if (disc[root] != -1) continue;
    std::vector<Frame> stack{{root, kNoEdge}};
    disc[root] = low[root] = timer++;
    while (!stack.empty()) {
      auto& f = stack.back();
      const auto& inc = g.incident(f.v);
      if (f.next < inc.size()) {
        const auto e = inc[f.next++];
        if (e == f.parent_edge || g.is_loop(e)) continue;
        const auto w = g.opposite(e, f.v);
        if (disc[w] == -1) {
          disc[w] = low[w] = timer++;
          stack.push_back({w, e});
        } else {
          low[f.v] = std::min(low[f.v], disc[w]);
        }
      } else {
        const auto done = f;
        stack.pop_back();
        if (!stack.empty()) {
          auto& parent = stack.back();
          low[parent.v] = std::min(low[parent.v], low[done.v]);
          if (low[done.v] > disc[parent.v]) bridge[done.parent_edge] = true;
        }
      }
    }
  }
  return bridge;
}

inline bool is_connected(const Multigraph& g) {
  const auto label = component_labels(g);
  return std::all_of(label.begin(), label.end(), [](std::size_t l) { return l == 0; });
}

// ---------------------------------------------------------------------------
// Id-level queries.

inline EdgeSet incident_edges(const Multigraph& g, const VertexId& v) {
  EdgeSet out;
  for (auto e : g.incident(g.vertex_index(v))) out.insert(g.edge(e));
  return out;
}

// Inc(e): the set of endpoints of e (a singleton for a loop).
inline VertexSet edge_endpoints(const Multigraph& g, const EdgeId& e) {
  const auto& ab = g.ends(g.edge_index(e));
  return {g.vertex(ab[0]), g.vertex(ab[1])};
}

inline Component component_without(const Multigraph& g, const VertexId& v, const EdgeId& e) {
  const auto vi = g.vertex_index(v);
  const auto ei = g.edge_index(e);
  const auto label = component_labels(g, ei);
  Component c;
  for (std::size_t w = 0; w < g.vertex_count(); ++w) {
    if (label[w] == label[vi]) c.vertices.insert(g.vertex(w));
  }
  for (std::size_t f = 0; f < g.edge_count(); ++f) {
    if (f != ei && label[g.ends(f)[0]] == label[vi]) c.edges.insert(g.edge(f));
  }
  return c;
}

inline EdgeSet bridges(const Multigraph& g) {
  if (!is_connected(g)) throw Error(ErrorCode::kDisconnectedGraph, "graph is not connected");
  const auto mask = bridge_mask(g);
  EdgeSet out;
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    if (mask[e]) out.insert(g.edge(e));
  }
  return out;
}

// True iff every path from an A-edge to a B-edge contains `gate`.
// Single-edge paths force A ∩ B ⊆ {gate}; longer paths avoiding the gate
// exist exactly when some component of (V, E \ {gate}) holds edges of both
// A \ {gate} and B \ {gate}.
inline bool is_gateway(const Multigraph& g, const EdgeId& gate, const EdgeSet& a,
                       const EdgeSet& b) {
  const auto gi = g.edge_index(gate);
  for (const auto& e : a) g.edge_index(e);
  for (const auto& e : b) g.edge_index(e);
  for (const auto& e : a) {
    if (e != gate && b.contains(e)) return false;
  }
  const auto label = component_labels(g, gi);
  std::set<std::size_t> a_components;
  for (const auto& e : a) {
    if (e != gate) a_components.insert(label[g.ends(g.edge_index(e))[0]]);
  }
  for (const auto& e : b) {
    if (e != gate && a_components.contains(label[g.ends(g.edge_index(e))[0]])) return false;
  }
  return true;
}

// Path invariants: distinct edges (except e0 == ek when circular), distinct
// listed vertices, each listed vertex shared by its neighbouring edges.
inline bool is_valid_path(const Multigraph& g, const Path& p) {
  if (p.edges.empty() || p.vertices.size() + 1 != p.edges.size()) return false;
  std::vector<std::size_t> es, vs;
  for (const auto& e : p.edges) {
    auto i = g.find_edge(e);
    if (!i) return false;
    es.push_back(*i);
  }
  for (const auto& v : p.vertices) {
    auto i = g.find_vertex(v);
    if (!i) return false;
    vs.push_back(*i);
  }
  std::vector<std::size_t> distinct_edges = es;
  if (p.circular) {
    if (es.size() < 2 || es.front() != es.back()) return false;
    distinct_edges.pop_back();
  }
  auto sorted = distinct_edges;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  auto sorted_v = vs;
  std::sort(sorted_v.begin(), sorted_v.end());
  if (std::adjacent_find(sorted_v.begin(), sorted_v.end()) != sorted_v.end()) return false;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const auto& x = g.ends(es[i]);
    const auto& y = g.ends(es[i + 1]);
    if ((x[0] != vs[i] && x[1] != vs[i]) || (y[0] != vs[i] && y[1] != vs[i])) return false;
  }
  // e0, v1, e0 only closes up when e0 is a loop.
  if (p.circular && vs.size() == 1 && !g.is_loop(es.front())) return false;
  return true;
}

// Circular path h, v1, e1, ..., vk, h where v1 is the side-1 endpoint of h
// and vk its side-0 endpoint. Breadth-first, so the cycle is shortest; ties
// broken by ascending edge id.
inline Path find_cycle_through(const Multigraph& g, const EdgeId& h) {
  const auto hi = g.edge_index(h);
  const auto& ab = g.ends(hi);
  if (ab[0] == ab[1]) return Path{{h, h}, {g.vertex(ab[0])}, true};
  if (bridge_mask(g)[hi]) {
    throw Error(ErrorCode::kIsBridge, "edge '" + h + "' is a bridge; no cycle passes through it");
  }
  const auto start = ab[1];
  const auto goal = ab[0];
  std::vector<std::size_t> via(g.vertex_count(), kNoEdge);
  std::vector<bool> seen(g.vertex_count(), false);
  std::deque<std::size_t> queue{start};
  seen[start] = true;
  while (!queue.empty() && !seen[goal]) {
    const auto v = queue.front();
    queue.pop_front();
    for (auto e : g.incident(v)) {
      if (e == hi) continue;
      const auto w = g.opposite(e, v);
      if (!seen[w]) {
        seen[w] = true;
        via[w] = e;
        queue.push_back(w);
      }
    }
  }
  std::vector<std::size_t> rev_vertices{goal};
  std::vector<std::size_t> rev_edges;
  for (auto v = goal; v != start;) {
    const auto e = via[v];
    rev_edges.push_back(e);
    v = g.opposite(e, v);
    rev_vertices.push_back(v);
  }
  Path p;
  p.circular = true;
  p.edges.push_back(h);
  for (auto it = rev_vertices.rbegin(); it != rev_vertices.rend(); ++it) {
    p.vertices.push_back(g.vertex(*it));
  }
  for (auto it = rev_edges.rbegin(); it != rev_edges.rend(); ++it) p.edges.push_back(g.edge(*it));
  p.edges.push_back(h);
  return p;
}

}  // namespace netepi
