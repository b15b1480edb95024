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

#include <cstddef>
#include <functional>
#include <numeric>
#include <vector>

#include <gtest/gtest.h>

#include "netepi/fixtures.hpp"
#include "netepi/multigraph.hpp"
#include "netepi/random.hpp"

namespace netepi {
namespace {

using fixtures::relay_graph;

Multigraph triangle() {
  return Multigraph({"a", "b", "c"}, {{"x", "a", "b"}, {"y", "b", "c"}, {"z", "c", "a"}});
}

// Exhaustive enumeration of paths e0, v1, e1, ..., vk, ek with distinct
// edges and distinct interior vertices. Returns false as soon as a path from
// an A-edge to a B-edge avoids `gate`.
bool gateway_by_enumeration(const Multigraph& g, std::size_t gate, const std::vector<bool>& in_a,
                            const std::vector<bool>& in_b) {
  std::vector<bool> used_edge(g.edge_count(), false);
  std::vector<bool> used_vertex(g.vertex_count(), false);
  bool avoided = false;
  std::function<void(std::size_t)> extend = [&](std::size_t last) {
    if (in_b[last]) {
      avoided = true;
      return;
    }
    const auto& ends = g.ends(last);
    for (int s = 0; s < 2 && !avoided; ++s) {
      const auto v = ends[s];
      if (used_vertex[v]) continue;
      used_vertex[v] = true;
      for (std::size_t e = 0; e < g.edge_count() && !avoided; ++e) {
        const auto& f = g.ends(e);
        if (used_edge[e] || e == gate || (f[0] != v && f[1] != v)) continue;
        used_edge[e] = true;
        extend(e);
        used_edge[e] = false;
      }
      used_vertex[v] = false;
      if (ends[0] == ends[1]) break;
    }
  };
  for (std::size_t a = 0; a < g.edge_count() && !avoided; ++a) {
    if (!in_a[a] || a == gate) continue;
    used_edge[a] = true;
    extend(a);
    used_edge[a] = false;
  }
  return !avoided;
}

// Edge e is a bridge iff removing it leaves its endpoints in different
// union-find classes.
std::vector<bool> bridges_by_removal(const Multigraph& g) {
  std::vector<bool> out(g.edge_count());
  for (std::size_t removed = 0; removed < g.edge_count(); ++removed) {
    std::vector<std::size_t> parent(g.vertex_count());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
      return parent[x] == x ? x : parent[x] = find(parent[x]);
    };
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      if (e != removed) parent[find(g.ends(e)[0])] = find(g.ends(e)[1]);
    }
    out[removed] = find(g.ends(removed)[0]) != find(g.ends(removed)[1]);
  }
  return out;
}

TEST(Multigraph, RejectsDuplicateAndDanglingIds) {
  EXPECT_THROW(Multigraph({"a", "a"}, {}), Error);
  EXPECT_THROW(Multigraph({"a", "b"}, {{"e", "a", "b"}, {"e", "b", "a"}}), Error);
  try {
    Multigraph({"a"}, {{"e", "a", "z"}});
    FAIL() << "expected UnknownVertex";
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::kUnknownVertex);
  }
}

TEST(Multigraph, IncidenceOnRelayGraph) {
  const auto g = relay_graph();
  EXPECT_EQ(incident_edges(g, "q"), (EdgeSet{"m", "k", "c"}));
  EXPECT_EQ(edge_endpoints(g, "k"), (VertexSet{"q", "u"}));
  EXPECT_TRUE(Multigraph({"a", "b"}, {}).incident(0).empty());
  EXPECT_THROW(incident_edges(g, "zz"), Error);
}

TEST(Multigraph, LoopIsListedOnceAndHasTwoEnds) {
  Multigraph g({"a", "b"}, {{"l", "a", "a"}, {"e", "a", "b"}});
  EXPECT_EQ(incident_edges(g, "a"), (EdgeSet{"e", "l"}));
  EXPECT_TRUE(g.is_loop(g.edge_index("l")));
  EXPECT_EQ(bridges(g), (EdgeSet{"e"}));
}

TEST(Multigraph, ComponentWithoutEdge) {
  const auto g = relay_graph();
  const auto c = component_without(g, "u", "m'");
  EXPECT_EQ(c.vertices, (VertexSet{"p", "q", "u"}));
  EXPECT_EQ(c.edges, (EdgeSet{"m", "k", "c"}));

  const auto all = component_without(g, "u", "k");
  EXPECT_EQ(all.vertices.size(), 6u);
  EdgeSet expected(g.edges().begin(), g.edges().end());
  expected.erase("k");
  EXPECT_EQ(all.edges, expected);

  Multigraph single({"v", "w"}, {{"e", "v", "w"}});
  const auto lone = component_without(single, "v", "e");
  EXPECT_EQ(lone.vertices, VertexSet{"v"});
  EXPECT_TRUE(lone.edges.empty());
}

TEST(Multigraph, Bridges) {
  EXPECT_EQ(bridges(relay_graph()), (EdgeSet{"m", "m'", "m''"}));
  EXPECT_TRUE(bridges(triangle()).empty());
  EXPECT_EQ(bridges(fixtures::line_graph({"a", "b"})), (EdgeSet{"a", "b"}));
  EXPECT_THROW(bridges(Multigraph({"a", "b"}, {})), Error);
}

TEST(Multigraph, Connectivity) {
  EXPECT_TRUE(is_connected(relay_graph()));
  EXPECT_FALSE(is_connected(Multigraph({"a", "b"}, {})));
  EXPECT_TRUE(is_connected(Multigraph({"a"}, {})));
}

TEST(Multigraph, GatewayDecisions) {
  const auto g = relay_graph();
  EXPECT_TRUE(is_gateway(g, "m'", {"m", "k"}, {"k'", "c'"}));
  EXPECT_TRUE(is_gateway(g, "k", {"k"}, {"m", "m''"}));
  EXPECT_FALSE(is_gateway(g, "k", {"m"}, {"m'"}));
  for (const auto& e : g.edges()) {
    for (const auto& f : g.edges()) EXPECT_TRUE(is_gateway(g, e, {e}, {f})) << e << " " << f;
  }
  EXPECT_THROW(is_gateway(g, "nope", {"m"}, {"k"}), Error);
}

TEST(Multigraph, BridgeSeparatesItsSides) {
  const auto g = relay_graph();
  for (const auto& b : bridges(g)) {
    const auto& ab = g.ends(g.edge_index(b));
    auto left = component_without(g, g.vertex(ab[0]), b);
    auto right = component_without(g, g.vertex(ab[1]), b);
    EXPECT_NE(left.vertices, right.vertices);
    left.edges.insert(b);
    right.edges.insert(b);
    EXPECT_TRUE(is_gateway(g, b, left.edges, right.edges));
  }
}

TEST(Multigraph, CycleThroughParallelEdge) {
  const auto g = relay_graph();
  const auto p = find_cycle_through(g, "k");
  EXPECT_TRUE(p.circular);
  EXPECT_TRUE(is_valid_path(g, p));
  EXPECT_EQ(p.edges, (std::vector<EdgeId>{"k", "c", "k"}));
  EXPECT_EQ(find_cycle_through(triangle(), "x").edges.size(), 4u);
  try {
    find_cycle_through(g, "m");
    FAIL() << "expected IsBridge";
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::kIsBridge);
  }
}

TEST(MultigraphProperty, AgreesWithBruteForceOracles) {
  gen::Rng rng(7);
  for (int iter = 0; iter < 300; ++iter) {
    const auto g = gen::random_multigraph(rng, 5, 6, iter % 3 == 0);
    const auto mask = bridge_mask(g);
    EXPECT_EQ(mask, bridges_by_removal(g));

    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      const auto& id = g.edge(e);
      const auto& ab = g.ends(e);
      if (ab[0] == ab[1]) continue;
      const auto cu = component_without(g, g.vertex(ab[0]), id);
      const auto cv = component_without(g, g.vertex(ab[1]), id);
      EXPECT_EQ(cu == cv, !mask[e]);
      if (!mask[e]) {
        const auto p = find_cycle_through(g, id);
        EXPECT_TRUE(p.circular);
        EXPECT_TRUE(is_valid_path(g, p)) << id;
      }
    }

    for (int q = 0; q < 10; ++q) {
      const auto gate = gen::uniform(rng, 0, g.edge_count() - 1);
      std::vector<bool> in_a(g.edge_count()), in_b(g.edge_count());
      EdgeSet a, b;
      for (std::size_t e = 0; e < g.edge_count(); ++e) {
        if ((in_a[e] = gen::coin(rng, 0.35))) a.insert(g.edge(e));
        if ((in_b[e] = gen::coin(rng, 0.35))) b.insert(g.edge(e));
      }
      EXPECT_EQ(is_gateway(g, g.edge(gate), a, b), gateway_by_enumeration(g, gate, in_a, in_b));
    }
  }
}

}  // namespace
}  // namespace netepi
