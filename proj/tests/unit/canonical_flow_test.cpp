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

#include <array>
#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "netepi/canonical_flow.hpp"
#include "netepi/fixtures.hpp"
#include "netepi/random.hpp"

namespace netepi {
namespace {

struct Flags {
  bool sink = false;
  bool knows_delta = false;
  std::array<bool, 2> knows_side{false, false};
};

KnowledgeProfile make_profile(Multigraph g, const std::map<EdgeId, Flags>& flags) {
  KnowledgeProfile p(std::move(g));
  for (const auto& [id, f] : flags) {
    const auto e = p.edge(id);
    p.sink[e] = f.sink;
    p.knows_delta[e] = f.knows_delta;
    p.knows_side[e] = f.knows_side;
  }
  return p;
}

EndPair pair(Rational a, Rational b) { return {a, b}; }

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& err) {
    return err.code();
  }
  return ErrorCode::kFormatError;
}

// Bridge h between q and p that knows both of its sides, parallel channels x
// and y between q and u, open sinks s (u-v) and t (p-w), and an idle bridge
// z (v-o).
KnowledgeProfile reroute_profile() {
  Multigraph g({"p", "q", "u", "v", "w", "o"}, {{"h", "q", "p"},
                                                {"x", "q", "u"},
                                                {"y", "q", "u"},
                                                {"s", "u", "v"},
                                                {"t", "p", "w"},
                                                {"z", "v", "o"}});
  return make_profile(g, {{"h", {false, true, {true, true}}},
                          {"x", {false, true, {false, true}}},
                          {"s", {true, false, {false, false}}},
                          {"t", {true, false, {false, false}}}});
}

TEST(Profile, InvariantViolations) {
  const auto g = fixtures::line_graph({"a", "b"});
  auto p = make_profile(g, {{"a", {false, false, {true, false}}}});
  auto v = validate_profile(p);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].invariant, "monotonicity");
  p = make_profile(g, {{"a", {false, true, {false, false}}}});
  v = validate_profile(p);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].invariant, "split");
  EXPECT_TRUE(validate_profile(make_profile(g, {{"a", {true, true, {false, false}}}})).empty());
}

TEST(Verify, BaseAndSinkConditions) {
  const auto g = fixtures::line_graph({"a", "b", "c", "d"});
  const auto p = make_profile(g, {{"d", {true, false, {false, false}}}});
  const auto base = build_base(p);
  EXPECT_TRUE(verify_flow(p, base, {}).empty());
  EXPECT_EQ(base.at(p.edge("d"), 0), 1);
  EXPECT_EQ(base.at(p.edge("d"), 1), 1);
  EXPECT_EQ(base.at(p.edge("a"), 0), 0);
  const auto zero = FlowAssignment(g.edge_count());
  const auto v = verify_flow(p, zero, {});
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].condition, "1c");

  const auto none = make_profile(g, {});
  EXPECT_EQ(build_base(none), zero);
  auto two = make_profile(g, {{"a", {true}}, {"c", {true}}});
  const auto b2 = build_base(two);
  int ones = 0;
  for (const auto& ends : b2.ends) ones += (ends[0] == 1) + (ends[1] == 1);
  EXPECT_EQ(ones, 4);
}

TEST(Verify, ConditionCodes) {
  const auto g = fixtures::line_graph({"a", "b"});
  const auto p = make_profile(g, {{"a", {false, true, {false, true}}}, {"b", {true}}});
  FlowAssignment f(2);
  f.at(p.edge("b"), 0) = 1;
  f.at(p.edge("b"), 1) = 1;
  auto codes = [&](const FlowAssignment& x, const EdgeSet& enforced) {
    std::vector<std::string> out;
    for (const auto& v : verify_flow(p, x, enforced)) out.push_back(v.condition);
    return out;
  };
  EXPECT_TRUE(codes(f, {}).empty());
  EXPECT_EQ(codes(f, {"a"}), std::vector<std::string>{"2c"});
  auto g1 = f;
  g1.at(p.edge("a"), 0) = 1;
  EXPECT_EQ(codes(g1, {}), (std::vector<std::string>{"1c", "2a"}));
  auto g2 = f;
  g2.at(p.edge("a"), 0) = -1;
  g2.at(p.edge("a"), 1) = 1;
  EXPECT_EQ(codes(g2, {"a"}), (std::vector<std::string>{"2b", "local"}));
  auto g3 = f;
  g3.at(p.edge("a"), 0) = 1;
  g3.at(p.edge("a"), 1) = -1;
  EXPECT_TRUE(codes(g3, {"a"}).empty());
}

TEST(Gamma, AdjacentSinkAndNoSink) {
  const auto g = fixtures::line_graph({"e", "h"});
  const auto p = make_profile(g, {{"e", {false, true, {false, true}}}, {"h", {true}}});
  const auto gp = find_gamma_path(p, "e");
  EXPECT_EQ(gp.path.edges, (std::vector<EdgeId>{"e", "h"}));
  EXPECT_EQ(gp.path.vertices, (std::vector<VertexId>{"x1"}));
  EXPECT_TRUE(is_gamma_path(p, gp));
  const auto dry = make_profile(g, {{"e", {false, true, {false, true}}}});
  EXPECT_EQ(code_of([&] { find_gamma_path(dry, "e"); }), ErrorCode::kNoGammaPath);
  EXPECT_EQ(code_of([&] { find_gamma_path(p, "e", 0); }), ErrorCode::kInvalidInput);
}

TEST(Augment, BridgeOnRelayGraph) {
  const auto g = fixtures::relay_graph();
  const auto p = make_profile(g, {{"m", {false, true, {false, true}}}, {"c", {true}}});
  const auto base = build_base(p);
  const auto f = augment_for_edge(p, base, {}, "m");
  const auto m = p.edge("m");
  EXPECT_EQ(f.sum(m), 0);
  EXPECT_TRUE(f.at(m, 0) < 0 || f.at(m, 1) < 0);
  EXPECT_TRUE(verify_flow(p, f, {"m"}).empty());
}

TEST(Augment, NonBridgeOnTheta) {
  Multigraph g({"a", "b", "c"},
               {{"x", "a", "b"}, {"y", "a", "b"}, {"z", "a", "b"}, {"s", "b", "c"}});
  const auto p = make_profile(g, {{"x", {false, true, {false, true}}}, {"s", {true}}});
  const auto f = augment_for_edge(p, build_base(p), {}, "x");
  EXPECT_LT(f.sum(p.edge("x")), 0);
  EXPECT_TRUE(verify_flow(p, f, {"x"}).empty());
}

TEST(BuildFlow, RequiresReachableSink) {
  const auto g = fixtures::line_graph({"a", "b", "c"});
  const auto dry = make_profile(g, {{"b", {false, true, {true, false}}}});
  EXPECT_EQ(code_of([&] { build_flow(dry); }), ErrorCode::kInconsistentProfile);

  const auto p = make_profile(g, {{"b", {false, true, {false, true}}}, {"c", {true}}});
  const auto f = build_flow(p);
  EXPECT_TRUE(verify_flow(p, f, all_edges(g)).empty());
  EXPECT_NE(f.at(p.edge("b"), 0), 0);
}

TEST(Scale, ExactAndGuarded) {
  const auto p = reroute_profile();
  const auto f = build_flow(p);
  EXPECT_EQ(scale_flow(f, 1), f);
  const auto third = scale_flow(f, Rational(1, 3));
  EXPECT_EQ(third.at(p.edge("s"), 0), f.at(p.edge("s"), 0) / 3);
  EXPECT_EQ(scale_flow(third, 3), f);
  EXPECT_TRUE(verify_flow(p, scale_flow(f, 2), all_edges(p.graph)).empty());
  EXPECT_EQ(code_of([&] { scale_flow(f, 0); }), ErrorCode::kNonPositiveScale);
  EXPECT_EQ(code_of([&] { scale_flow(f, -1); }), ErrorCode::kNonPositiveScale);
}

TEST(Reroute, BaseFlowShape) {
  const auto p = reroute_profile();
  const auto f = build_flow(p);
  EXPECT_EQ(f.ends[p.edge("h")], pair(-2, 2));
  EXPECT_EQ(f.ends[p.edge("x")], pair(2, -6));
  EXPECT_EQ(f.ends[p.edge("s")], pair(7, 1));
  EXPECT_TRUE(verify_flow(p, f, all_edges(p.graph)).empty());
}

TEST(Reroute, EveryCase) {
  const auto p = reroute_profile();
  const auto base = build_flow(p);
  struct Case {
    EdgeId edge;
    EndPair target;
    RerouteCase expected;
  };
  const std::vector<Case> cases = {
      {"s", pair(5, 2), RerouteCase::kI},
      {"y", pair(3, -3), RerouteCase::kIIa},
      {"x", pair(-1, -2), RerouteCase::kIIb},
      {"z", pair(0, 0), RerouteCase::kIIIa},
      {"h", pair(-3, 3), RerouteCase::kIIIb},
      {"h", pair(3, -3), RerouteCase::kIIIc},
      {"h", pair(Rational(5, 7), Rational(-5, 7)), RerouteCase::kIIIc},
  };
  for (const auto& c : cases) {
    const auto r = reroute_to_match(p, base, c.edge, c.target);
    EXPECT_EQ(r.which, c.expected) << c.edge;
    EXPECT_EQ(r.flow.ends[p.edge(c.edge)], c.target) << c.edge;
    EXPECT_TRUE(verify_flow(p, r.flow, all_edges(p.graph)).empty()) << c.edge;
  }
  const auto scaled = reroute_to_match(p, base, "h", pair(-3, 3));
  EXPECT_EQ(scaled.flow, scale_flow(base, Rational(3, 2)));
}

TEST(Reroute, InconsistentTargets) {
  const auto p = reroute_profile();
  const auto base = build_flow(p);
  EXPECT_EQ(code_of([&] { reroute_to_match(p, base, "h", pair(1, 1)); }),
            ErrorCode::kCaseViolation);
  EXPECT_EQ(code_of([&] { reroute_to_match(p, base, "z", pair(1, -1)); }),
            ErrorCode::kCaseViolation);
  EXPECT_EQ(code_of([&] { reroute_to_match(p, base, "x", pair(1, 1)); }),
            ErrorCode::kCaseViolation);
  EXPECT_EQ(code_of([&] { reroute_to_match(p, build_base(p), "h", pair(-1, 1)); }),
            ErrorCode::kInvalidInput);
}

// Target values consistent with the profile on edge e, drawn at random. A
// negative end goes only on a side with a path to an open sink; without one
// the result is the zero pair, which the caller skips.
EndPair random_target(gen::Rng& rng, const KnowledgeProfile& p, std::size_t e, bool bridge) {
  auto r = [&] { return Rational(int(gen::uniform(rng, 1, 9)), int(gen::uniform(rng, 1, 4))); };
  if (p.sink[e]) return pair(r(), gen::coin(rng) ? r() : Rational(0));
  if (!bridge) {
    if (!p.knows_delta[e]) {
      const auto a = gen::coin(rng) ? r() : -r();
      return pair(a, -a);
    }
    const auto a = gen::coin(rng) ? r() : -r();
    return pair(a, -a - r());
  }
  if (!p.knows_delta[e]) return pair(0, 0);
  std::vector<int> sides;
  for (int s = 0; s < 2; ++s) {
    if (!p.knows_side[e][s]) continue;
    try {
      find_gamma_path(p, p.graph.edge(e), s);
      sides.push_back(s);
    } catch (const Error&) {
    }
  }
  if (sides.empty()) return pair(0, 0);
  const int neg = sides[gen::uniform(rng, 0, sides.size() - 1)];
  const auto a = r();
  EndPair out;
  out[neg] = -a;
  out[1 - neg] = a;
  return out;
}

TEST(FlowProperty, ConstructionsVerify) {
  gen::Rng rng(101);
  int built = 0, inconsistent = 0, rerouted = 0;
  for (int iter = 0; iter < 200; ++iter) {
    const auto g = gen::random_multigraph(rng, 5, 6, false);
    const auto p = gen::random_profile(rng, g);
    ASSERT_TRUE(validate_profile(p).empty());
    const auto all = all_edges(g);
    const auto base = build_base(p);
    ASSERT_TRUE(verify_flow(p, base, {}).empty());

    FlowAssignment f = base;
    EdgeSet enforced;
    bool ok = true;
    const auto bridge = bridge_mask(g);
    for (const auto& h : g.edges()) {
      FlowAssignment next;
      try {
        next = augment_for_edge(p, f, enforced, h);
      } catch (const Error& err) {
        ASSERT_EQ(err.code(), ErrorCode::kNoGammaPath);
        ok = false;
        break;
      }
      enforced.insert(h);
      ASSERT_TRUE(verify_flow(p, next, enforced).empty()) << h;
      // Sums change only on the pushed edge and the terminal sink.
      const auto hi = p.edge(h);
      if (p.knows_delta[hi] && !p.sink[hi]) {
        const auto gp = find_gamma_path(p, h);
        for (std::size_t i = 1; i + 1 < gp.path.edges.size(); ++i) {
          const auto e = p.edge(gp.path.edges[i]);
          EXPECT_EQ(next.sum(e), f.sum(e));
        }
      }
      for (const auto& sub : enforced) {
        EdgeSet smaller = enforced;
        smaller.erase(sub);
        EXPECT_TRUE(verify_flow(p, next, smaller).empty());
      }
      f = next;
    }
    bool any_knows = false, any_sink = false;
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      any_knows = any_knows || p.knows_delta[e];
      any_sink = any_sink || p.sink[e];
    }
    if (!ok) {
      ++inconsistent;
      EXPECT_EQ(code_of([&] { build_flow(p); }), ErrorCode::kInconsistentProfile);
      continue;
    }
    ++built;
    EXPECT_EQ(build_flow(p), f);
    if (any_knows) EXPECT_TRUE(any_sink);
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      if (!bridge[e] || p.sink[e]) continue;
      for (int s = 0; s < 2; ++s) EXPECT_EQ(f.at(e, s) == 0, !p.knows_delta[e]);
    }
    for (const auto& lambda : {Rational(1, 3), Rational(2), Rational(7)}) {
      EXPECT_TRUE(verify_flow(p, scale_flow(f, lambda), all).empty());
    }
    for (int k = 0; k < 3; ++k) {
      const auto e = gen::uniform(rng, 0, g.edge_count() - 1);
      const auto target = random_target(rng, p, e, bridge[e]);
      if (bridge[e] && p.knows_delta[e] && !p.sink[e] && target[0] == 0) continue;
      const auto r = reroute_to_match(p, f, g.edge(e), target);
      EXPECT_EQ(r.flow.ends[e], target);
      EXPECT_TRUE(verify_flow(p, r.flow, all).empty()) << to_string(r.which);
      ++rerouted;
    }
  }
  EXPECT_GT(built, 50);
  EXPECT_GT(rerouted, 150);
  RecordProperty("built", built);
  RecordProperty("inconsistent", inconsistent);
}

}  // namespace
}  // namespace netepi
