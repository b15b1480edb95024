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

#include <bitset>
#include <cstddef>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "netepi/axioms.hpp"
#include "netepi/fixtures.hpp"
#include "netepi/modelcheck.hpp"
#include "netepi/random.hpp"

namespace netepi {
namespace {

using fixtures::carries;

// Direct recursive reading of satisfaction; boxes scan every run.
bool naive_satisfies(const Protocol& p, const std::vector<Run>& runs, const Run& r,
                     const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::kFalsum: return false;
    case Formula::Kind::kProp: {
      const auto e = p.graph().edge_index(p.sig().home(f.name()));
      return p.truth(f.name())[r[e]];
    }
    case Formula::Kind::kImplies:
      return !naive_satisfies(p, runs, r, f.lhs()) || naive_satisfies(p, runs, r, f.rhs());
    case Formula::Kind::kBox: {
      const auto e = p.graph().edge_index(f.name());
      for (const auto& s : runs) {
        if (s[e] == r[e] && !naive_satisfies(p, runs, s, f.body())) return false;
      }
      return true;
    }
  }
  return false;
}

Protocol random_protocol_over(gen::Rng& rng, const Signature& sig) {
  while (true) {
    try {
      return random_protocol(sig, rng(), {3, 0.6});
    } catch (const Error& err) {
      if (err.code() != ErrorCode::kNoRunFound) throw;
    }
  }
}

TEST(Satisfaction, OneBitRelay) {
  const auto p1 = fixtures::p1_protocol();
  const auto r = run_from_values(p1, {{"m", "1"}, {"k", "0"}, {"c", "1"}, {"m'", "1"}});
  const auto& sig = p1.sig();
  EXPECT_TRUE(satisfies(p1, r, parse(sig, "[m] p1")));
  EXPECT_FALSE(satisfies(p1, r, parse(sig, "[c] p1")));
  EXPECT_FALSE(satisfies(p1, r, parse(sig, "[k] p1")));
  EXPECT_TRUE(satisfies(p1, r, parse(sig, "[m'] true")));
  const auto bad = run_from_values(p1, {{"m", "1"}, {"k", "0"}, {"c", "0"}, {"m'", "1"}});
  try {
    satisfies(p1, bad, parse(sig, "p1"));
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::kNotARun);
  }
}

TEST(Satisfaction, NoisyFourBitRelay) {
  const auto p2 = fixtures::p2_protocol();
  StateSpace space(p2);
  ASSERT_EQ(space.runs().size(), 6400u);
  const auto r = run_from_values(p2, {{"m", "0110"}, {"k", "1010"}, {"c", "1101"}, {"m'", "0110"}});
  ASSERT_TRUE(is_run(p2, r));
  const auto& sig = p2.sig();
  EXPECT_FALSE(space.satisfies(r, Formula::box("m", Formula::prop(carries("0110")))));
  std::size_t far = 0;
  for (unsigned w = 0; w < 16; ++w) {
    if (std::bitset<4>(w ^ 0b0110).count() != 3) continue;
    ++far;
    const auto word = std::bitset<4>(w).to_string();
    EXPECT_TRUE(space.satisfies(r, parse(sig, "[m] ~" + carries(word)))) << word;
  }
  EXPECT_EQ(far, 4u);
}

TEST(Validity, CounterexamplesAndAxioms) {
  const auto p1 = fixtures::p1_protocol();
  const auto bottom = is_valid(p1, Formula::falsum());
  EXPECT_FALSE(bottom.holds);
  ASSERT_TRUE(bottom.counterexample.has_value());
  EXPECT_EQ(*bottom.counterexample, enumerate_runs(p1).front());
  EXPECT_TRUE(is_valid(p1, truth_axiom("c", parse(p1.sig(), "p0 -> [k] p1"))).holds);
}

TEST(Validity, GatewayInstanceOnLine) {
  const auto sig = fixtures::line_signature({"a", "b", "c"});
  gen::Rng rng(2);
  const auto p = random_protocol_over(rng, sig);
  GatewayInstance inst{"a", "b", {"a", "b"}, {"c"}, parse(sig, "p_a | [b] p_c"),
                       parse(sig, "[c] p_c")};
  EXPECT_TRUE(check_axiom_soundness(p, inst).holds);
  inst.g = "a";
  try {
    check_axiom_soundness(p, inst);
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::kMalformedInstance);
  }
}

TEST(ModelcheckProperty, LabelsMatchNaiveSemantics) {
  gen::Rng rng(31);
  for (int iter = 0; iter < 40; ++iter) {
    const auto g = gen::random_multigraph(rng, 4, 4, true);
    const auto sig = gen::random_signature(rng, g);
    const auto p = random_protocol_over(rng, sig);
    StateSpace space(p);
    for (int k = 0; k < 20; ++k) {
      const auto f = gen::random_formula(rng, sig, 4);
      const auto& label = space.label(f);
      for (std::size_t r = 0; r < space.runs().size(); ++r) {
        EXPECT_EQ(bool(label[r]), naive_satisfies(p, space.runs(), space.runs()[r], f))
            << to_string(f);
      }
    }
  }
}

TEST(ModelcheckProperty, S5AndTwoRunsAndNecessitation) {
  gen::Rng rng(37);
  for (int iter = 0; iter < 40; ++iter) {
    const auto g = gen::random_multigraph(rng, 4, 5, true);
    const auto sig = gen::random_signature(rng, g);
    const auto p = random_protocol_over(rng, sig);
    StateSpace space(p);
    const auto& edges = g.edges();
    for (int k = 0; k < 10; ++k) {
      const auto e = edges[gen::uniform(rng, 0, edges.size() - 1)];
      const auto phi = gen::random_formula(rng, sig, 3);
      const auto psi = gen::random_formula(rng, sig, 3);
      EXPECT_TRUE(is_valid(space, truth_axiom(e, phi)).holds);
      EXPECT_TRUE(is_valid(space, positive_introspection_axiom(e, phi)).holds);
      EXPECT_TRUE(is_valid(space, negative_introspection_axiom(e, phi)).holds);
      EXPECT_TRUE(is_valid(space, distributivity_axiom(e, phi, psi)).holds);
      if (is_valid(space, phi).holds) EXPECT_TRUE(is_valid(space, Formula::box(e, phi)).holds);

      const auto t = gen::random_subset(rng, edges);
      const auto local = gen::random_formula(rng, sig, 3, &t);
      const auto& label = space.label(local);
      const auto& runs = space.runs();
      for (std::size_t a = 0; a < runs.size(); ++a) {
        for (std::size_t b = a + 1; b < runs.size(); ++b) {
          bool agree = true;
          for (const auto& f : t) agree = agree && runs_equal_on(p, runs[a], runs[b], f);
          if (agree) EXPECT_EQ(label[a], label[b]) << to_string(local);
        }
      }
    }
  }
}

TEST(ModelcheckProperty, RelayPropertiesHoldOnRandomProtocols) {
  const auto sig = fixtures::relay_signature();
  gen::Rng rng(41);
  for (int iter = 0; iter < 10; ++iter) {
    const auto p = random_protocol_over(rng, sig);
    StateSpace space(p);
    for (int k = 0; k < 5; ++k) {
      const auto phi = gen::random_formula(rng, sig, 2);
      const auto psi = gen::random_formula(rng, sig, 2);
      const auto split = Formula::implies(
          Formula::box("m'", disj(Formula::box("m", phi), Formula::box("m''", psi))),
          disj(Formula::box("m'", Formula::box("m", phi)),
               Formula::box("m'", Formula::box("m''", psi))));
      const auto transfer = Formula::implies(Formula::box("m", Formula::box("m''", phi)),
                                        Formula::box("m'", Formula::box("m''", phi)));
      EXPECT_TRUE(is_valid(space, split).holds) << to_string(split);
      EXPECT_TRUE(is_valid(space, transfer).holds) << to_string(transfer);
    }
  }
}

}  // namespace
}  // namespace netepi
