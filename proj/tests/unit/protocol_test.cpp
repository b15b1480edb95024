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
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "netepi/fixtures.hpp"
#include "netepi/protocol.hpp"
#include "netepi/random.hpp"

namespace netepi {
namespace {

using Values = std::map<EdgeId, Value>;

Signature single_edge() {
  return Signature(Multigraph({"a", "b"}, {{"e", "a", "b"}}), {{"e", {"x"}}});
}

// All runs by filtering the full product through is_run.
std::vector<Run> runs_by_filtering(const Protocol& p) {
  const auto n = p.graph().edge_count();
  std::vector<Run> out;
  Run r(n, 0);
  while (true) {
    if (is_run(p, r)) out.push_back(r);
    std::size_t i = n;
    while (i > 0 && ++r[i - 1] == p.domain(i - 1).size()) r[--i] = 0;
    if (i == 0) break;
  }
  return out;
}

TEST(Protocol, RejectsMalformedInput) {
  const auto sig = single_edge();
  EXPECT_THROW(Protocol(sig, {{"e", {"0", "0"}}}, {}, {}), Error);
  EXPECT_THROW(Protocol(sig, {{"e", {"0"}}}, {{"a", {{{"e", "9"}}}}}, {}), Error);
  EXPECT_THROW(Protocol(sig, {{"e", {"0"}}}, {}, {{"x", {"9"}}}), Error);
  EXPECT_THROW(Protocol(sig, {{"e", {}}}, {}, {}), Error);
}

TEST(Protocol, CipherRunMembership) {
  const auto p1 = fixtures::p1_protocol();
  EXPECT_TRUE(is_run(p1, Values{{"m", "1"}, {"k", "0"}, {"c", "1"}, {"m'", "1"}}));
  EXPECT_FALSE(is_run(p1, Values{{"m", "1"}, {"k", "0"}, {"c", "0"}, {"m'", "1"}}));
  try {
    is_run(p1, Values{{"m", "7"}, {"k", "0"}, {"c", "1"}, {"m'", "1"}});
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::kDomainViolation);
  }
}

TEST(Protocol, PermissiveLocalsAcceptEverything) {
  Protocol p(single_edge(), {{"e", {"0", "1"}}}, {}, {});
  EXPECT_TRUE(is_run(p, Values{{"e", "0"}}));
  EXPECT_EQ(enumerate_runs(p).size(), 2u);
}

TEST(Protocol, Enumeration) {
  EXPECT_EQ(enumerate_runs(fixtures::p1_protocol()).size(), 4u);
  EXPECT_EQ(enumerate_runs(fixtures::p2_protocol()).size(), 6400u);
  Protocol dead(single_edge(), {{"e", {"0", "1"}}}, {{"a", {}}}, {});
  EXPECT_TRUE(enumerate_runs(dead).empty());
  try {
    enumerate_runs(fixtures::p2_protocol(), 1000);
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::kStateSpaceTooLarge);
  }
}

TEST(Protocol, RunEquality) {
  const auto p1 = fixtures::p1_protocol();
  const auto a = run_from_values(p1, {{"m", "1"}, {"k", "0"}, {"c", "1"}, {"m'", "1"}});
  const auto b = run_from_values(p1, {{"m", "1"}, {"k", "1"}, {"c", "0"}, {"m'", "1"}});
  EXPECT_TRUE(runs_equal_on(p1, a, a, "k"));
  EXPECT_TRUE(runs_equal_on(p1, a, b, "m"));
  EXPECT_FALSE(runs_equal_on(p1, a, b, "k"));
}

TEST(ProtocolProperty, EnumerationMatchesProductFiltering) {
  gen::Rng rng(23);
  for (int iter = 0; iter < 150; ++iter) {
    const auto g = gen::random_multigraph(rng, 4, 5, true);
    const auto sig = gen::random_signature(rng, g);
    Protocol p;
    try {
      p = random_protocol(sig, rng(), {3, 0.5});
    } catch (const Error& err) {
      ASSERT_EQ(err.code(), ErrorCode::kNoRunFound);
      continue;
    }
    ASSERT_LE(p.state_space_size(), 10000u);
    const auto runs = enumerate_runs(p);
    EXPECT_EQ(runs, runs_by_filtering(p));
    EXPECT_FALSE(runs.empty());
    for (const auto& e : g.edges()) {
      for (const auto& r : runs) {
        for (const auto& s : runs) {
          EXPECT_EQ(runs_equal_on(p, r, s, e), runs_equal_on(p, s, r, e));
        }
      }
    }
  }
}

TEST(RandomProtocol, DeterministicAndFullAtDensityOne) {
  const auto sig = fixtures::relay_signature();
  const auto a = random_protocol(sig, 42);
  const auto b = random_protocol(sig, 42);
  EXPECT_EQ(a.domains_by_name(), b.domains_by_name());
  EXPECT_EQ(a.locals_by_name(), b.locals_by_name());
  EXPECT_EQ(a.valuation_by_name(), b.valuation_by_name());

  const auto full = random_protocol(sig, 9, {3, 1.0});
  EXPECT_EQ(enumerate_runs(full).size(), full.state_space_size());
  EXPECT_THROW(random_protocol(sig, 1, {3, 0.0}), Error);
}

}  // namespace
}  // namespace netepi
