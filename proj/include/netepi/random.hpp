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

// Seeded generators for graphs, signatures, formulas and knowledge profiles.

#pragma once

#include <cstddef>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "netepi/canonical_flow.hpp"
#include "netepi/formula.hpp"
#include "netepi/multigraph.hpp"

namespace netepi::gen {

using Rng = std::mt19937_64;

inline std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

// Connected multigraph with at least one edge, at most `max_vertices`
// vertices and at most `max_edges` edges (more only if a spanning tree needs
// them). A random spanning tree comes first; the remaining edges join
// uniform vertex pairs, so parallel edges arise naturally. Loops appear only
// when allowed.
inline Multigraph random_multigraph(Rng& rng, std::size_t max_vertices, std::size_t max_edges,
                                    bool allow_loops = false) {
  const std::size_t min_v = allow_loops ? 1 : 2;
  const auto nv = uniform(rng, min_v, std::max(min_v, std::min(max_vertices, max_edges + 1)));
  const auto ne = uniform(rng, std::max<std::size_t>(nv - 1, 1), std::max(max_edges, nv - 1));
  std::vector<VertexId> vs;
  for (std::size_t i = 0; i < nv; ++i) vs.push_back("v" + std::to_string(i));
  std::vector<EdgeSpec> es;
  auto name = [&] { return "e" + std::to_string(es.size()); };
  for (std::size_t i = 1; i < nv; ++i) es.push_back({name(), vs[uniform(rng, 0, i - 1)], vs[i]});
  while (es.size() < ne) {
    const auto a = uniform(rng, 0, nv - 1);
    const auto b = uniform(rng, 0, nv - 1);
    if (a == b && !allow_loops) continue;
    es.push_back({name(), vs[a], vs[b]});
  }
  return Multigraph(vs, es);
}

// Each edge e gets between 1 and `max_props` propositions named e_0, e_1, ...
inline Signature random_signature(Rng& rng, const Multigraph& g, std::size_t max_props = 2) {
  std::map<EdgeId, std::set<PropositionId>> props;
  for (const auto& e : g.edges()) {
    const auto n = uniform(rng, 1, max_props);
    for (std::size_t i = 0; i < n; ++i) props[e].insert(e + "_" + std::to_string(i));
  }
  return Signature(g, props);
}

// Random formula of modal/implicational depth at most `depth`. When
// `fragment` is given, the result lies in that fragment: outermost boxes
// carry edges from it and unboxed propositions are homed in it. Box bodies
// are unrestricted.
inline Formula random_formula(Rng& rng, const Signature& sig, std::size_t depth,
                              const EdgeSet* fragment = nullptr) {
  std::vector<EdgeId> edges;
  if (fragment) {
    edges.assign(fragment->begin(), fragment->end());
  } else {
    edges = sig.graph().edges();
  }
  auto leaf = [&]() -> Formula {
    std::vector<PropositionId> props;
    for (const auto& e : edges) {
      for (const auto& p : sig.props().at(e)) props.push_back(p);
    }
    if (props.empty() || uniform(rng, 0, 9) == 0) return Formula::falsum();
    return Formula::prop(props[uniform(rng, 0, props.size() - 1)]);
  };
  if (edges.empty()) return coin(rng) ? Formula::falsum() : top();
  if (depth == 0) return leaf();
  switch (uniform(rng, 0, 5)) {
    case 0: return leaf();
    case 1:
    case 2:
      return Formula::implies(random_formula(rng, sig, depth - 1, fragment),
                              random_formula(rng, sig, depth - 1, fragment));
    case 3: return neg(random_formula(rng, sig, depth - 1, fragment));
    default:
      return Formula::box(edges[uniform(rng, 0, edges.size() - 1)],
                          random_formula(rng, sig, depth - 1, nullptr));
  }
}

// Nonempty random subset of `from`.
inline EdgeSet random_subset(Rng& rng, const std::vector<EdgeId>& from, double p = 0.4) {
  EdgeSet out;
  for (const auto& e : from) {
    if (coin(rng, p)) out.insert(e);
  }
  if (out.empty() && !from.empty()) out.insert(from[uniform(rng, 0, from.size() - 1)]);
  return out;
}

// Knowledge profile satisfying the monotonicity and split invariants. Each
// profile draws its own sink rate from {0, 0.2, 0.4}, so sink-free profiles
// are common.
inline KnowledgeProfile random_profile(Rng& rng, const Multigraph& g) {
  KnowledgeProfile p(g);
  static constexpr double kSinkRates[] = {0.0, 0.2, 0.4};
  const double sink_rate = kSinkRates[uniform(rng, 0, 2)];
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    p.sink[e] = coin(rng, sink_rate);
    p.knows_delta[e] = coin(rng, 0.5);
    if (p.knows_delta[e]) {
      p.knows_side[e] = {coin(rng, 0.5), coin(rng, 0.5)};
      if (!p.sink[e] && !p.knows_side[e][0] && !p.knows_side[e][1]) {
        p.knows_side[e][uniform(rng, 0, 1)] = true;
      }
    }
  }
  return p;
}

}  // namespace netepi::gen
