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

// Finite protocols: per-edge value domains, per-vertex local conditions given
// as explicit relations, a valuation, and the runs they admit.

#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "netepi/error.hpp"
#include "netepi/formula.hpp"
#include "netepi/multigraph.hpp"

namespace netepi {

using Value = std::string;

// Values of a run as domain indices, aligned with the graph's sorted edges.
using Run = std::vector<std::uint32_t>;

// A tuple over Inc(v) as domain indices, aligned with incident(v).
using LocalTuple = std::vector<std::uint32_t>;

inline constexpr std::uint64_t kDefaultRunCap = std::uint64_t{1} << 22;

class Protocol {
 public:
  Protocol() = default;

  // `locals` omits vertices whose condition is the full product. Tuples and
  // valuation entries are given by value name and checked against domains.
  Protocol(Signature sig, const std::map<EdgeId, std::vector<Value>>& domains,
           const std::map<VertexId, std::vector<std::map<EdgeId, Value>>>& locals,
           const std::map<PropositionId, std::set<Value>>& valuation)
      : sig_(std::move(sig)) {
    const auto& g = sig_.graph();
    domains_.resize(g.edge_count());
    for (const auto& [edge, values] : domains) {
      auto& dom = domains_[g.edge_index(edge)];
      std::set<Value> seen;
      for (const auto& v : values) {
        if (!seen.insert(v).second) {
          throw Error(ErrorCode::kDuplicateId,
                      "value '" + v + "' repeated in domain of edge '" + edge + "'");
        }
      }
      dom = values;
    }
    for (std::size_t i = 0; i < g.edge_count(); ++i) {
      if (domains_[i].empty()) {
        throw Error(ErrorCode::kDomainViolation, "edge '" + g.edge(i) + "' has an empty domain");
      }
    }

    incident_.resize(g.vertex_count());
    for (std::size_t v = 0; v < g.vertex_count(); ++v) incident_[v] = g.incident(v);

    locals_.resize(g.vertex_count());
    for (const auto& [vertex, tuples] : locals) {
      const auto v = g.vertex_index(vertex);
      std::set<LocalTuple> rel;
      for (const auto& tuple : tuples) {
        if (tuple.size() != incident_[v].size()) {
          throw Error(ErrorCode::kDomainViolation,
                      "local tuple at '" + vertex + "' must assign exactly the incident edges");
        }
        LocalTuple t;
        for (auto e : incident_[v]) {
          auto it = tuple.find(g.edge(e));
          if (it == tuple.end()) {
            throw Error(ErrorCode::kDomainViolation, "local tuple at '" + vertex +
                                                         "' is missing edge '" + g.edge(e) + "'");
          }
          t.push_back(value_index(e, it->second));
        }
        rel.insert(std::move(t));
      }
      locals_[v] = std::move(rel);
    }

    for (const auto& [prop, values] : valuation) {
      const auto e = g.edge_index(sig_.home(prop));
      auto& mask = truth_[prop];
      mask.assign(domains_[e].size(), 0);
      for (const auto& val : values) mask[value_index(e, val)] = 1;
    }
    for (const auto& [prop, home] : sig_.homes()) {
      truth_.try_emplace(prop, domains_[g.edge_index(home)].size(), 0);
    }
  }

  const Signature& sig() const { return sig_; }
  const Multigraph& graph() const { return sig_.graph(); }

  const std::vector<Value>& domain(std::size_t edge) const { return domains_[edge]; }
  const std::vector<Value>& domain(const EdgeId& edge) const {
    return domains_[graph().edge_index(edge)];
  }

  // Edge indices of Inc(v), sorted.
  const std::vector<std::size_t>& incident(std::size_t v) const { return incident_[v]; }

  // nullopt when the vertex admits every tuple.
  const std::optional<std::set<LocalTuple>>& local(std::size_t v) const { return locals_[v]; }

  // Per-value membership of the proposition's valuation on its home edge.
  const std::vector<char>& truth(const PropositionId& p) const {
    auto it = truth_.find(p);
    if (it == truth_.end()) {
      throw Error(ErrorCode::kUnknownProposition, "unknown proposition '" + p + "'");
    }
    return it->second;
  }

  std::uint32_t value_index(std::size_t edge, const Value& v) const {
    const auto& dom = domains_[edge];
    for (std::size_t i = 0; i < dom.size(); ++i) {
      if (dom[i] == v) return static_cast<std::uint32_t>(i);
    }
    throw Error(ErrorCode::kDomainViolation,
                "value '" + v + "' is not in the domain of edge '" + graph().edge(edge) + "'");
  }

  // Product of all domain sizes, saturated at the maximum representable value.
  std::uint64_t state_space_size() const {
    std::uint64_t n = 1;
    for (const auto& d : domains_) {
      if (n > std::numeric_limits<std::uint64_t>::max() / d.size()) {
        return std::numeric_limits<std::uint64_t>::max();
      }
      n *= d.size();
    }
    return n;
  }

  bool local_ok(std::size_t v, const Run& run) const {
    if (!locals_[v]) return true;
    LocalTuple t;
    t.reserve(incident_[v].size());
    for (auto e : incident_[v]) t.push_back(run[e]);
    return locals_[v]->contains(t);
  }

  // Name-level accessors, used for serialization.
  std::map<EdgeId, std::vector<Value>> domains_by_name() const {
    std::map<EdgeId, std::vector<Value>> out;
    for (std::size_t e = 0; e < domains_.size(); ++e) out[graph().edge(e)] = domains_[e];
    return out;
  }
  std::map<VertexId, std::vector<std::map<EdgeId, Value>>> locals_by_name() const {
    std::map<VertexId, std::vector<std::map<EdgeId, Value>>> out;
    for (std::size_t v = 0; v < locals_.size(); ++v) {
      if (!locals_[v]) continue;
      auto& list = out[graph().vertex(v)];
      for (const auto& t : *locals_[v]) {
        std::map<EdgeId, Value> tuple;
        for (std::size_t i = 0; i < t.size(); ++i) {
          tuple[graph().edge(incident_[v][i])] = domains_[incident_[v][i]][t[i]];
        }
        list.push_back(std::move(tuple));
      }
    }
    return out;
  }
  std::map<PropositionId, std::set<Value>> valuation_by_name() const {
    std::map<PropositionId, std::set<Value>> out;
    for (const auto& [prop, mask] : truth_) {
      const auto e = graph().edge_index(sig_.home(prop));
      auto& vals = out[prop];
      for (std::size_t i = 0; i < mask.size(); ++i) {
        if (mask[i]) vals.insert(domains_[e][i]);
      }
    }
    return out;
  }

 private:
  Signature sig_;
  std::vector<std::vector<Value>> domains_;
  std::vector<std::vector<std::size_t>> incident_;
  std::vector<std::optional<std::set<LocalTuple>>> locals_;
  std::map<PropositionId, std::vector<char>> truth_;
};

// Name-level run conversions.
inline Run run_from_values(const Protocol& p, const std::map<EdgeId, Value>& values) {
  const auto& g = p.graph();
  Run run(g.edge_count());
  for (const auto& [edge, value] : values) g.edge_index(edge);
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    auto it = values.find(g.edge(e));
    if (it == values.end()) {
      throw Error(ErrorCode::kDomainViolation, "no value given for edge '" + g.edge(e) + "'");
    }
    run[e] = p.value_index(e, it->second);
  }
  return run;
}

inline std::map<EdgeId, Value> run_values(const Protocol& p, const Run& run) {
  std::map<EdgeId, Value> out;
  for (std::size_t e = 0; e < run.size(); ++e) out[p.graph().edge(e)] = p.domain(e)[run[e]];
  return out;
}

inline bool is_run(const Protocol& p, const Run& run) {
  if (run.size() != p.graph().edge_count()) return false;
  for (std::size_t e = 0; e < run.size(); ++e) {
    if (run[e] >= p.domain(e).size()) {
      throw Error(ErrorCode::kDomainViolation,
                  "value index out of range on edge '" + p.graph().edge(e) + "'");
    }
  }
  for (std::size_t v = 0; v < p.graph().vertex_count(); ++v) {
    if (!p.local_ok(v, run)) return false;
  }
  return true;
}

inline bool is_run(const Protocol& p, const std::map<EdgeId, Value>& values) {
  return is_run(p, run_from_values(p, values));
}

inline bool runs_equal_on(const Protocol& p, const Run& a, const Run& b, const EdgeId& e) {
  const auto i = p.graph().edge_index(e);
  return a[i] == b[i];
}

// All runs in lexicographic order of domain indices over sorted edges.
inline std::vector<Run> enumerate_runs(const Protocol& p, std::uint64_t cap = kDefaultRunCap) {
  const auto& g = p.graph();
  const auto total = p.state_space_size();
  if (total > cap) {
    throw Error(ErrorCode::kStateSpaceTooLarge, "state space of " + std::to_string(total) +
                                                    " tuples exceeds the cap of " +
                                                    std::to_string(cap));
  }
  // Each vertex is checked once its last incident edge is assigned.
  std::vector<std::vector<std::size_t>> ready(g.edge_count());
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    const auto& inc = p.incident(v);
    if (inc.empty()) {
      if (p.local(v) && !p.local(v)->contains(LocalTuple{})) return {};
      continue;
    }
    ready[inc.back()].push_back(v);
  }

  std::vector<Run> out;
  const auto n = g.edge_count();
  if (n == 0) {
    out.emplace_back();
    return out;
  }
  Run run(n, 0);
  std::size_t depth = 0;
  // Iterative DFS: run[depth] is the candidate at the current level.
  while (true) {
    bool ok = true;
    for (auto v : ready[depth]) {
      if (!p.local_ok(v, run)) {
        ok = false;
        break;
      }
    }
    if (ok && depth + 1 == n) out.push_back(run);
    if (ok && depth + 1 < n) {
      ++depth;
      run[depth] = 0;
      continue;
    }
    // Advance to the next candidate, backtracking past exhausted levels.
    while (true) {
      if (++run[depth] < p.domain(depth).size()) break;
      if (depth == 0) return out;
      --depth;
    }
  }
}

struct RandomProtocolBounds {
  std::size_t max_domain = 3;
  double density = 0.5;
};

// Domains "0".."n-1" with n uniform in [1, max_domain]; each local tuple kept
// with probability `density`; each value in each proposition's extension with
// probability 1/2. Locals are redrawn until some run exists.
inline Protocol random_protocol(const Signature& sig, std::uint64_t seed,
                                RandomProtocolBounds bounds = {}) {
  if (bounds.max_domain == 0 || !(bounds.density > 0.0 && bounds.density <= 1.0)) {
    throw Error(ErrorCode::kInvalidInput, "bounds must be positive with density in (0, 1]");
  }
  std::mt19937_64 rng(seed);
  const auto& g = sig.graph();
  std::map<EdgeId, std::vector<Value>> domains;
  std::uniform_int_distribution<std::size_t> size_dist(1, bounds.max_domain);
  for (const auto& e : g.edges()) {
    const auto n = size_dist(rng);
    auto& dom = domains[e];
    for (std::size_t i = 0; i < n; ++i) dom.push_back(std::to_string(i));
  }
  std::bernoulli_distribution coin(0.5);
  std::map<PropositionId, std::set<Value>> valuation;
  for (const auto& [prop, home] : sig.homes()) {
    auto& vals = valuation[prop];
    for (const auto& v : domains[home]) {
      if (coin(rng)) vals.insert(v);
    }
  }

  std::bernoulli_distribution keep(bounds.density);
  for (int attempt = 0; attempt < 100; ++attempt) {
    std::map<VertexId, std::vector<std::map<EdgeId, Value>>> locals;
    for (std::size_t vi = 0; vi < g.vertex_count(); ++vi) {
      std::vector<EdgeId> inc;
      for (auto e : g.incident(vi)) inc.push_back(g.edge(e));
      auto& list = locals[g.vertex(vi)];
      std::vector<std::size_t> idx(inc.size(), 0);
      // Odometer over the product of incident domains.
      while (true) {
        if (keep(rng)) {
          std::map<EdgeId, Value> t;
          for (std::size_t i = 0; i < inc.size(); ++i) t[inc[i]] = domains[inc[i]][idx[i]];
          list.push_back(std::move(t));
        }
        std::size_t i = 0;
        while (i < inc.size() && ++idx[i] == domains[inc[i]].size()) idx[i++] = 0;
        if (i == inc.size()) break;
      }
    }
    Protocol p(sig, domains, locals, valuation);
    if (!enumerate_runs(p).empty()) return p;
  }
  throw Error(ErrorCode::kNoRunFound, "no protocol with a run after 100 attempts");
}

}  // namespace netepi
