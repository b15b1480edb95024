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

// Satisfaction of formulas at runs of a finite protocol.
//
// A StateSpace enumerates the runs once, partitions them by value on every
// edge, and labels formulas bottom-up. A box is evaluated once per class of
// its edge, and every labeled subformula is cached as a truth vector.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "netepi/axioms.hpp"
#include "netepi/error.hpp"
#include "netepi/formula.hpp"
#include "netepi/protocol.hpp"

namespace netepi {

class StateSpace {
 public:
  explicit StateSpace(const Protocol& p, std::uint64_t cap = kDefaultRunCap)
      : protocol_(&p), runs_(enumerate_runs(p, cap)) {
    const auto& g = p.graph();
    classes_.resize(g.edge_count());
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      std::vector<std::vector<std::uint32_t>> by_value(p.domain(e).size());
      for (std::uint32_t r = 0; r < runs_.size(); ++r) by_value[runs_[r][e]].push_back(r);
      for (auto& members : by_value) {
        if (members.empty()) continue;
        classes_[e].push_back(std::move(members));
      }
    }
  }

  const Protocol& protocol() const { return *protocol_; }
  const std::vector<Run>& runs() const { return runs_; }

  // Runs grouped by their value on the edge with the given index.
  const std::vector<std::vector<std::uint32_t>>& classes(std::size_t edge) const {
    return classes_[edge];
  }

  // Position of `run` in enumeration order, or nullopt if it is not a run.
  std::optional<std::size_t> index_of(const Run& run) const {
    auto it = std::lower_bound(runs_.begin(), runs_.end(), run);
    if (it == runs_.end() || *it != run) return std::nullopt;
    return static_cast<std::size_t>(it - runs_.begin());
  }

  // Truth value of `f` at every run, in enumeration order.
  const std::vector<char>& label(const Formula& f) {
    if (auto it = cache_.find(f); it != cache_.end()) return it->second;
    std::vector<char> out(runs_.size());
    switch (f.kind()) {
      case Formula::Kind::kFalsum:
        break;
      case Formula::Kind::kProp: {
        const auto& truth = protocol_->truth(f.name());
        const auto e = protocol_->graph().edge_index(protocol_->sig().home(f.name()));
        for (std::size_t r = 0; r < runs_.size(); ++r) out[r] = truth[runs_[r][e]];
        break;
      }
      case Formula::Kind::kImplies: {
        const auto& a = label(f.lhs());
        const auto& b = label(f.rhs());
        for (std::size_t r = 0; r < runs_.size(); ++r) out[r] = static_cast<char>(!a[r] || b[r]);
        break;
      }
      case Formula::Kind::kBox: {
        const auto e = protocol_->graph().edge_index(f.name());
        const auto& body = label(f.body());
        for (const auto& members : classes_[e]) {
          const bool all = std::all_of(members.begin(), members.end(),
                                       [&](std::uint32_t r) { return body[r] != 0; });
          for (auto r : members) out[r] = static_cast<char>(all);
        }
        break;
      }
    }
    return cache_.emplace(f, std::move(out)).first->second;
  }

  bool satisfies(std::size_t run_index, const Formula& f) { return label(f)[run_index] != 0; }

  bool satisfies(const Run& run, const Formula& f) {
    auto idx = index_of(run);
    if (!idx) throw Error(ErrorCode::kNotARun, "the given assignment is not a run of the protocol");
    return satisfies(*idx, f);
  }

  // Index of the first run falsifying `f`, if any.
  std::optional<std::size_t> first_counterexample(const Formula& f) {
    const auto& l = label(f);
    for (std::size_t r = 0; r < l.size(); ++r) {
      if (!l[r]) return r;
    }
    return std::nullopt;
  }

 private:
  const Protocol* protocol_;
  std::vector<Run> runs_;
  std::vector<std::vector<std::vector<std::uint32_t>>> classes_;
  std::unordered_map<Formula, std::vector<char>, FormulaHash> cache_;
};

inline bool satisfies(const Protocol& p, const Run& run, const Formula& f,
                      std::uint64_t cap = kDefaultRunCap) {
  if (!is_run(p, run)) throw Error(ErrorCode::kNotARun, "the given assignment is not a run");
  StateSpace space(p, cap);
  return space.satisfies(run, f);
}

// Validity over all runs; holds is false exactly when a counterexample exists.
struct Validity {
  bool holds = true;
  std::optional<Run> counterexample;

  explicit operator bool() const { return holds; }
};

inline Validity is_valid(StateSpace& space, const Formula& f) {
  if (auto r = space.first_counterexample(f)) return {false, space.runs()[*r]};
  return {};
}

inline Validity is_valid(const Protocol& p, const Formula& f, std::uint64_t cap = kDefaultRunCap) {
  StateSpace space(p, cap);
  return is_valid(space, f);
}

inline Validity check_axiom_soundness(StateSpace& space, const AxiomInstance& inst) {
  if (const auto* gw = std::get_if<GatewayInstance>(&inst)) {
    if (!gateway_side_conditions(space.protocol().sig(), *gw)) {
      throw Error(ErrorCode::kMalformedInstance, "gateway side conditions do not hold");
    }
  }
  return is_valid(space, instantiate(inst));
}

inline Validity check_axiom_soundness(const Protocol& p, const AxiomInstance& inst) {
  StateSpace space(p);
  return check_axiom_soundness(space, inst);
}

}  // namespace netepi
