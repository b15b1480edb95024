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

// Randomized soundness checking of the axiom schemas against finite protocols.

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "netepi/axioms.hpp"
#include "netepi/error.hpp"
#include "netepi/modelcheck.hpp"
#include "netepi/protocol.hpp"
#include "netepi/random.hpp"

namespace netepi {

struct SoundnessConfig {
  std::uint64_t seed = 1;
  std::size_t protocols = 200;
  std::size_t instances_per_schema = 10;
  std::size_t max_vertices = 4;
  std::size_t max_edges = 5;
  std::size_t formula_depth = 3;
  RandomProtocolBounds bounds{3, 0.6};
};

struct SoundnessCounterexample {
  std::uint64_t protocol_seed = 0;
  std::string schema;
  std::string formula;
  std::map<EdgeId, Value> run;
};

struct SoundnessReport {
  std::size_t protocols = 0;
  std::map<std::string, std::size_t> instances;  // keyed by schema name
  std::vector<SoundnessCounterexample> counterexamples;

  bool sound() const { return counterexamples.empty(); }
};

// Random Gateway instance: (g, A, B) triples are drawn until g is a gateway
// with e in A. Falls back to the always-valid triple (e, {e}, {e}).
inline GatewayInstance random_gateway_instance(gen::Rng& rng, const Signature& sig,
                                               std::size_t depth) {
  const auto& edges = sig.graph().edges();
  GatewayInstance inst;
  bool found = false;
  for (int attempt = 0; attempt < 50 && !found; ++attempt) {
    inst.a = gen::random_subset(rng, edges);
    inst.b = gen::random_subset(rng, edges);
    inst.g = edges[gen::uniform(rng, 0, edges.size() - 1)];
    std::vector<EdgeId> a(inst.a.begin(), inst.a.end());
    inst.e = a[gen::uniform(rng, 0, a.size() - 1)];
    found = is_gateway(sig.graph(), inst.g, inst.a, inst.b);
  }
  if (!found) {
    inst.e = inst.g = edges[gen::uniform(rng, 0, edges.size() - 1)];
    inst.a = inst.b = {inst.e};
  }
  inst.phi = gen::random_formula(rng, sig, depth, &inst.a);
  inst.psi = gen::random_formula(rng, sig, depth, &inst.b);
  return inst;
}

inline std::vector<AxiomInstance> random_instances(gen::Rng& rng, const Signature& sig,
                                                   std::size_t per_schema, std::size_t depth) {
  const auto& edges = sig.graph().edges();
  auto edge = [&] { return edges[gen::uniform(rng, 0, edges.size() - 1)]; };
  auto formula = [&] { return gen::random_formula(rng, sig, depth); };
  std::vector<AxiomInstance> out;
  for (std::size_t i = 0; i < per_schema; ++i) {
    out.push_back(TruthInstance{edge(), formula()});
    out.push_back(PositiveIntrospectionInstance{edge(), formula()});
    out.push_back(NegativeIntrospectionInstance{edge(), formula()});
    out.push_back(DistributivityInstance{edge(), formula(), formula()});
    out.push_back(random_gateway_instance(rng, sig, depth));
  }
  return out;
}

// Protocol number i uses seed `config.seed + i`. Signatures whose random
// protocol has no run within the retry budget are redrawn from a shifted
// seed.
inline SoundnessReport fuzz_soundness(const SoundnessConfig& config) {
  SoundnessReport report;
  for (std::size_t i = 0; i < config.protocols; ++i) {
    std::optional<Protocol> protocol;
    std::uint64_t seed = config.seed + i;
    gen::Rng rng(seed);
    for (std::uint64_t shift = 0; !protocol; ++shift) {
      rng.seed(seed + (shift << 32));
      auto g = gen::random_multigraph(rng, config.max_vertices, config.max_edges, true);
      auto sig = gen::random_signature(rng, g);
      try {
        protocol.emplace(random_protocol(sig, rng(), config.bounds));
      } catch (const Error& err) {
        if (err.code() != ErrorCode::kNoRunFound) throw;
      }
    }
    ++report.protocols;
    StateSpace space(*protocol);
    const auto instances =
        random_instances(rng, protocol->sig(), config.instances_per_schema, config.formula_depth);
    for (const auto& inst : instances) {
      const auto name = schema_name(inst);
      ++report.instances[name];
      const auto v = check_axiom_soundness(space, inst);
      if (!v.holds) {
        report.counterexamples.push_back(
            {seed, name, to_string(instantiate(inst)), run_values(*protocol, *v.counterexample)});
      }
    }
  }
  return report;
}

}  // namespace netepi
