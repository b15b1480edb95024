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

// Axiom schemas as instance builders and syntactic matchers.

#pragma once

#include <string>
#include <utility>
#include <variant>

#include "netepi/formula.hpp"
#include "netepi/multigraph.hpp"

namespace netepi {

// [e]p -> p
inline Formula truth_axiom(const EdgeId& e, const Formula& p) {
  return Formula::implies(Formula::box(e, p), p);
}

// [e]p -> [e][e]p
inline Formula positive_introspection_axiom(const EdgeId& e, const Formula& p) {
  return Formula::implies(Formula::box(e, p), Formula::box(e, Formula::box(e, p)));
}

// ~[e]p -> [e]~[e]p
inline Formula negative_introspection_axiom(const EdgeId& e, const Formula& p) {
  return Formula::implies(neg(Formula::box(e, p)), Formula::box(e, neg(Formula::box(e, p))));
}

// [e](p -> q) -> ([e]p -> [e]q)
inline Formula distributivity_axiom(const EdgeId& e, const Formula& p, const Formula& q) {
  return Formula::implies(Formula::box(e, Formula::implies(p, q)),
                          Formula::implies(Formula::box(e, p), Formula::box(e, q)));
}

// [e](p -> q) -> (p -> [g]q)
inline Formula gateway_axiom(const EdgeId& e, const EdgeId& g, const Formula& p, const Formula& q) {
  return Formula::implies(Formula::box(e, Formula::implies(p, q)),
                          Formula::implies(p, Formula::box(g, q)));
}

struct TruthInstance {
  EdgeId e;
  Formula phi;
};
struct PositiveIntrospectionInstance {
  EdgeId e;
  Formula phi;
};
struct NegativeIntrospectionInstance {
  EdgeId e;
  Formula phi;
};
struct DistributivityInstance {
  EdgeId e;
  Formula phi;
  Formula psi;
};
struct GatewayInstance {
  EdgeId e;
  EdgeId g;
  EdgeSet a;
  EdgeSet b;
  Formula phi;
  Formula psi;
};

using AxiomInstance = std::variant<TruthInstance, PositiveIntrospectionInstance,
                                   NegativeIntrospectionInstance, DistributivityInstance,
                                   GatewayInstance>;

inline std::string schema_name(const AxiomInstance& inst) {
  switch (inst.index()) {
    case 0: return "Truth";
    case 1: return "PositiveIntrospection";
    case 2: return "NegativeIntrospection";
    case 3: return "Distributivity";
    default: return "Gateway";
  }
}

inline Formula instantiate(const AxiomInstance& inst) {
  struct {
    Formula operator()(const TruthInstance& i) const { return truth_axiom(i.e, i.phi); }
    Formula operator()(const PositiveIntrospectionInstance& i) const {
      return positive_introspection_axiom(i.e, i.phi);
    }
    Formula operator()(const NegativeIntrospectionInstance& i) const {
      return negative_introspection_axiom(i.e, i.phi);
    }
    Formula operator()(const DistributivityInstance& i) const {
      return distributivity_axiom(i.e, i.phi, i.psi);
    }
    Formula operator()(const GatewayInstance& i) const {
      return gateway_axiom(i.e, i.g, i.phi, i.psi);
    }
  } build;
  return std::visit(build, inst);
}

// Side conditions of the Gateway schema: e in A, phi in the A-fragment, psi
// in the B-fragment, and g a gateway between A and B.
inline bool gateway_side_conditions(const Signature& sig, const GatewayInstance& i) {
  return i.a.contains(i.e) && in_fragment(sig, i.phi, i.a) && in_fragment(sig, i.psi, i.b) &&
         is_gateway(sig.graph(), i.g, i.a, i.b);
}

// Matchers. Each recovers the schema's formula parameters from `f` when `f`
// has the schema's shape for the given edge.

inline bool match_truth(const Formula& f, const EdgeId& e) {
  return f.is_implies() && f.lhs().is_box() && f.lhs().name() == e && f.lhs().body() == f.rhs();
}

inline bool match_positive_introspection(const Formula& f, const EdgeId& e) {
  if (!f.is_implies() || !f.lhs().is_box() || f.lhs().name() != e) return false;
  return f.rhs() == Formula::box(e, f.lhs());
}

inline bool match_negative_introspection(const Formula& f, const EdgeId& e) {
  if (!f.is_implies() || !is_negation(f.lhs())) return false;
  const auto& boxed = f.lhs().lhs();
  if (!boxed.is_box() || boxed.name() != e) return false;
  return f.rhs() == Formula::box(e, f.lhs());
}

inline bool match_distributivity(const Formula& f, const EdgeId& e) {
  if (!f.is_implies()) return false;
  const auto& l = f.lhs();
  if (!l.is_box() || l.name() != e || !l.body().is_implies()) return false;
  return f.rhs() ==
         Formula::implies(Formula::box(e, l.body().lhs()), Formula::box(e, l.body().rhs()));
}

// Shape only: [e](p -> q) -> (p -> [g]q). Returns p and q on success.
inline bool match_gateway_shape(const Formula& f, const EdgeId& e, const EdgeId& g, Formula* p,
                                Formula* q) {
  if (!f.is_implies()) return false;
  const auto& l = f.lhs();
  if (!l.is_box() || l.name() != e || !l.body().is_implies()) return false;
  const auto& r = f.rhs();
  if (!r.is_implies() || !r.rhs().is_box() || r.rhs().name() != g) return false;
  if (!(r.lhs() == l.body().lhs()) || !(r.rhs().body() == l.body().rhs())) return false;
  if (p) *p = l.body().lhs();
  if (q) *q = l.body().rhs();
  return true;
}

// Shape plus all side conditions.
inline bool match_gateway(const Signature& sig, const Formula& f, const EdgeId& e, const EdgeId& g,
                          const EdgeSet& a, const EdgeSet& b) {
  Formula p, q;
  if (!match_gateway_shape(f, e, g, &p, &q)) return false;
  return gateway_side_conditions(sig, GatewayInstance{e, g, a, b, p, q});
}

}  // namespace netepi
