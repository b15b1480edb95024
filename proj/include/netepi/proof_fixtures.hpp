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

// Fully elaborated derivations of the standard results about gateways,
// parameterized by the formulas they quantify over.

#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "netepi/axioms.hpp"
#include "netepi/error.hpp"
#include "netepi/fixtures.hpp"
#include "netepi/formula.hpp"
#include "netepi/proofcheck.hpp"

namespace netepi {

// Appends lines to a script and returns their zero-based indices.
class ProofBuilder {
 public:
  explicit ProofBuilder(Signature sig, ProofMode mode = ProofMode::kTheorem) {
    script_.sig = std::move(sig);
    script_.mode = mode;
  }

  Formula at(std::size_t i) const { return script_.lines.at(i).formula; }

  std::size_t add(Formula f, Justification j) {
    script_.lines.push_back({std::move(f), std::move(j)});
    return script_.lines.size() - 1;
  }

  std::size_t hypothesis(Formula f) {
    script_.hypotheses.push_back(f);
    return add(std::move(f), just::Hypothesis{script_.hypotheses.size() - 1});
  }
  std::size_t lemma(ProofScript lemma) {
    script_.lemmas.push_back(std::move(lemma));
    const auto k = script_.lemmas.size() - 1;
    return add(script_.lemmas[k].conclusion(), just::Theorem{k});
  }

  std::size_t tautology(Formula f) { return add(std::move(f), just::Tautology{}); }
  std::size_t truth(const EdgeId& e, const Formula& p) {
    return add(truth_axiom(e, p), just::Truth{e});
  }
  std::size_t positive_introspection(const EdgeId& e, const Formula& p) {
    return add(positive_introspection_axiom(e, p), just::PosIntrospection{e});
  }
  std::size_t negative_introspection(const EdgeId& e, const Formula& p) {
    return add(negative_introspection_axiom(e, p), just::NegIntrospection{e});
  }
  std::size_t distributivity(const EdgeId& e, const Formula& p, const Formula& q) {
    return add(distributivity_axiom(e, p, q), just::Distributivity{e});
  }
  std::size_t gateway(const EdgeId& e, const EdgeId& g, const EdgeSet& a, const EdgeSet& b,
                      const Formula& p, const Formula& q) {
    return add(gateway_axiom(e, g, p, q), just::Gateway{e, g, a, b});
  }
  std::size_t necessitation(const EdgeId& e, std::size_t i) {
    return add(Formula::box(e, at(i)), just::Necessitation{e, i});
  }

  // From i: x and j: x -> y, derive y.
  std::size_t mp(std::size_t i, std::size_t j) {
    const auto& major = at(j);
    if (!major.is_implies() || !(major.lhs() == at(i))) {
      throw Error(ErrorCode::kInvalidInput, "modus ponens premises do not fit");
    }
    return add(major.rhs(), just::ModusPonens{i, j});
  }

  // From i: x -> y, derive [e]x -> [e]y.
  std::size_t box_monotone(const EdgeId& e, std::size_t i) {
    const auto nec = necessitation(e, i);
    const auto dist = distributivity(e, at(i).lhs(), at(i).rhs());
    return mp(nec, dist);
  }

  // From i: x -> y and j: y -> z, derive x -> z.
  std::size_t syllogism(std::size_t i, std::size_t j) {
    const auto& xy = at(i);
    const auto& yz = at(j);
    const auto t = tautology(Formula::implies(
        xy, Formula::implies(yz, Formula::implies(xy.lhs(), yz.rhs()))));
    return mp(j, mp(i, t));
  }

  // From i: f, derive g for a tautology f -> g.
  std::size_t rewrite(std::size_t i, const Formula& g) {
    return mp(i, tautology(Formula::implies(at(i), g)));
  }

  ProofScript build() && { return std::move(script_); }
  const ProofScript& script() const { return script_; }

 private:
  ProofScript script_;
};

namespace detail {

inline void require_gateway(const Signature& sig, const EdgeId& g, const EdgeSet& a,
                            const EdgeSet& b) {
  bool ok = false;
  try {
    ok = is_gateway(sig.graph(), g, a, b);
  } catch (const Error& err) {
    throw Error(ErrorCode::kTopologyMismatch, err.what());
  }
  if (!ok) {
    throw Error(ErrorCode::kTopologyMismatch, "edge '" + g + "' is not a gateway between the sets");
  }
}

inline void require_fragment(const Signature& sig, const Formula& f, const EdgeSet& t) {
  if (!in_fragment(sig, f, t)) {
    throw Error(ErrorCode::kInvalidInput, to_string(f) + " is outside the required fragment");
  }
}

}  // namespace detail

// |- [a]([b]phi | [c]phi) -> [b]phi, where b is a gateway between {a, b}
// and {c}.
inline ProofScript example_knowledge_of_disjunction(const Signature& sig, const EdgeId& a,
                                                    const EdgeId& b, const EdgeId& c,
                                                    const Formula& phi) {
  detail::require_gateway(sig, b, {a, b}, {c});
  ProofBuilder pb(sig);
  const auto bphi = Formula::box(b, phi);
  const auto cphi = Formula::box(c, phi);
  const auto not_bphi = neg(bphi);

  const auto t1 = pb.truth(c, phi);
  const auto qr = pb.box_monotone(b, t1);  // [b][c]phi -> [b]phi
  const auto gw = pb.gateway(a, b, {a, b}, {c}, not_bphi, cphi);
  const auto p = pb.at(gw).lhs();
  // (Q -> R) -> ((P -> (N -> Q)) -> (P -> (N -> R)))
  const auto lift = pb.tautology(Formula::implies(
      pb.at(qr), Formula::implies(pb.at(gw), Formula::implies(
                                                 p, Formula::implies(not_bphi, bphi)))));
  const auto pnr = pb.mp(gw, pb.mp(qr, lift));
  pb.rewrite(pnr, Formula::implies(p, bphi));
  return std::move(pb).build();
}

// |- [a][e][c]phi -> [b][d]phi on the chain a-b-c-d-e, using that d is a
// gateway between {e} and {c} and b a gateway between {a} and {d}.
inline ProofScript example_chain_relay(const Signature& sig, const EdgeId& a, const EdgeId& b,
                                       const EdgeId& c, const EdgeId& d, const EdgeId& e,
                                       const Formula& phi) {
  detail::require_gateway(sig, d, {e}, {c});
  detail::require_gateway(sig, b, {a}, {d});
  ProofBuilder pb(sig);
  const auto t = top();
  const auto cphi = Formula::box(c, phi);
  const auto dphi = Formula::box(d, phi);

  const auto dc = pb.box_monotone(d, pb.truth(c, phi));  // [d][c]phi -> [d]phi
  const auto ec = pb.box_monotone(
      e, pb.tautology(Formula::implies(cphi, Formula::implies(t, cphi))));
  const auto ad = pb.box_monotone(
      a, pb.tautology(Formula::implies(dphi, Formula::implies(t, dphi))));
  const auto gw_d = pb.gateway(e, d, {e}, {c}, t, cphi);
  const auto ec_top = pb.syllogism(ec, gw_d);  // [e][c]phi -> (T -> [d][c]phi)
  const auto ec_strip = pb.rewrite(
      ec_top, Formula::implies(Formula::box(e, cphi), Formula::box(d, cphi)));
  const auto ed = pb.syllogism(ec_strip, dc);  // [e][c]phi -> [d]phi
  const auto ec2 = pb.box_monotone(a, ed);     // [a][e][c]phi -> [a][d]phi
  const auto gw_b = pb.gateway(a, b, {a}, {d}, t, dphi);
  const auto chain = pb.syllogism(pb.syllogism(ec2, ad), gw_b);
  pb.rewrite(chain, Formula::implies(pb.at(ec2).lhs(), Formula::box(b, dphi)));
  return std::move(pb).build();
}

// |- [m][m'']phi -> [m'][m'']phi where m' is a gateway between {m} and
// {m''}.
inline ProofScript example_gateway_relay(const Signature& sig, const EdgeId& m, const EdgeId& mp,
                                         const EdgeId& mpp, const Formula& phi) {
  detail::require_gateway(sig, mp, {m}, {mpp});
  ProofBuilder pb(sig);
  const auto t = top();
  const auto x = Formula::box(mpp, phi);
  const auto lifted =
      pb.box_monotone(m, pb.tautology(Formula::implies(x, Formula::implies(t, x))));
  const auto gw = pb.gateway(m, mp, {m}, {mpp}, t, x);
  const auto chained = pb.syllogism(lifted, gw);
  pb.rewrite(chained, Formula::implies(Formula::box(m, x), Formula::box(mp, x)));
  return std::move(pb).build();
}

// |- [e](phi | psi) -> (phi | [g]psi) where g is a gateway between A and B,
// e in A, phi in the A-fragment and psi in the B-fragment.
inline ProofScript vee_lemma(const Signature& sig, const EdgeId& e, const EdgeId& g,
                             const EdgeSet& a, const EdgeSet& b, const Formula& phi,
                             const Formula& psi) {
  detail::require_gateway(sig, g, a, b);
  if (!a.contains(e)) throw Error(ErrorCode::kInvalidInput, "e must belong to A");
  detail::require_fragment(sig, phi, a);
  detail::require_fragment(sig, psi, b);
  ProofBuilder pb(sig);
  pb.gateway(e, g, a, b, neg(phi), psi);
  return std::move(pb).build();
}

// |- [g](phi | psi | chi) -> (phi | [g]psi | [g]chi) where g is a gateway
// between A and B, phi in the {g}-fragment, psi in the A-fragment and chi in
// the B-fragment.
inline ProofScript second_vee_lemma(const Signature& sig, const EdgeId& g, const EdgeSet& a,
                                    const EdgeSet& b, const Formula& phi, const Formula& psi,
                                    const Formula& chi) {
  EdgeSet ag = a;
  ag.insert(g);
  detail::require_gateway(sig, g, a, b);
  detail::require_gateway(sig, g, ag, b);
  detail::require_fragment(sig, phi, {g});
  detail::require_fragment(sig, psi, a);
  detail::require_fragment(sig, chi, b);
  ProofBuilder pb(sig);
  const auto s = disj(disj(phi, psi), chi);
  const auto bs = Formula::box(g, s);
  const auto gchi = Formula::box(g, chi);
  const auto gpsi = Formula::box(g, psi);
  const auto r = disj(disj(phi, gchi), psi);

  const auto first = pb.gateway(g, g, ag, b, neg(disj(phi, psi)), chi);
  const auto reordered = pb.rewrite(first, Formula::implies(bs, r));
  const auto boxed = pb.box_monotone(g, reordered);  // [g][g]S -> [g]R
  const auto pi = pb.positive_introspection(g, s);
  const auto into = pb.syllogism(pi, boxed);  // [g]S -> [g]R
  const auto second = pb.gateway(g, g, {g}, a, neg(disj(phi, gchi)), psi);
  const auto joined = pb.syllogism(into, second);
  pb.rewrite(joined, Formula::implies(bs, disj(disj(phi, gpsi), gchi)));
  return std::move(pb).build();
}

// |- phi -> [e]phi for phi in the {e}-fragment.
inline ProofScript pre_xyz_lemma(const Signature& sig, const EdgeId& e, const Formula& phi) {
  detail::require_fragment(sig, phi, {e});
  ProofBuilder pb(sig);
  const auto nec = pb.necessitation(e, pb.tautology(Formula::implies(phi, phi)));
  const auto gw = pb.gateway(e, e, {e}, {e}, phi, phi);
  pb.mp(nec, gw);
  return std::move(pb).build();
}

// Hypotheses X in the {e}-fragment with X |- phi give X |- [e]phi. The
// derivation from X uses modus ponens only; the theorems it needs are cited
// as lemmas. `phi` must follow propositionally from the hypotheses.
inline ProofScript xyz_lemma(const Signature& sig, const EdgeId& e,
                             const std::vector<Formula>& hypotheses, const Formula& phi) {
  for (const auto& h : hypotheses) detail::require_fragment(sig, h, {e});
  // chain = psi1 -> (psi2 -> ... (psin -> phi))
  Formula chain = phi;
  for (auto it = hypotheses.rbegin(); it != hypotheses.rend(); ++it) {
    chain = Formula::implies(*it, chain);
  }
  if (!is_tautology(chain)) {
    throw Error(ErrorCode::kInvalidInput, "phi does not follow from the hypotheses");
  }
  ProofBuilder boxed_chain(sig);
  boxed_chain.necessitation(e, boxed_chain.tautology(chain));

  ProofBuilder pb(sig, ProofMode::kHypothesis);
  std::vector<std::size_t> hyp;
  for (const auto& h : hypotheses) hyp.push_back(pb.hypothesis(h));
  auto current = pb.lemma(std::move(boxed_chain).build());  // [e](psi_i -> ...)
  for (std::size_t i = 0; i < hypotheses.size(); ++i) {
    const auto& body = pb.at(current).body();
    const auto dist = pb.distributivity(e, body.lhs(), body.rhs());
    const auto step = pb.mp(current, dist);  // [e]psi_i -> [e](rest)
    const auto lift = pb.lemma(pre_xyz_lemma(sig, e, hypotheses[i]));
    const auto known = pb.mp(hyp[i], lift);  // [e]psi_i
    current = pb.mp(known, step);
  }
  return std::move(pb).build();
}

struct NamedScript {
  std::string name;
  ProofScript script;
};

// The shipped instances. Each theorem is instantiated on a concrete
// signature with a fixed formula in the parameter slots.
inline std::vector<NamedScript> derive_lemma_fixtures() {
  using fixtures::line_signature;
  using fixtures::relay_signature;
  const auto relay = relay_signature();
  const auto line3 = line_signature({"a", "b", "c"});
  const auto line5 = line_signature({"a", "b", "c", "d", "e"});
  auto p = [](const Signature& sig, const char* text) { return parse(sig, text); };

  const auto relay_phi = p(relay, "p_k -> p_c'");
  std::vector<NamedScript> out;
  out.push_back({"knowledge_of_disjunction",
                 example_knowledge_of_disjunction(line3, "a", "b", "c", p(line3, "p_a | p_c"))});
  out.push_back({"chain_relay", example_chain_relay(line5, "a", "b", "c", "d", "e",
                                                    p(line5, "p_e -> [a] p_c"))});
  out.push_back({"gateway_relay", example_gateway_relay(relay, "m", "m'", "m''", relay_phi)});
  out.push_back({"vee", vee_lemma(relay, "m", "m'", {"m", "k"}, {"k'", "c'"},
                                  p(relay, "[k] p_m & p_m"), p(relay, "[c'] p_k'"))});
  out.push_back({"second_vee", second_vee_lemma(relay, "m'", {"m", "k"}, {"k'", "c'"},
                                                p(relay, "[m'] p_k | p_m'"),
                                                p(relay, "[m] p_c"), p(relay, "[c'] ~p_m"))});
  out.push_back({"pre_xyz", pre_xyz_lemma(relay, "k", p(relay, "[k] p_c -> p_k"))});
  out.push_back({"xyz", xyz_lemma(relay, "m'", {p(relay, "p_m'"), p(relay, "p_m' -> [m'] p_m")},
                                  p(relay, "[m'] p_m & p_m'"))});
  return out;
}

}  // namespace netepi
