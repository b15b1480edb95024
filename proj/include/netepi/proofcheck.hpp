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

// Verifier for Hilbert-style derivations.
//
// A script is checked line by line. Every justification references earlier
// lines, hypotheses or lemmas by zero-based index. Lemmas are complete
// theorem-mode scripts over the same signature; a Theorem justification cites
// the last line of one of them.

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "netepi/axioms.hpp"
#include "netepi/error.hpp"
#include "netepi/formula.hpp"
#include "netepi/multigraph.hpp"

namespace netepi {

enum class ProofMode { kTheorem, kHypothesis };

namespace just {

struct Tautology {};
struct Truth {
  EdgeId e;
};
struct PosIntrospection {
  EdgeId e;
};
struct NegIntrospection {
  EdgeId e;
};
struct Distributivity {
  EdgeId e;
};
struct Gateway {
  EdgeId e;
  EdgeId g;
  EdgeSet a;
  EdgeSet b;
};
// Line `major` must read (line `minor` -> this line).
struct ModusPonens {
  std::size_t minor;
  std::size_t major;
};
struct Necessitation {
  EdgeId e;
  std::size_t line;
};
struct Hypothesis {
  std::size_t index;
};
struct Theorem {
  std::size_t lemma;
};

}  // namespace just

using Justification =
    std::variant<just::Tautology, just::Truth, just::PosIntrospection, just::NegIntrospection,
                 just::Distributivity, just::Gateway, just::ModusPonens, just::Necessitation,
                 just::Hypothesis, just::Theorem>;

inline std::string_view rule_name(const Justification& j) {
  static constexpr std::string_view kNames[] = {
      "Tautology",  "Truth",   "PosIntrospection", "NegIntrospection", "Distributivity",
      "Gateway", "ModusPonens", "Necessitation", "Hypothesis", "Theorem"};
  return kNames[j.index()];
}

struct ProofLine {
  Formula formula;
  Justification justification;
};

struct ProofScript {
  Signature sig;
  ProofMode mode = ProofMode::kTheorem;
  std::vector<Formula> hypotheses;
  std::vector<ProofScript> lemmas;
  std::vector<ProofLine> lines;

  // The proved formula; falsum for an empty script.
  Formula conclusion() const { return lines.empty() ? Formula::falsum() : lines.back().formula; }
};

enum class RejectReason {
  kBadPattern,
  kNotTautology,
  kNotGateway,
  kFragmentViolation,
  kRuleForbiddenInMode,
  kBadReference,
};

inline std::string_view to_string(RejectReason r) {
  switch (r) {
    case RejectReason::kBadPattern: return "BadPattern";
    case RejectReason::kNotTautology: return "NotTautology";
    case RejectReason::kNotGateway: return "NotGateway";
    case RejectReason::kFragmentViolation: return "FragmentViolation";
    case RejectReason::kRuleForbiddenInMode: return "RuleForbiddenInMode";
    case RejectReason::kBadReference: return "BadReference";
  }
  return "Unknown";
}

struct Rejection {
  std::size_t line = 0;
  RejectReason reason = RejectReason::kBadPattern;
  std::string detail;
  // Set when the failure lies inside lemma `*lemma`; `line` then indexes the
  // lemma's lines.
  std::optional<std::size_t> lemma;
};

struct ProofResult {
  std::optional<Rejection> rejection;

  bool accepted() const { return !rejection.has_value(); }
  explicit operator bool() const { return accepted(); }
};

namespace detail {

class LineChecker {
 public:
  LineChecker(const ProofScript& s, std::size_t line) : script_(s), line_(line) {}

  std::optional<Rejection> operator()(const just::Tautology&) const {
    bool ok = false;
    try {
      ok = is_tautology(formula());
    } catch (const Error& err) {
      return reject(RejectReason::kNotTautology, err.what());
    }
    if (!ok) return reject(RejectReason::kNotTautology, "not a propositional tautology");
    return std::nullopt;
  }

  std::optional<Rejection> operator()(const just::Truth& j) const {
    if (auto r = known_edge(j.e)) return r;
    return pattern(match_truth(formula(), j.e), "Truth");
  }
  std::optional<Rejection> operator()(const just::PosIntrospection& j) const {
    if (auto r = known_edge(j.e)) return r;
    return pattern(match_positive_introspection(formula(), j.e), "PosIntrospection");
  }
  std::optional<Rejection> operator()(const just::NegIntrospection& j) const {
    if (auto r = known_edge(j.e)) return r;
    return pattern(match_negative_introspection(formula(), j.e), "NegIntrospection");
  }
  std::optional<Rejection> operator()(const just::Distributivity& j) const {
    if (auto r = known_edge(j.e)) return r;
    return pattern(match_distributivity(formula(), j.e), "Distributivity");
  }

  std::optional<Rejection> operator()(const just::Gateway& j) const {
    for (const auto* id : {&j.e, &j.g}) {
      if (auto r = known_edge(*id)) return r;
    }
    for (const auto* set : {&j.a, &j.b}) {
      for (const auto& id : *set) {
        if (auto r = known_edge(id)) return r;
      }
    }
    Formula p, q;
    if (!match_gateway_shape(formula(), j.e, j.g, &p, &q)) {
      return reject(RejectReason::kBadPattern, "not of the form [e](p -> q) -> (p -> [g]q)");
    }
    if (!j.a.contains(j.e)) return reject(RejectReason::kBadPattern, "edge e is not in set A");
    if (!in_fragment(script_.sig, p, j.a)) {
      return reject(RejectReason::kFragmentViolation, "antecedent is outside the A-fragment");
    }
    if (!in_fragment(script_.sig, q, j.b)) {
      return reject(RejectReason::kFragmentViolation, "consequent is outside the B-fragment");
    }
    if (!is_gateway(script_.sig.graph(), j.g, j.a, j.b)) {
      return reject(RejectReason::kNotGateway, "g is not a gateway between A and B");
    }
    return std::nullopt;
  }

  std::optional<Rejection> operator()(const just::ModusPonens& j) const {
    if (j.minor >= line_ || j.major >= line_) {
      return reject(RejectReason::kBadReference, "modus ponens must cite earlier lines");
    }
    const auto& major = script_.lines[j.major].formula;
    if (!major.is_implies() || !(major.lhs() == script_.lines[j.minor].formula) ||
        !(major.rhs() == formula())) {
      return reject(RejectReason::kBadPattern, "major premise is not (minor -> conclusion)");
    }
    return std::nullopt;
  }

  std::optional<Rejection> operator()(const just::Necessitation& j) const {
    if (script_.mode == ProofMode::kHypothesis) {
      return reject(RejectReason::kRuleForbiddenInMode,
                    "necessitation is not available in derivations from hypotheses");
    }
    if (auto r = known_edge(j.e)) return r;
    if (j.line >= line_) return reject(RejectReason::kBadReference, "must cite an earlier line");
    return pattern(formula() == Formula::box(j.e, script_.lines[j.line].formula), "Necessitation");
  }

  std::optional<Rejection> operator()(const just::Hypothesis& j) const {
    if (script_.mode != ProofMode::kHypothesis) {
      return reject(RejectReason::kRuleForbiddenInMode, "theorem-mode scripts have no hypotheses");
    }
    if (j.index >= script_.hypotheses.size()) {
      return reject(RejectReason::kBadReference, "no such hypothesis");
    }
    return pattern(formula() == script_.hypotheses[j.index], "Hypothesis");
  }

  std::optional<Rejection> operator()(const just::Theorem& j) const {
    if (j.lemma >= script_.lemmas.size()) {
      return reject(RejectReason::kBadReference, "no such lemma");
    }
    const auto& lemma = script_.lemmas[j.lemma];
    if (lemma.mode != ProofMode::kTheorem || lemma.lines.empty()) {
      return reject(RejectReason::kBadReference, "lemma is not a theorem-mode derivation");
    }
    return pattern(formula() == lemma.conclusion(), "Theorem");
  }

 private:
  const Formula& formula() const { return script_.lines[line_].formula; }

  Rejection reject(RejectReason reason, std::string detail) const {
    return Rejection{line_, reason, std::move(detail), std::nullopt};
  }

  std::optional<Rejection> pattern(bool ok, std::string_view rule) const {
    if (ok) return std::nullopt;
    return reject(RejectReason::kBadPattern,
                  "formula does not match the " + std::string(rule) + " pattern");
  }

  std::optional<Rejection> known_edge(const EdgeId& e) const {
    if (script_.sig.graph().find_edge(e)) return std::nullopt;
    return reject(RejectReason::kBadReference, "unknown edge '" + e + "'");
  }

  const ProofScript& script_;
  std::size_t line_;
};

}  // namespace detail

inline ProofResult check_proof(const ProofScript& script) {
  for (std::size_t k = 0; k < script.lemmas.size(); ++k) {
    const auto& lemma = script.lemmas[k];
    if (!(lemma.sig == script.sig)) {
      return {Rejection{0, RejectReason::kBadReference, "lemma uses a different signature", k}};
    }
    auto sub = check_proof(lemma);
    if (!sub.accepted()) {
      auto r = *sub.rejection;
      r.lemma = k;
      return {r};
    }
  }
  for (std::size_t i = 0; i < script.lines.size(); ++i) {
    if (auto r = std::visit(detail::LineChecker(script, i), script.lines[i].justification)) {
      return {std::move(r)};
    }
  }
  return {};
}

}  // namespace netepi
