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

// The object language: formulas over falsum, edge-homed propositions,
// implication and the edge-indexed box. Negation, conjunction, disjunction
// and "true" are sugar that the parser eliminates and the printer restores.

#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "netepi/error.hpp"
#include "netepi/multigraph.hpp"

namespace netepi {

using PropositionId = std::string;

// A connected multigraph with pairwise disjoint proposition sets per edge.
class Signature {
 public:
  Signature() = default;
  Signature(Multigraph graph, std::map<EdgeId, std::set<PropositionId>> props)
      : graph_(std::move(graph)) {
    if (!is_connected(graph_)) {
      throw Error(ErrorCode::kDisconnectedGraph, "signature graph is not connected");
    }
    for (const auto& e : graph_.edges()) props_[e];
    for (auto& [edge, names] : props) {
      graph_.edge_index(edge);
      for (const auto& p : names) {
        if (!home_.emplace(p, edge).second) {
          throw Error(ErrorCode::kInvalidSignature,
                      "proposition '" + p + "' is assigned to more than one edge");
        }
      }
      props_[edge] = std::move(names);
    }
  }

  const Multigraph& graph() const { return graph_; }
  const std::map<EdgeId, std::set<PropositionId>>& props() const { return props_; }
  const std::map<PropositionId, EdgeId>& homes() const { return home_; }

  const EdgeId& home(const PropositionId& p) const {
    auto it = home_.find(p);
    if (it == home_.end()) {
      throw Error(ErrorCode::kUnknownProposition, "unknown proposition '" + p + "'");
    }
    return it->second;
  }
  bool has_prop(const PropositionId& p) const { return home_.contains(p); }

  friend bool operator==(const Signature& a, const Signature& b) {
    return a.graph_ == b.graph_ && a.props_ == b.props_;
  }

 private:
  Multigraph graph_;
  std::map<EdgeId, std::set<PropositionId>> props_;
  std::map<PropositionId, EdgeId> home_;
};

class Formula {
 public:
  enum class Kind : std::uint8_t { kFalsum, kProp, kImplies, kBox };

  // Default-constructed formula is falsum.
  Formula() : Formula(falsum()) {}

  static Formula falsum();
  static Formula prop(PropositionId name);
  static Formula implies(Formula lhs, Formula rhs);
  static Formula box(EdgeId edge, Formula body);

  Kind kind() const;
  bool is_falsum() const { return kind() == Kind::kFalsum; }
  bool is_prop() const { return kind() == Kind::kProp; }
  bool is_implies() const { return kind() == Kind::kImplies; }
  bool is_box() const { return kind() == Kind::kBox; }

  // Proposition name for kProp, edge label for kBox.
  const std::string& name() const;
  const Formula& lhs() const;
  const Formula& rhs() const;
  const Formula& body() const;

  std::size_t hash() const;

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct Formula::Node {
  Kind kind;
  std::string name;
  std::vector<Formula> children;
  std::size_t hash;
};

inline Formula::Kind Formula::kind() const { return node_->kind; }
inline const std::string& Formula::name() const { return node_->name; }
inline const Formula& Formula::lhs() const { return node_->children[0]; }
inline const Formula& Formula::rhs() const { return node_->children[1]; }
inline const Formula& Formula::body() const { return node_->children[0]; }
inline std::size_t Formula::hash() const { return node_->hash; }

inline bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.node_->hash != b.node_->hash || a.node_->kind != b.node_->kind ||
      a.node_->name != b.node_->name) {
    return false;
  }
  switch (a.kind()) {
    case Formula::Kind::kFalsum:
    case Formula::Kind::kProp: return true;
    case Formula::Kind::kImplies: return a.lhs() == b.lhs() && a.rhs() == b.rhs();
    case Formula::Kind::kBox: return a.body() == b.body();
  }
  return false;
}

namespace detail {
inline std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}
}  // namespace detail

inline Formula Formula::falsum() {
  static const Formula f(std::make_shared<const Node>(Node{Kind::kFalsum, {}, {}, 0x9e37}));
  return f;
}

inline Formula Formula::prop(PropositionId name) {
  const auto h = detail::mix(0x51, std::hash<std::string>{}(name));
  return Formula(std::make_shared<const Node>(Node{Kind::kProp, std::move(name), {}, h}));
}

inline Formula Formula::implies(Formula lhs, Formula rhs) {
  const auto h = detail::mix(detail::mix(0x77, lhs.hash()), rhs.hash());
  return Formula(std::make_shared<const Node>(
      Node{Kind::kImplies, {}, {std::move(lhs), std::move(rhs)}, h}));
}

inline Formula Formula::box(EdgeId edge, Formula body) {
  const auto h = detail::mix(detail::mix(0xb0, std::hash<std::string>{}(edge)), body.hash());
  return Formula(
      std::make_shared<const Node>(Node{Kind::kBox, std::move(edge), {std::move(body)}, h}));
}

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

// Sugar.
inline Formula neg(Formula f) { return Formula::implies(std::move(f), Formula::falsum()); }
inline Formula top() { return neg(Formula::falsum()); }
inline Formula disj(Formula a, Formula b) {
  return Formula::implies(neg(std::move(a)), std::move(b));
}
inline Formula conj(Formula a, Formula b) {
  return neg(Formula::implies(std::move(a), neg(std::move(b))));
}
inline Formula iff(const Formula& a, const Formula& b) {
  return conj(Formula::implies(a, b), Formula::implies(b, a));
}
// Left-nested disjunction of all items; falsum when empty.
inline Formula disj_all(const std::vector<Formula>& items) {
  if (items.empty()) return Formula::falsum();
  Formula acc = items.front();
  for (std::size_t i = 1; i < items.size(); ++i) acc = disj(acc, items[i]);
  return acc;
}

inline bool is_negation(const Formula& f) { return f.is_implies() && f.rhs().is_falsum(); }

// ---------------------------------------------------------------------------
// Printer. Precedence from loosest to tightest: ->, |, &, prefix (~, [e]).

namespace detail {

enum Prec { kPrecImplies = 0, kPrecOr = 1, kPrecAnd = 2, kPrecPrefix = 3 };

inline bool match_conj(const Formula& f, Formula* a, Formula* b) {
  // ~(a -> ~b)
  if (!is_negation(f)) return false;
  const auto& inner = f.lhs();
  if (!inner.is_implies() || !is_negation(inner.rhs())) return false;
  *a = inner.lhs();
  *b = inner.rhs().lhs();
  return true;
}

inline void print(const Formula& f, int context, std::string& out) {
  auto open = [&](int prec) {
    if (prec < context) out += '(';
  };
  auto close = [&](int prec) {
    if (prec < context) out += ')';
  };
  Formula a, b;
  switch (f.kind()) {
    case Formula::Kind::kFalsum: out += "false"; return;
    case Formula::Kind::kProp: out += f.name(); return;
    case Formula::Kind::kBox:
      out += '[';
      out += f.name();
      out += "] ";
      print(f.body(), kPrecPrefix, out);
      return;
    case Formula::Kind::kImplies: break;
  }
  if (f.lhs().is_falsum() && f.rhs().is_falsum()) {
    out += "true";
    return;
  }
  if (match_conj(f, &a, &b)) {
    open(kPrecAnd);
    print(a, kPrecAnd, out);
    out += " & ";
    print(b, kPrecAnd + 1, out);
    close(kPrecAnd);
    return;
  }
  if (is_negation(f)) {
    out += '~';
    print(f.lhs(), kPrecPrefix, out);
    return;
  }
  if (is_negation(f.lhs())) {
    open(kPrecOr);
    print(f.lhs().lhs(), kPrecOr, out);
    out += " | ";
    print(f.rhs(), kPrecOr + 1, out);
    close(kPrecOr);
    return;
  }
  open(kPrecImplies);
  print(f.lhs(), kPrecImplies + 1, out);
  out += " -> ";
  print(f.rhs(), kPrecImplies, out);
  close(kPrecImplies);
}

}  // namespace detail

inline std::string to_string(const Formula& f) {
  std::string out;
  detail::print(f, detail::kPrecImplies, out);
  return out;
}

// ---------------------------------------------------------------------------
// Parser.
//
//   formula := "false" | "true" | IDENT | "~" formula | "[" IDENT "]" formula
//            | formula "->" formula | formula "&" formula | formula "|" formula
//            | "(" formula ")"
//   IDENT   := [A-Za-z][A-Za-z0-9_']*
//
// -> is right-associative; & and | are left-associative.

namespace detail {

class Parser {
 public:
  Parser(const Signature& sig, std::string_view text) : sig_(sig), text_(text) {}

  Formula parse() {
    auto f = parse_implies();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::kSyntaxError, what + " at offset " + std::to_string(pos_), pos_);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(std::string_view tok) {
    skip_space();
    if (text_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }

  void expect(std::string_view tok) {
    if (!accept(tok)) fail("expected '" + std::string(tok) + "'");
  }

  std::string ident() {
    skip_space();
    const auto start = pos_;
    if (pos_ >= text_.size() || !std::isalpha(static_cast<unsigned char>(text_[pos_]))) {
      fail("expected identifier");
    }
    ++pos_;
    while (pos_ < text_.size()) {
      const auto c = static_cast<unsigned char>(text_[pos_]);
      if (std::isalnum(c) || c == '_' || c == '\'') {
        ++pos_;
      } else {
        break;
      }
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  Formula parse_implies() {
    auto lhs = parse_or();
    if (accept("->")) return Formula::implies(lhs, parse_implies());
    return lhs;
  }

  Formula parse_or() {
    auto acc = parse_and();
    while (true) {
      skip_space();
      if (!accept("|")) return acc;
      acc = disj(acc, parse_and());
    }
  }

  Formula parse_and() {
    auto acc = parse_unary();
    while (accept("&")) acc = conj(acc, parse_unary());
    return acc;
  }

  Formula parse_unary() {
    skip_space();
    if (accept("~")) return neg(parse_unary());
    if (accept("(")) {
      auto f = parse_implies();
      expect(")");
      return f;
    }
    if (accept("[")) {
      const auto at = pos_;
      auto edge = ident();
      if (!sig_.graph().find_edge(edge)) {
        throw Error(ErrorCode::kUnknownEdge, "unknown edge '" + edge + "'", at);
      }
      expect("]");
      return Formula::box(std::move(edge), parse_unary());
    }
    skip_space();
    const auto at = pos_;
    auto name = ident();
    if (name == "false") return Formula::falsum();
    if (name == "true") return top();
    if (!sig_.has_prop(name)) {
      throw Error(ErrorCode::kUnknownProposition, "unknown proposition '" + name + "'", at);
    }
    return Formula::prop(std::move(name));
  }

  const Signature& sig_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Formula parse(const Signature& sig, std::string_view text) {
  return detail::Parser(sig, text).parse();
}

// ---------------------------------------------------------------------------
// Fragments and atoms.

// Membership in the fragment over edge set T: boxes outside all other boxes
// carry labels in T, and propositions outside all boxes are homed in T. The
// body of a box is unrestricted.
inline bool in_fragment(const Signature& sig, const Formula& f, const EdgeSet& t) {
  switch (f.kind()) {
    case Formula::Kind::kFalsum: return true;
    case Formula::Kind::kProp: return t.contains(sig.home(f.name()));
    case Formula::Kind::kImplies:
      return in_fragment(sig, f.lhs(), t) && in_fragment(sig, f.rhs(), t);
    case Formula::Kind::kBox: return t.contains(f.name());
  }
  return false;
}

struct ModalAtom {
  Formula atom;
  EdgeId home;

  friend bool operator==(const ModalAtom&, const ModalAtom&) = default;
};

// Maximal proposition or box subformulas, each once, in first-occurrence
// order. The home of an atom is the unique edge whose singleton fragment
// contains it.
inline std::vector<ModalAtom> modal_atoms(const Signature& sig, const Formula& f) {
  std::vector<ModalAtom> out;
  std::unordered_map<Formula, std::size_t, FormulaHash> seen;
  std::function<void(const Formula&)> walk = [&](const Formula& g) {
    switch (g.kind()) {
      case Formula::Kind::kFalsum: return;
      case Formula::Kind::kImplies:
        walk(g.lhs());
        walk(g.rhs());
        return;
      case Formula::Kind::kProp:
      case Formula::Kind::kBox:
        if (seen.emplace(g, out.size()).second) {
          out.push_back({g, g.is_prop() ? sig.home(g.name()) : g.name()});
        }
        return;
    }
  };
  walk(f);
  return out;
}

inline constexpr std::size_t kMaxTautologyAtoms = 20;

namespace detail {

// Propositional skeleton compiled against an atom table.
struct Skeleton {
  // op: 0 = falsum, 1 = atom(arg), 2 = implies(arg = lhs index, arg2 = rhs index)
  struct Op {
    std::uint8_t op;
    std::uint32_t a;
    std::uint32_t b;
  };
  std::vector<Op> ops;  // children precede parents; root is last
  std::unordered_map<Formula, std::uint32_t, FormulaHash> atom_index;

  std::uint32_t add(const Formula& f) {
    switch (f.kind()) {
      case Formula::Kind::kFalsum:
        ops.push_back({0, 0, 0});
        break;
      case Formula::Kind::kProp:
      case Formula::Kind::kBox: {
        auto [it, inserted] =
            atom_index.emplace(f, static_cast<std::uint32_t>(atom_index.size()));
        ops.push_back({1, it->second, 0});
        break;
      }
      case Formula::Kind::kImplies: {
        const auto l = add(f.lhs());
        const auto r = add(f.rhs());
        ops.push_back({2, l, r});
        break;
      }
    }
    return static_cast<std::uint32_t>(ops.size() - 1);
  }

  bool eval(std::uint64_t assignment, std::vector<char>& scratch, std::size_t root) const {
    for (std::size_t i = 0; i <= root; ++i) {
      const auto& o = ops[i];
      switch (o.op) {
        case 0: scratch[i] = 0; break;
        case 1: scratch[i] = static_cast<char>((assignment >> o.a) & 1U); break;
        default: scratch[i] = static_cast<char>(!scratch[o.a] || scratch[o.b]); break;
      }
    }
    return scratch[root] != 0;
  }
};

}  // namespace detail

// Truth-table check over the modal atoms of f.
inline bool is_tautology(const Formula& f) {
  detail::Skeleton sk;
  const auto root = sk.add(f);
  const auto n = sk.atom_index.size();
  if (n > kMaxTautologyAtoms) {
    throw Error(ErrorCode::kTooManyAtoms,
                std::to_string(n) + " atoms exceed the limit of " +
                    std::to_string(kMaxTautologyAtoms));
  }
  std::vector<char> scratch(sk.ops.size());
  for (std::uint64_t a = 0; a < (std::uint64_t{1} << n); ++a) {
    if (!sk.eval(a, scratch, root)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Edge-clausal form: a conjunction of clauses, each clause a disjunction of
// one edge-local formula per mentioned edge. An empty clause is falsum; an
// empty clause list is the empty conjunction.

using EdgeClause = std::map<EdgeId, Formula>;

struct EdgeClausalForm {
  std::vector<EdgeClause> clauses;
};

inline Formula clause_formula(const EdgeClause& clause) {
  std::vector<Formula> parts;
  for (const auto& [edge, f] : clause) parts.push_back(f);
  return disj_all(parts);
}

inline Formula to_formula(const EdgeClausalForm& form) {
  if (form.clauses.empty()) return top();
  Formula acc = clause_formula(form.clauses.front());
  for (std::size_t i = 1; i < form.clauses.size(); ++i) {
    acc = conj(acc, clause_formula(form.clauses[i]));
  }
  return acc;
}

namespace detail {

// Leaves of a tree of disjunction sugar (~a -> b).
inline void disjuncts(const Formula& f, std::vector<Formula>& out) {
  if (f.is_implies() && is_negation(f.lhs()) && !f.rhs().is_falsum()) {
    disjuncts(f.lhs().lhs(), out);
    disjuncts(f.rhs(), out);
    return;
  }
  out.push_back(f);
}

using Literal = std::pair<std::uint32_t, bool>;  // atom index, positive
using Clause = std::set<Literal>;

// CNF of the propositional skeleton by negation normal form and
// distribution; tautological clauses are dropped, duplicates merged.
inline std::vector<Clause> cnf(const Formula& f, bool positive,
                               std::unordered_map<Formula, std::uint32_t, FormulaHash>& atoms,
                               std::vector<Formula>& atom_list) {
  auto atom_id = [&](const Formula& a) {
    auto [it, inserted] = atoms.emplace(a, static_cast<std::uint32_t>(atom_list.size()));
    if (inserted) atom_list.push_back(a);
    return it->second;
  };
  auto product = [](const std::vector<Clause>& x, const std::vector<Clause>& y) {
    std::vector<Clause> out;
    for (const auto& cx : x) {
      for (const auto& cy : y) {
        Clause c = cx;
        c.insert(cy.begin(), cy.end());
        bool tautological = false;
        for (const auto& [atom, pos] : c) {
          if (pos && c.contains({atom, false})) tautological = true;
        }
        if (!tautological) out.push_back(std::move(c));
      }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  };
  switch (f.kind()) {
    case Formula::Kind::kFalsum:
      // falsum: one empty clause; negated falsum: no clauses.
      return positive ? std::vector<Clause>{Clause{}} : std::vector<Clause>{};
    case Formula::Kind::kProp:
    case Formula::Kind::kBox:
      return {Clause{{atom_id(f), positive}}};
    case Formula::Kind::kImplies:
      break;
  }
  if (positive) {
    // a -> b  ==  ~a | b
    return product(cnf(f.lhs(), false, atoms, atom_list), cnf(f.rhs(), true, atoms, atom_list));
  }
  // ~(a -> b)  ==  a & ~b
  auto out = cnf(f.lhs(), true, atoms, atom_list);
  auto rest = cnf(f.rhs(), false, atoms, atom_list);
  out.insert(out.end(), rest.begin(), rest.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline std::optional<EdgeId> unique_home(const Signature& sig, const Formula& f) {
  const auto atoms = modal_atoms(sig, f);
  if (atoms.empty()) return std::nullopt;
  for (const auto& a : atoms) {
    if (a.home != atoms.front().home) return std::nullopt;
  }
  return atoms.front().home;
}

}  // namespace detail

inline EdgeClausalForm to_edge_clausal(const Signature& sig, const Formula& f) {
  EdgeClausalForm form;

  // A formula already shaped as a disjunction of edge-local parts keeps its
  // disjuncts; parts sharing an edge are joined.
  std::vector<Formula> leaves;
  detail::disjuncts(f, leaves);
  bool shaped = leaves.size() > 1;
  EdgeClause direct;
  for (const auto& leaf : leaves) {
    if (!shaped) break;
    if (leaf.is_falsum()) continue;
    auto home = detail::unique_home(sig, leaf);
    if (!home) {
      shaped = false;
      break;
    }
    auto it = direct.find(*home);
    if (it == direct.end()) {
      direct.emplace(*home, leaf);
    } else {
      it->second = disj(it->second, leaf);
    }
  }
  if (shaped) {
    form.clauses.push_back(std::move(direct));
  } else {
    std::unordered_map<Formula, std::uint32_t, FormulaHash> atoms;
    std::vector<Formula> atom_list;
    const auto clauses = detail::cnf(f, true, atoms, atom_list);
    for (const auto& c : clauses) {
      std::map<EdgeId, std::vector<Formula>> by_edge;
      for (const auto& [atom, positive] : c) {
        const auto& a = atom_list[atom];
        const auto home = a.is_prop() ? sig.home(a.name()) : a.name();
        by_edge[home].push_back(positive ? a : neg(a));
      }
      EdgeClause clause;
      for (auto& [edge, lits] : by_edge) clause.emplace(edge, disj_all(lits));
      form.clauses.push_back(std::move(clause));
    }
  }

  if (!is_tautology(iff(f, to_formula(form)))) {
    throw Error(ErrorCode::kInvalidInput,
                "edge-clausal normalization lost equivalence for " + to_string(f));
  }
  return form;
}

}  // namespace netepi
