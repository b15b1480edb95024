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

// Named topologies and protocols used by the examples, the tests and the
// shipped data files.

#pragma once

#include <bitset>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "netepi/formula.hpp"
#include "netepi/multigraph.hpp"
#include "netepi/protocol.hpp"

namespace netepi::fixtures {

// The relay network
//
//   p --m-- q ==k,c== u --m'-- v ==k',c'== s --m''-- t
//
// where q-u and v-s each carry two parallel channels.
inline Multigraph relay_graph() {
  return Multigraph({"p", "q", "u", "v", "s", "t"}, {{"m", "p", "q"},
                                                     {"k", "q", "u"},
                                                     {"c", "q", "u"},
                                                     {"m'", "u", "v"},
                                                     {"k'", "v", "s"},
                                                     {"c'", "v", "s"},
                                                     {"m''", "s", "t"}});
}

// One proposition per edge, named "p_" followed by the edge id.
inline Signature one_prop_per_edge(const Multigraph& g) {
  std::map<EdgeId, std::set<PropositionId>> props;
  for (const auto& e : g.edges()) props[e] = {"p_" + e};
  return Signature(g, props);
}

inline Signature relay_signature() { return one_prop_per_edge(relay_graph()); }

// Linear chain x0 -e0- x1 -e1- ... with the given edge ids in order.
inline Multigraph line_graph(const std::vector<EdgeId>& edges) {
  std::vector<VertexId> vs;
  std::vector<EdgeSpec> es;
  for (std::size_t i = 0; i <= edges.size(); ++i) vs.push_back("x" + std::to_string(i));
  for (std::size_t i = 0; i < edges.size(); ++i) es.push_back({edges[i], vs[i], vs[i + 1]});
  return Multigraph(vs, es);
}

inline Signature line_signature(const std::vector<EdgeId>& edges) {
  return one_prop_per_edge(line_graph(edges));
}

// The four-party encryption network: p -m- q, q =k,c= u, u -m'- v.
inline Multigraph cipher_graph() {
  return Multigraph({"p", "q", "u", "v"},
                    {{"m", "p", "q"}, {"k", "q", "u"}, {"c", "q", "u"}, {"m'", "u", "v"}});
}

// Name of the proposition "m' carries w".
inline PropositionId carries(const std::string& w) { return "p" + w; }

// One-time-pad relay over `bits`-bit strings. q sends c within Hamming
// distance `errors` of m xor k; u outputs m' within distance `errors` of
// c xor k. Each proposition carries(w) holds exactly when m' = w.
inline Protocol cipher_protocol(std::size_t bits, std::size_t errors) {
  const std::size_t n = std::size_t{1} << bits;
  auto word = [bits](std::size_t x) {
    std::string s;
    for (std::size_t i = bits; i-- > 0;) s += ((x >> i) & 1U) ? '1' : '0';
    return s;
  };
  std::vector<Value> dom;
  for (std::size_t x = 0; x < n; ++x) dom.push_back(word(x));

  std::map<EdgeId, std::set<PropositionId>> props;
  std::map<PropositionId, std::set<Value>> valuation;
  for (const auto& w : dom) {
    props["m'"].insert(carries(w));
    valuation[carries(w)] = {w};
  }
  Signature sig(cipher_graph(), props);

  auto close = [errors](std::size_t a, std::size_t b) {
    return std::bitset<64>(a ^ b).count() <= errors;
  };
  std::map<VertexId, std::vector<std::map<EdgeId, Value>>> locals;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t b = 0; b < n; ++b) {
        if (!close(b, a ^ k)) continue;
        // At q: a = m, b = c. At u: a = c, b = m'.
        locals["q"].push_back({{"m", dom[a]}, {"k", dom[k]}, {"c", dom[b]}});
        locals["u"].push_back({{"c", dom[a]}, {"k", dom[k]}, {"m'", dom[b]}});
      }
    }
  }
  return Protocol(sig, {{"m", dom}, {"k", dom}, {"c", dom}, {"m'", dom}}, locals, valuation);
}

// Error-free one-bit relay.
inline Protocol p1_protocol() { return cipher_protocol(1, 0); }

// Four-bit relay with at most one bit error per stage.
inline Protocol p2_protocol() { return cipher_protocol(4, 1); }

}  // namespace netepi::fixtures
