// Copyright 2026 the bitround authors
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

#ifndef BITROUND_SYMMETRY_HPP_
#define BITROUND_SYMMETRY_HPP_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "bitround/model.hpp"

namespace bitround {

// A variable permutation. perm[i] is the 0-based image of 0-based variable i
// (so variable i+1 maps to variable perm[i]+1). Reports and JSON use 1-based
// cycle notation.
using Permutation = std::vector<int32_t>;

// Colored variable-constraint incidence graph. Nodes 0..var_count-1 are
// variables colored by objective coefficient; nodes var_count.. are
// constraints colored by (relation, rhs); each (variable, constraint)
// incidence is an edge colored by the coefficient. Colors are canonical ranks
// of the distinct values, with variable and constraint color spaces disjoint,
// so identical programs always build identical graphs.
struct ColoredGraph {
  int32_t var_count;
  int32_t cons_count;
  std::vector<int32_t> node_colors;
  // Per node, (neighbor, edge color) sorted by neighbor id.
  std::vector<std::vector<std::pair<int32_t, int32_t>>> adjacency;
  BinaryProgram source;

  int32_t node_count() const { return var_count + cons_count; }
};

struct SymmetryReport {
  std::vector<Permutation> generators;  // non-identity, discovery order
  int32_t generator_count = 0;
  std::vector<std::vector<int32_t>> orbit_partition;  // 1-based, cells by min element
  int64_t search_nodes = 0;
  bool timed_out = false;
};

ColoredGraph build_colored_graph(const BinaryProgram& bp);

// Individualization-refinement automorphism search. Repeatedly refines the
// node coloring (a node's signature is its color plus the multiset of
// (edge color, neighbor color) pairs), branches on the first non-singleton
// cell by individualizing its minimum vertex versus each other member in
// ascending order, records an automorphism whenever a later discrete leaf
// maps the first leaf's labeling onto the graph, and prunes first-path
// targets already reachable in a known orbit. Exceeding the node budget sets
// timed_out; the generators found so far are returned and individually valid.
SymmetryReport find_generators(const ColoredGraph& g, int64_t budget = 1'000'000);

// Formulation-level check: objective coefficients constant on sigma's moves
// and the constraint multiset invariant under renaming variables by sigma.
bool verify_symmetry(const BinaryProgram& bp, const Permutation& sigma);

// Independent oracle: enumerates every color-class-preserving variable
// permutation and filters by verify_symmetry. Returns the full non-identity
// group element list. Refuses graphs with more than max_vars variable nodes.
std::vector<Permutation> brute_force_automorphisms(const ColoredGraph& g,
                                                   int32_t max_vars = 12);

// Orbits of the group generated by `generators` on n variables, as 1-based
// cells sorted by minimum element.
std::vector<std::vector<int32_t>> orbit_partition(const std::vector<Permutation>& generators,
                                                  int32_t n);

// One synchronous color-refinement pass to fixpoint; exposed so tests can
// check stability. Input colors must be dense ranks 0..k-1.
std::vector<int32_t> refine_colors(const ColoredGraph& g, std::vector<int32_t> colors);

// "(1 2)(4 5)" style, 1-based, fixed points omitted; "()" for the identity.
std::string cycle_notation(const Permutation& perm);

}  // namespace bitround

#endif  // BITROUND_SYMMETRY_HPP_
