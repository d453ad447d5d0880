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

#include "bitround/symmetry.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <tuple>

namespace bitround {

namespace {

int32_t rank_of(const std::vector<int64_t>& sorted_distinct, int64_t value) {
  return static_cast<int32_t>(
      std::lower_bound(sorted_distinct.begin(), sorted_distinct.end(), value) -
      sorted_distinct.begin());
}

struct UnionFind {
  explicit UnionFind(int32_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int32_t find(int32_t v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  }
  void unite(int32_t a, int32_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<int32_t> parent;
};

int64_t pack(int32_t edge_color, int32_t node_color) {
  return (static_cast<int64_t>(edge_color) << 32) | static_cast<uint32_t>(node_color);
}

int32_t class_count(const std::vector<int32_t>& colors) {
  return colors.empty() ? 0 : *std::max_element(colors.begin(), colors.end()) + 1;
}

class AutomorphismSearch {
 public:
  AutomorphismSearch(const ColoredGraph& g, int64_t budget) : g_(g), budget_(budget), uf_(g.node_count()) {}

  SymmetryReport run() {
    descend(g_.node_colors, true);
    SymmetryReport report;
    report.generators = std::move(generators_);
    report.generator_count = static_cast<int32_t>(report.generators.size());
    report.orbit_partition = orbit_partition(report.generators, g_.var_count);
    report.search_nodes = nodes_;
    report.timed_out = timed_out_;
    return report;
  }

 private:
  // Returns true iff an automorphism was found in this subtree, which lets a
  // coset search stop after its first representative.
  bool descend(std::vector<int32_t> colors, bool first_path) {
    if (timed_out_ || ++nodes_ > budget_) {
      timed_out_ = true;
      return false;
    }
    colors = refine_colors(g_, std::move(colors));
    const int32_t v_count = g_.node_count();
    if (class_count(colors) == v_count) {
      if (!have_base_) {
        base_leaf_ = labeling(colors);
        have_base_ = true;
        return false;
      }
      return record_candidate(colors);
    }
    std::vector<int32_t> members = first_nonsingleton_cell(colors);
    if (first_path) {
      int32_t u = members[0];
      descend(individualize(colors, u), true);
      for (size_t t = 1; t < members.size() && !timed_out_; ++t) {
        if (uf_.find(members[t]) == uf_.find(u)) continue;
        descend(individualize(colors, members[t]), false);
      }
      return false;
    }
    for (size_t t = 0; t < members.size() && !timed_out_; ++t) {
      if (descend(individualize(colors, members[t]), false)) return true;
    }
    return false;
  }

  std::vector<int32_t> first_nonsingleton_cell(const std::vector<int32_t>& colors) const {
    std::vector<int32_t> count(class_count(colors), 0);
    for (int32_t c : colors) ++count[c];
    int32_t target = -1;
    for (int32_t c = 0; c < static_cast<int32_t>(count.size()); ++c) {
      if (count[c] >= 2) {
        target = c;
        break;
      }
    }
    std::vector<int32_t> members;
    for (int32_t v = 0; v < static_cast<int32_t>(colors.size()); ++v) {
      if (colors[v] == target) members.push_back(v);
    }
    return members;
  }

  // Splits v off as a new class ordered just before its old cellmates.
  std::vector<int32_t> individualize(const std::vector<int32_t>& colors, int32_t v) const {
    const int32_t n = static_cast<int32_t>(colors.size());
    std::vector<int32_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int32_t a, int32_t b) {
      return std::pair(colors[a], a == v ? 0 : 1) < std::pair(colors[b], b == v ? 0 : 1);
    });
    std::vector<int32_t> next(n);
    int32_t c = 0;
    for (int32_t i = 0; i < n; ++i) {
      if (i > 0) {
        auto key = [&](int32_t w) { return std::pair(colors[w], w == v ? 0 : 1); };
        if (key(order[i]) != key(order[i - 1])) ++c;
      }
      next[order[i]] = c;
    }
    return next;
  }

  std::vector<int32_t> labeling(const std::vector<int32_t>& colors) const {
    std::vector<int32_t> lab(colors.size());
    for (int32_t v = 0; v < static_cast<int32_t>(colors.size()); ++v) lab[colors[v]] = v;
    return lab;
  }

  bool record_candidate(const std::vector<int32_t>& colors) {
    const int32_t v_count = g_.node_count();
    std::vector<int32_t> leaf = labeling(colors);
    std::vector<int32_t> perm(v_count);
    for (int32_t r = 0; r < v_count; ++r) perm[base_leaf_[r]] = leaf[r];
    if (!is_graph_automorphism(perm)) return false;
    for (int32_t v = 0; v < v_count; ++v) uf_.unite(v, perm[v]);
    Permutation vars(perm.begin(), perm.begin() + g_.var_count);
    bool identity = true;
    for (int32_t i = 0; i < g_.var_count; ++i) {
      if (vars[i] != i) {
        identity = false;
        break;
      }
    }
    if (!identity && seen_.insert(vars).second) generators_.push_back(std::move(vars));
    return true;
  }

  bool is_graph_automorphism(const std::vector<int32_t>& perm) const {
    const int32_t v_count = g_.node_count();
    for (int32_t v = 0; v < v_count; ++v) {
      if (g_.node_colors[perm[v]] != g_.node_colors[v]) return false;
      const auto& image_adj = g_.adjacency[perm[v]];
      if (image_adj.size() != g_.adjacency[v].size()) return false;
      for (const auto& [u, ec] : g_.adjacency[v]) {
        auto it = std::lower_bound(image_adj.begin(), image_adj.end(),
                                   std::pair(perm[u], std::numeric_limits<int32_t>::min()));
        if (it == image_adj.end() || it->first != perm[u] || it->second != ec) return false;
      }
    }
    return true;
  }

  const ColoredGraph& g_;
  int64_t budget_;
  int64_t nodes_ = 0;
  bool timed_out_ = false;
  bool have_base_ = false;
  std::vector<int32_t> base_leaf_;
  UnionFind uf_;
  std::vector<Permutation> generators_;
  std::set<Permutation> seen_;
};

using ConstraintKey = std::tuple<Relation, int64_t, std::vector<std::pair<int32_t, int64_t>>>;

ConstraintKey permuted_key(const LinearConstraint& c, const Permutation* sigma) {
  std::vector<std::pair<int32_t, int64_t>> terms;
  terms.reserve(c.terms().size());
  for (const Term& t : c.terms()) {
    int32_t var = t.variable - 1;
    if (sigma != nullptr) var = (*sigma)[var];
    terms.emplace_back(var, t.coefficient);
  }
  std::sort(terms.begin(), terms.end());
  return {c.relation(), c.rhs(), std::move(terms)};
}

}  // namespace

ColoredGraph build_colored_graph(const BinaryProgram& bp) {
  const int32_t n = bp.num_vars();
  const int32_t m = static_cast<int32_t>(bp.constraints().size());

  std::vector<int64_t> var_values;
  var_values.reserve(n);
  for (int32_t v = 1; v <= n; ++v) var_values.push_back(bp.objective_coefficient(v));
  std::vector<int64_t> distinct_var = var_values;
  std::sort(distinct_var.begin(), distinct_var.end());
  distinct_var.erase(std::unique(distinct_var.begin(), distinct_var.end()), distinct_var.end());

  std::vector<std::pair<int32_t, int64_t>> cons_values;
  cons_values.reserve(m);
  for (const LinearConstraint& c : bp.constraints()) {
    cons_values.emplace_back(static_cast<int32_t>(c.relation()), c.rhs());
  }
  std::vector<std::pair<int32_t, int64_t>> distinct_cons = cons_values;
  std::sort(distinct_cons.begin(), distinct_cons.end());
  distinct_cons.erase(std::unique(distinct_cons.begin(), distinct_cons.end()),
                      distinct_cons.end());

  std::vector<int64_t> distinct_edge;
  for (const LinearConstraint& c : bp.constraints()) {
    for (const Term& t : c.terms()) distinct_edge.push_back(t.coefficient);
  }
  std::sort(distinct_edge.begin(), distinct_edge.end());
  distinct_edge.erase(std::unique(distinct_edge.begin(), distinct_edge.end()),
                      distinct_edge.end());

  std::vector<int32_t> colors(static_cast<size_t>(n) + m);
  for (int32_t v = 0; v < n; ++v) colors[v] = rank_of(distinct_var, var_values[v]);
  const int32_t cons_offset = static_cast<int32_t>(distinct_var.size());
  for (int32_t k = 0; k < m; ++k) {
    auto it = std::lower_bound(distinct_cons.begin(), distinct_cons.end(), cons_values[k]);
    colors[n + k] = cons_offset + static_cast<int32_t>(it - distinct_cons.begin());
  }

  std::vector<std::vector<std::pair<int32_t, int32_t>>> adjacency(static_cast<size_t>(n) + m);
  for (int32_t k = 0; k < m; ++k) {
    const LinearConstraint& c = bp.constraints()[k];
    for (const Term& t : c.terms()) {
      int32_t ec = rank_of(distinct_edge, t.coefficient);
      adjacency[t.variable - 1].emplace_back(n + k, ec);
      adjacency[n + k].emplace_back(t.variable - 1, ec);
    }
  }
  return ColoredGraph{n, m, std::move(colors), std::move(adjacency), bp};
}

std::vector<int32_t> refine_colors(const ColoredGraph& g, std::vector<int32_t> colors) {
  const int32_t n = g.node_count();
  if (n == 0) return colors;
  int32_t classes = class_count(colors);
  while (true) {
    std::vector<std::vector<int64_t>> keys(n);
    for (int32_t v = 0; v < n; ++v) {
      keys[v].reserve(g.adjacency[v].size() + 1);
      keys[v].push_back(colors[v]);
      for (const auto& [u, ec] : g.adjacency[v]) keys[v].push_back(pack(ec, colors[u]));
      std::sort(keys[v].begin() + 1, keys[v].end());
    }
    std::vector<int32_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int32_t a, int32_t b) { return keys[a] < keys[b]; });
    std::vector<int32_t> next(n);
    int32_t c = 0;
    for (int32_t i = 0; i < n; ++i) {
      if (i > 0 && keys[order[i]] != keys[order[i - 1]]) ++c;
      next[order[i]] = c;
    }
    colors = std::move(next);
    if (c + 1 == classes) return colors;
    classes = c + 1;
  }
}

SymmetryReport find_generators(const ColoredGraph& g, int64_t budget) {
  if (budget < 1) throw ContractViolation("symmetry search budget must be >= 1");
  AutomorphismSearch search(g, budget);
  return search.run();
}

bool verify_symmetry(const BinaryProgram& bp, const Permutation& sigma) {
  const int32_t n = bp.num_vars();
  if (static_cast<int32_t>(sigma.size()) != n) {
    throw ContractViolation("permutation length does not match variable count");
  }
  std::vector<bool> hit(n, false);
  for (int32_t image : sigma) {
    if (image < 0 || image >= n || hit[image]) {
      throw ContractViolation("mapping is not a bijection on the variables");
    }
    hit[image] = true;
  }
  for (int32_t i = 0; i < n; ++i) {
    if (bp.objective_coefficient(sigma[i] + 1) != bp.objective_coefficient(i + 1)) {
      return false;
    }
  }
  std::map<ConstraintKey, int32_t> pool;
  for (const LinearConstraint& c : bp.constraints()) ++pool[permuted_key(c, nullptr)];
  for (const LinearConstraint& c : bp.constraints()) {
    auto it = pool.find(permuted_key(c, &sigma));
    if (it == pool.end() || it->second == 0) return false;
    --it->second;
  }
  return true;
}

std::vector<Permutation> brute_force_automorphisms(const ColoredGraph& g, int32_t max_vars) {
  if (g.var_count > max_vars) {
    throw SizeLimitError("brute-force automorphism search refused: too many variables");
  }
  const int32_t n = g.var_count;
  std::map<int32_t, std::vector<int32_t>> by_color;
  for (int32_t v = 0; v < n; ++v) by_color[g.node_colors[v]].push_back(v);
  std::vector<std::vector<int32_t>> classes;
  classes.reserve(by_color.size());
  for (auto& [color, members] : by_color) classes.push_back(std::move(members));

  std::vector<Permutation> result;
  Permutation perm(n);
  std::iota(perm.begin(), perm.end(), 0);

  // Odometer over per-class arrangements in lexicographic order.
  std::vector<int32_t> arrangement;
  auto enumerate = [&](auto&& self, size_t class_idx) -> void {
    if (class_idx == classes.size()) {
      bool identity = true;
      for (int32_t i = 0; i < n; ++i) {
        if (perm[i] != i) {
          identity = false;
          break;
        }
      }
      if (!identity && verify_symmetry(g.source, perm)) result.push_back(perm);
      return;
    }
    const std::vector<int32_t>& members = classes[class_idx];
    std::vector<int32_t> images = members;
    do {
      for (size_t i = 0; i < members.size(); ++i) perm[members[i]] = images[i];
      self(self, class_idx + 1);
    } while (std::next_permutation(images.begin(), images.end()));
    for (int32_t m : members) perm[m] = m;
  };
  enumerate(enumerate, 0);
  return result;
}

std::vector<std::vector<int32_t>> orbit_partition(const std::vector<Permutation>& generators,
                                                  int32_t n) {
  UnionFind uf(n);
  for (const Permutation& p : generators) {
    if (static_cast<int32_t>(p.size()) != n) {
      throw ContractViolation("generator length does not match variable count");
    }
    for (int32_t i = 0; i < n; ++i) {
      if (p[i] < 0 || p[i] >= n) throw ContractViolation("generator image out of range");
      uf.unite(i, p[i]);
    }
  }
  std::map<int32_t, std::vector<int32_t>> cells;
  for (int32_t i = 0; i < n; ++i) cells[uf.find(i)].push_back(i + 1);
  std::vector<std::vector<int32_t>> result;
  result.reserve(cells.size());
  for (auto& [root, cell] : cells) result.push_back(std::move(cell));
  return result;
}

std::string cycle_notation(const Permutation& perm) {
  const int32_t n = static_cast<int32_t>(perm.size());
  std::vector<bool> done(n, false);
  std::string out;
  for (int32_t i = 0; i < n; ++i) {
    if (done[i] || perm[i] == i) continue;
    out += "(";
    int32_t j = i;
    bool first = true;
    while (!done[j]) {
      done[j] = true;
      out += (first ? "" : " ") + std::to_string(j + 1);
      first = false;
      j = perm[j];
    }
    out += ")";
  }
  return out.empty() ? "()" : out;
}

}  // namespace bitround
