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

#ifndef BITROUND_TESTS_TEST_HELPERS_HPP_
#define BITROUND_TESTS_TEST_HELPERS_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "bitround/generators.hpp"
#include "bitround/model.hpp"
#include "bitround/symmetry.hpp"

namespace testutil {

// Independent reference for coefficient rounding: builds the binary expansion
// as a character string by repeated division, blanks everything after the
// leading `level` digits, and reassembles. No shifts or masks on purpose.
inline int64_t string_round(int64_t c, int level) {
  bool negative = c < 0;
  unsigned long long mag =
      negative ? -static_cast<unsigned long long>(c) : static_cast<unsigned long long>(c);
  std::string bits;
  while (mag > 0) {
    bits.push_back(static_cast<char>('0' + mag % 2));
    mag /= 2;
  }
  std::reverse(bits.begin(), bits.end());  // most significant digit first
  for (size_t i = static_cast<size_t>(level); i < bits.size(); ++i) bits[i] = '0';
  unsigned long long result = 0;
  for (char b : bits) result = result * 2 + static_cast<unsigned long long>(b - '0');
  if (negative) {
    if (result == 1ULL << 63) return std::numeric_limits<int64_t>::min();
    return -static_cast<int64_t>(result);
  }
  return static_cast<int64_t>(result);
}

// Full group generated by `gens` (identity included), by breadth-first
// closure under composition. Only for tiny groups.
inline std::vector<bitround::Permutation> closure(const std::vector<bitround::Permutation>& gens,
                                                  int32_t n) {
  bitround::Permutation identity(n);
  std::iota(identity.begin(), identity.end(), 0);
  std::set<bitround::Permutation> seen{identity};
  std::vector<bitround::Permutation> frontier{identity};
  while (!frontier.empty()) {
    std::vector<bitround::Permutation> next;
    for (const bitround::Permutation& p : frontier) {
      for (const bitround::Permutation& g : gens) {
        bitround::Permutation q(n);
        for (int32_t i = 0; i < n; ++i) q[i] = g[p[i]];
        if (seen.insert(q).second) next.push_back(q);
      }
    }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

// Small random program with distinct-variable constraint rows, nonzero
// coefficients in [-cmax, cmax], and any of the three relations.
inline bitround::BinaryProgram random_bp(bitround::Rng& rng, int32_t max_vars, int64_t cmax,
                                         const std::string& name = "rbp") {
  using namespace bitround;
  int32_t n = static_cast<int32_t>(uniform_int(rng, 1, max_vars + 1));
  Sense sense = uniform_int(rng, 0, 2) == 0 ? Sense::Minimize : Sense::Maximize;
  ObjectiveMap objective;
  for (int32_t v = 1; v <= n; ++v) {
    if (uniform_int(rng, 0, 4) == 0) continue;  // some variables stay free of cost
    int64_t c = uniform_int(rng, -cmax, cmax + 1);
    if (c != 0) objective[v] = c;
  }
  int32_t rows = static_cast<int32_t>(uniform_int(rng, 0, 4));
  std::vector<LinearConstraint> constraints;
  for (int32_t k = 0; k < rows; ++k) {
    int32_t width = static_cast<int32_t>(uniform_int(rng, 1, n + 1));
    std::set<int32_t> vars;
    while (static_cast<int32_t>(vars.size()) < width) {
      vars.insert(static_cast<int32_t>(uniform_int(rng, 1, n + 1)));
    }
    std::vector<Term> terms;
    for (int32_t v : vars) {
      int64_t a = 0;
      while (a == 0) a = uniform_int(rng, -cmax, cmax + 1);
      terms.push_back({a, v});
    }
    Relation rel;
    switch (uniform_int(rng, 0, 3)) {
      case 0:
        rel = Relation::LessEq;
        break;
      case 1:
        rel = Relation::Equal;
        break;
      default:
        rel = Relation::GreaterEq;
        break;
    }
    int64_t rhs = uniform_int(rng, -2 * cmax, 2 * cmax + 1);
    constraints.emplace_back(std::move(terms), rel, rhs);
  }
  return BinaryProgram(name, sense, n, std::move(objective), std::move(constraints));
}

// Long-double Kahan reference for the shifted geometric mean.
inline double sgm_reference(const std::vector<double>& values, double shift) {
  long double sum = 0.0L, comp = 0.0L;
  for (double v : values) {
    long double x = std::log(static_cast<long double>(v) + static_cast<long double>(shift));
    long double y = x - comp;
    long double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  long double mean = sum / static_cast<long double>(values.size());
  return static_cast<double>(std::exp(mean) - static_cast<long double>(shift));
}

}  // namespace testutil

#endif  // BITROUND_TESTS_TEST_HELPERS_HPP_
