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

#include "bitround/generators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <string>
#include <vector>

namespace bitround {

int64_t uniform_int(Rng& rng, int64_t a, int64_t b) {
  if (a >= b) throw DomainError("uniform_int requires a < b");
  uint64_t range = static_cast<uint64_t>(b) - static_cast<uint64_t>(a);
  // Accept only draws below the largest multiple of range, so every residue
  // is equally likely.
  uint64_t residue = (std::numeric_limits<uint64_t>::max() % range + 1) % range;
  uint64_t draw = 0;
  do {
    draw = rng.next();
  } while (residue != 0 && draw >= std::numeric_limits<uint64_t>::max() - residue + 1);
  return static_cast<int64_t>(static_cast<uint64_t>(a) + draw % range);
}

double uniform_unit(Rng& rng) { return static_cast<double>(rng.next() >> 11) * 0x1.0p-53; }

namespace {

void check_cflp(const CflpRecipe& r) {
  if (r.n < 1 || r.m < 1) throw ContractViolation("cflp recipe requires n >= 1 and m >= 1");
  if (!(r.square_scale > 0) || !(r.circle_scale > 0)) {
    throw ContractViolation("cflp recipe requires positive scales");
  }
  if (r.decimal_round_digits < 0 || r.decimal_round_digits > 9) {
    throw ContractViolation("cflp recipe supports 0..9 decimal digits");
  }
  if (r.objective_scale < 1) throw ContractViolation("cflp objective_scale must be positive");
  if (r.fixed_cost_low > r.fixed_cost_high) {
    throw ContractViolation("cflp fixed cost range is inverted");
  }
}

void check_knapsack(const KnapsackRecipe& r) {
  if (r.n < 1 || r.k < 1 || r.k > r.n) {
    throw ContractViolation("knapsack recipe requires 1 <= k <= n");
  }
  if (r.weight_low < 1 || r.weight_low > r.weight_high) {
    throw ContractViolation("knapsack recipe requires 1 <= weight_low <= weight_high");
  }
  if (r.base_value_low > r.base_value_high) {
    throw ContractViolation("knapsack base value range is inverted");
  }
  if (r.noise_sigma < 0) throw ContractViolation("knapsack noise_sigma must be >= 0");
}

// Half-open draw that degrades to a constant when the range is a point.
int64_t draw_range(Rng& rng, int64_t low, int64_t high) {
  return low == high ? low : uniform_int(rng, low, high);
}

}  // namespace

BinaryProgram generate_cflp(const CflpRecipe& recipe) {
  check_cflp(recipe);
  const int32_t n = recipe.n;
  const int32_t m = recipe.m;
  Rng rng(recipe.seed);

  std::vector<double> fx(n), fy(n);
  for (int32_t i = 0; i < n; ++i) {
    double phi = 2.0 * std::numbers::pi * (i + 1) / n;
    fx[i] = recipe.circle_scale * std::cos(phi);
    fy[i] = recipe.circle_scale * std::sin(phi);
  }
  std::vector<double> cx(m), cy(m);
  for (int32_t j = 0; j < m; ++j) {
    cx[j] = (uniform_unit(rng) - 0.5) * recipe.square_scale;
    cy[j] = (uniform_unit(rng) - 0.5) * recipe.square_scale;
  }
  int64_t cap_low = (static_cast<int64_t>(m) + n - 1) / n;
  int64_t cap_high = (2 * static_cast<int64_t>(m) + n - 1) / n;
  int64_t capacity = cap_low == cap_high ? cap_low : uniform_int(rng, cap_low, cap_high + 1);
  std::vector<int64_t> fixed_cost(n, recipe.fixed_cost_low);
  if (recipe.fixed_cost_low < recipe.fixed_cost_high) {
    for (int32_t i = 0; i < n; ++i) {
      fixed_cost[i] = uniform_int(rng, recipe.fixed_cost_low, recipe.fixed_cost_high);
    }
  }

  std::vector<double> dist(static_cast<size_t>(n) * m);
  double max_dist = 0.0;
  for (int32_t i = 0; i < n; ++i) {
    for (int32_t j = 0; j < m; ++j) {
      double dx = fx[i] - cx[j];
      double dy = fy[i] - cy[j];
      double d = std::sqrt(dx * dx + dy * dy);
      dist[static_cast<size_t>(i) * m + j] = d;
      max_dist = std::max(max_dist, d);
    }
  }
  if (max_dist == 0.0) max_dist = 1.0;

  int64_t pow10 = 1;
  for (int d = 0; d < recipe.decimal_round_digits; ++d) pow10 *= 10;

  auto x_var = [m](int32_t i, int32_t j) { return i * m + j + 1; };  // i, j 0-based here
  const int32_t y_base = n * m;

  ObjectiveMap objective;
  for (int32_t i = 0; i < n; ++i) {
    for (int32_t j = 0; j < m; ++j) {
      double scaled = dist[static_cast<size_t>(i) * m + j] / max_dist;
      int64_t decimal = std::llround(scaled * static_cast<double>(pow10));
      __int128 coef =
          static_cast<__int128>(decimal) * recipe.objective_scale / pow10;  // truncation
      if (coef > std::numeric_limits<int64_t>::max()) {
        throw GenerationError("cflp scaled coefficient exceeds 64 bits");
      }
      if (coef != 0) objective[x_var(i, j)] = static_cast<int64_t>(coef);
    }
  }
  for (int32_t i = 0; i < n; ++i) {
    if (fixed_cost[i] != 0) objective[y_base + i + 1] = fixed_cost[i];
  }

  std::vector<LinearConstraint> constraints;
  constraints.reserve(static_cast<size_t>(n) + m);
  for (int32_t j = 0; j < m; ++j) {
    std::vector<Term> row;
    row.reserve(n);
    for (int32_t i = 0; i < n; ++i) row.push_back({1, x_var(i, j)});
    constraints.emplace_back(std::move(row), Relation::Equal, 1);
  }
  for (int32_t i = 0; i < n; ++i) {
    std::vector<Term> row;
    row.reserve(m + 1);
    for (int32_t j = 0; j < m; ++j) row.push_back({1, x_var(i, j)});
    row.push_back({checked_neg(capacity), y_base + i + 1});
    constraints.emplace_back(std::move(row), Relation::LessEq, 0);
  }

  std::string name = "cflp-n" + std::to_string(n) + "-m" + std::to_string(m) + "-r" +
                     std::to_string(recipe.decimal_round_digits) + "-s" +
                     std::to_string(recipe.seed);
  return BinaryProgram(std::move(name), Sense::Minimize, n * m + n, std::move(objective),
                       std::move(constraints));
}

BinaryProgram generate_knapsack(const KnapsackRecipe& recipe) {
  check_knapsack(recipe);
  const int32_t n = recipe.n;
  const int32_t k = recipe.k;
  Rng rng(recipe.seed);

  std::vector<int32_t> sizes(k);
  if (recipe.balanced) {
    int32_t q = n / k;
    int32_t rem = n % k;
    for (int32_t j = 0; j < k; ++j) sizes[j] = q + (j < rem ? 1 : 0);
  } else if (k == 1) {
    sizes[0] = n;
  } else {
    std::set<int64_t> cuts;
    while (static_cast<int32_t>(cuts.size()) < k - 1) cuts.insert(uniform_int(rng, 1, n));
    int64_t prev = 0;
    int32_t j = 0;
    for (int64_t cut : cuts) {
      sizes[j++] = static_cast<int32_t>(cut - prev);
      prev = cut;
    }
    sizes[k - 1] = static_cast<int32_t>(n - prev);
  }

  std::vector<int64_t> gamma(k), omega(k);
  for (int32_t j = 0; j < k; ++j) {
    gamma[j] = draw_range(rng, recipe.base_value_low, recipe.base_value_high);
    omega[j] = draw_range(rng, recipe.weight_low, recipe.weight_high);
  }

  std::vector<int64_t> values, weights;
  values.reserve(n);
  weights.reserve(n);
  try {
    for (int32_t j = 0; j < k; ++j) {
      for (int32_t item = 0; item < sizes[j]; ++item) {
        int64_t v = gamma[j];
        if (recipe.noise_sigma > 0) {
          v = checked_add(v, uniform_int(rng, -recipe.noise_sigma, recipe.noise_sigma));
        }
        values.push_back(std::max<int64_t>(v, 1));
        weights.push_back(omega[j]);
      }
    }
    int64_t total_weight = 0;
    for (int64_t w : weights) total_weight = checked_add(total_weight, w);
    int64_t capacity = total_weight / 2;
    std::string name = "knap-n" + std::to_string(n) + "-k" + std::to_string(k) +
                       (recipe.balanced ? "-bal" : "-rnd") + "-s" + std::to_string(recipe.seed);
    return make_knapsack(std::move(name), values, weights, capacity);
  } catch (const OverflowError& e) {
    throw GenerationError(std::string("knapsack recipe overflow: ") + e.what());
  }
}

}  // namespace bitround
