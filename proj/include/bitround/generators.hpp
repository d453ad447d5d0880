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

#ifndef BITROUND_GENERATORS_HPP_
#define BITROUND_GENERATORS_HPP_

#include <cstdint>
#include <random>

#include "bitround/model.hpp"

namespace bitround {

// mt19937_64 rather than the std distributions: the engine's output sequence
// is pinned by the standard, the distributions' is not, and generated
// instances must be byte-identical for a given seed everywhere.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}
  uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

// Discrete uniform on [a, b), unbiased via rejection sampling.
int64_t uniform_int(Rng& rng, int64_t a, int64_t b);

// Uniform in [0, 1) with 53-bit resolution.
double uniform_unit(Rng& rng);

// Capacitated facility location: minimize sum c_ij x_ij + sum f_i y_i subject
// to every customer assigned exactly once and at most C assignments per open
// facility. Facilities sit at angles 2*pi*i/n on a circle of radius
// circle_scale; customers are uniform in the centered square of side
// square_scale. Distances are scaled into [0,1] by the max distance, rounded
// to decimal_round_digits digits, multiplied by objective_scale, truncated.
//
// Draw order (fixed for reproducibility): customer coordinates row by row
// (x then y per customer), then the shared capacity C from the inclusive
// interval [ceil(m/n), ceil(2m/n)], then fixed costs only when a range was
// supplied. Variables: x_ij at (i-1)*m + j, then y_i at n*m + i.
struct CflpRecipe {
  int32_t n = 4;   // facilities
  int32_t m = 12;  // customers
  double square_scale = 1.0;
  double circle_scale = 4.0;
  int decimal_round_digits = 2;
  int64_t objective_scale = 1'000'000;
  int64_t fixed_cost_low = 0;   // f_i = fixed_cost_low when low == high,
  int64_t fixed_cost_high = 0;  // else drawn from [low, high)
  uint64_t seed = 0;
};

BinaryProgram generate_cflp(const CflpRecipe& recipe);

// Clustered knapsack: k clusters of items; cluster j draws a base value
// gamma_j from [base_value_low, base_value_high) and one shared weight
// omega_j from [weight_low, weight_high); item values are gamma_j plus noise
// from [-noise_sigma, noise_sigma), clamped below at 1; capacity is half the
// total weight, floored. Small noise_sigma makes within-cluster items nearly
// interchangeable, which is the symmetry knob the experiments turn.
//
// Draw order: cluster sizes first (random mode only: k-1 distinct cut points
// from {1..n-1} by rejection), then gamma_j and omega_j per cluster, then one
// noise draw per item in cluster order (skipped entirely when sigma is 0).
struct KnapsackRecipe {
  int32_t n = 60;
  int32_t k = 6;
  int64_t base_value_low = 1 << 10;
  int64_t base_value_high = 1 << 20;
  int64_t noise_sigma = 1 << 12;
  int64_t weight_low = 50;
  int64_t weight_high = 500;
  bool balanced = true;  // equal-size clusters (first n mod k get one extra)
  uint64_t seed = 0;
};

BinaryProgram generate_knapsack(const KnapsackRecipe& recipe);

}  // namespace bitround

#endif  // BITROUND_GENERATORS_HPP_
