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

#include <cmath>
#include <cstdint>
#include <vector>

#include "doctest.h"

#include "bitround/generators.hpp"
#include "bitround/model.hpp"
#include "bitround/opb.hpp"
#include "bitround/symmetry.hpp"

using namespace bitround;

TEST_CASE("uniform draws stay in the half-open interval") {
  Rng rng(1);
  CHECK(uniform_int(rng, 5, 6) == 5);
  for (int i = 0; i < 1000; ++i) {
    int64_t v = uniform_int(rng, -4, 4);
    CHECK(v >= -4);
    CHECK(v < 4);
  }
  CHECK_THROWS_AS(uniform_int(rng, 3, 3), DomainError);
  CHECK_THROWS_AS(uniform_int(rng, 4, 3), DomainError);
}

TEST_CASE("uniform draws are balanced") {
  Rng rng(2024);
  const int draws = 100000;
  int ones = 0;
  for (int i = 0; i < draws; ++i) ones += uniform_int(rng, 0, 2) == 1;
  // 3 sigma of Binomial(10^5, 1/2): 3 * sqrt(25000) ~ 474
  CHECK(std::abs(ones - draws / 2) <= 474);
}

TEST_CASE("unit draws live in [0,1)") {
  Rng rng(7);
  for (int i = 0; i < 1000; ++i) {
    double u = uniform_unit(rng);
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("facility location has the documented shape") {
  BinaryProgram bp = generate_cflp(CflpRecipe{.n = 2, .m = 3, .seed = 3});
  CHECK(bp.sense() == Sense::Minimize);
  CHECK(bp.num_vars() == 8);              // 6 assignment + 2 opening
  CHECK(bp.constraints().size() == 5);    // 3 assignment + 2 capacity
  for (int j = 0; j < 3; ++j) {
    CHECK(bp.constraints()[j].relation() == Relation::Equal);
    CHECK(bp.constraints()[j].rhs() == 1);
  }
  for (int i = 3; i < 5; ++i) {
    CHECK(bp.constraints()[i].relation() == Relation::GreaterEq);  // stored <= form
    CHECK(bp.constraints()[i].rhs() == 0);
  }
}

TEST_CASE("facility costs honor the decimal grid") {
  BinaryProgram bp = generate_cflp(CflpRecipe{.n = 4, .m = 12, .decimal_round_digits = 1,
                                              .seed = 7});
  CHECK_FALSE(bp.objective().empty());
  for (const auto& [var, coef] : bp.objective()) {
    CHECK(coef % 100000 == 0);
    CHECK(coef >= 0);
    CHECK(coef <= 1000000);
  }
}

TEST_CASE("opening every facility and assigning greedily is feasible") {
  for (uint64_t seed = 0; seed < 20; ++seed) {
    CflpRecipe recipe{.n = 3, .m = 7, .seed = seed};
    BinaryProgram bp = generate_cflp(recipe);
    int32_t n = recipe.n, m = recipe.m;
    // capacity C is readable off the stored coefficient of y_i
    int64_t capacity = 0;
    for (const Term& t : bp.constraints()[m].terms()) {
      if (t.variable > n * m) capacity = magnitude(t.coefficient);
    }
    REQUIRE(capacity >= 1);
    Assignment x = Assignment::zeros(bp.num_vars());
    for (int32_t j = 0; j < m; ++j) {
      int32_t facility = j / static_cast<int32_t>(capacity);  // fill in order
      REQUIRE(facility < n);
      x.set(facility * m + j, true);
    }
    for (int32_t i = 0; i < n; ++i) x.set(n * m + i, true);
    CHECK(is_feasible(bp, x));
  }
}

TEST_CASE("generated programs are byte-reproducible") {
  CflpRecipe cflp{.n = 3, .m = 5, .seed = 11};
  CHECK(write_opb(generate_cflp(cflp)) == write_opb(generate_cflp(cflp)));
  KnapsackRecipe knap{.n = 20, .k = 4, .balanced = false, .seed = 11};
  CHECK(write_opb(generate_knapsack(knap)) == write_opb(generate_knapsack(knap)));
  KnapsackRecipe other = knap;
  other.seed = 12;
  CHECK(write_opb(generate_knapsack(other)) != write_opb(generate_knapsack(knap)));
}

TEST_CASE("balanced clusters split as equally as possible") {
  BinaryProgram six = generate_knapsack(KnapsackRecipe{.n = 6, .k = 3, .noise_sigma = 0});
  BinaryProgram seven = generate_knapsack(KnapsackRecipe{.n = 7, .k = 3, .noise_sigma = 0});
  auto cluster_sizes = [](const BinaryProgram& bp) {
    // zero noise -> items in one cluster share one value; count runs
    std::vector<int> sizes;
    int64_t prev = 0;
    for (int32_t v = 1; v <= bp.num_vars(); ++v) {
      int64_t c = bp.objective_coefficient(v);
      if (v == 1 || c != prev) sizes.push_back(0);
      ++sizes.back();
      prev = c;
    }
    return sizes;
  };
  // runs can only merge if two clusters drew equal values; these seeds do not
  CHECK(cluster_sizes(six) == std::vector<int>{2, 2, 2});
  CHECK(cluster_sizes(seven) == std::vector<int>{3, 2, 2});
}

TEST_CASE("random cluster sizes cover n and stay positive") {
  for (uint64_t seed = 0; seed < 30; ++seed) {
    KnapsackRecipe recipe{.n = 23, .k = 5, .noise_sigma = 0, .balanced = false, .seed = seed};
    BinaryProgram bp = generate_knapsack(recipe);
    CHECK(bp.num_vars() == 23);
    REQUIRE(bp.constraints().size() == 1);
    CHECK(bp.constraints()[0].terms().size() == 23);
  }
}

TEST_CASE("knapsack capacity is strictly between zero and the total weight") {
  for (uint64_t seed = 0; seed < 20; ++seed) {
    KnapsackRecipe recipe{.n = 15, .k = 4, .seed = seed};
    BinaryProgram bp = generate_knapsack(recipe);
    // stored as -w.x >= -W
    int64_t total = 0;
    for (const Term& t : bp.constraints()[0].terms()) total += magnitude(t.coefficient);
    int64_t capacity = magnitude(bp.constraints()[0].rhs());
    CHECK(capacity > 0);
    CHECK(capacity < total);
  }
}

TEST_CASE("zero noise makes within-cluster swaps formulation symmetries") {
  KnapsackRecipe recipe{.n = 10, .k = 3, .noise_sigma = 0, .seed = 4};
  BinaryProgram bp = generate_knapsack(recipe);
  // locate the clusters from equal (value, weight) pairs
  const auto& row = bp.constraints()[0].terms();
  for (int32_t a = 1; a <= bp.num_vars(); ++a) {
    for (int32_t b = a + 1; b <= bp.num_vars(); ++b) {
      bool same_value = bp.objective_coefficient(a) == bp.objective_coefficient(b);
      bool same_weight = row[a - 1].coefficient == row[b - 1].coefficient;
      if (!(same_value && same_weight)) continue;
      Permutation swap(bp.num_vars());
      for (int32_t v = 0; v < bp.num_vars(); ++v) swap[v] = v;
      swap[a - 1] = b - 1;
      swap[b - 1] = a - 1;
      CHECK(verify_symmetry(bp, swap));
    }
  }
}

TEST_CASE("recipe validation rejects nonsense") {
  CHECK_THROWS_AS(generate_cflp(CflpRecipe{.n = 0}), ContractViolation);
  CHECK_THROWS_AS(generate_cflp(CflpRecipe{.decimal_round_digits = 12}), ContractViolation);
  CHECK_THROWS_AS(generate_knapsack(KnapsackRecipe{.n = 3, .k = 5}), ContractViolation);
  CHECK_THROWS_AS(generate_knapsack(KnapsackRecipe{.weight_low = 0}), ContractViolation);
}
