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

#include <limits>

#include "doctest.h"

#include "bitround/generators.hpp"
#include "bitround/model.hpp"
#include "bitround/rational.hpp"
#include "test_helpers.hpp"

using namespace bitround;

namespace {

BinaryProgram two_var_program(int64_t c1, int64_t c2, Sense sense = Sense::Minimize) {
  return BinaryProgram("t", sense, 2, ObjectiveMap{{1, c1}, {2, c2}}, {});
}

}  // namespace

TEST_CASE("objective evaluation") {
  BinaryProgram bp = two_var_program(3, 2);
  CHECK(evaluate_objective(bp, Assignment{true, false}) == 3);
  CHECK(evaluate_objective(bp, Assignment{false, false}) == 0);

  BinaryProgram three("t", Sense::Minimize, 3, {{1, -5}, {2, 7}, {3, 1}}, {});
  CHECK(evaluate_objective(three, Assignment{true, true, true}) == 3);

  CHECK_THROWS_AS(evaluate_objective(bp, Assignment{true}), ContractViolation);
}

TEST_CASE("objective evaluation detects overflow") {
  int64_t big = std::numeric_limits<int64_t>::max();
  BinaryProgram bp("t", Sense::Minimize, 2, {{1, big}, {2, big}}, {});
  CHECK(evaluate_objective(bp, Assignment{true, false}) == big);
  CHECK_THROWS_AS(evaluate_objective(bp, Assignment{true, true}), OverflowError);
}

TEST_CASE("objective evaluation is linear in the objective") {
  Rng rng(41);
  for (int round = 0; round < 50; ++round) {
    int32_t n = static_cast<int32_t>(uniform_int(rng, 1, 9));
    ObjectiveMap c, cprime, csum;
    for (int32_t v = 1; v <= n; ++v) {
      int64_t a = uniform_int(rng, -50, 51);
      int64_t b = uniform_int(rng, -50, 51);
      if (a != 0) c[v] = a;
      if (b != 0) cprime[v] = b;
      if (a + b != 0) csum[v] = a + b;
    }
    Assignment x = Assignment::zeros(n);
    for (int32_t v = 0; v < n; ++v) x.set(v, uniform_int(rng, 0, 2) == 1);
    BinaryProgram bp1("a", Sense::Minimize, n, c, {});
    BinaryProgram bp2("b", Sense::Minimize, n, cprime, {});
    BinaryProgram bp3("c", Sense::Minimize, n, csum, {});
    CHECK(evaluate_objective(bp3, x) ==
          evaluate_objective(bp1, x) + evaluate_objective(bp2, x));
  }
}

TEST_CASE("feasibility for the three relations") {
  BinaryProgram knap = make_knapsack("k", {1, 1}, {3, 3}, 4);
  CHECK_FALSE(is_feasible(knap, Assignment{true, true}));
  CHECK(is_feasible(knap, Assignment{true, false}));

  BinaryProgram eq("t", Sense::Minimize, 2, {},
                   {LinearConstraint({{1, 1}, {1, 2}}, Relation::Equal, 1)});
  CHECK(is_feasible(eq, Assignment{true, false}));
  CHECK_FALSE(is_feasible(eq, Assignment{true, true}));
  CHECK_FALSE(is_feasible(eq, Assignment{false, false}));

  CHECK_THROWS_AS(is_feasible(eq, Assignment{true}), ContractViolation);
}

TEST_CASE("single-customer facility program accepts the obvious point") {
  BinaryProgram bp = generate_cflp(CflpRecipe{.n = 1, .m = 1, .seed = 7});
  // x_11 then y_1
  CHECK(is_feasible(bp, Assignment{true, true}));
  CHECK_FALSE(is_feasible(bp, Assignment{true, false}));  // capacity row fails
}

TEST_CASE("feasibility is monotone under constraint deletion") {
  Rng rng(42);
  for (int round = 0; round < 100; ++round) {
    BinaryProgram bp = testutil::random_bp(rng, 6, 5);
    if (bp.constraints().empty()) continue;
    int32_t n = bp.num_vars();
    Assignment x = Assignment::zeros(n);
    for (int32_t v = 0; v < n; ++v) x.set(v, uniform_int(rng, 0, 2) == 1);
    if (!is_feasible(bp, x)) continue;
    for (size_t drop = 0; drop < bp.constraints().size(); ++drop) {
      std::vector<LinearConstraint> kept;
      for (size_t k = 0; k < bp.constraints().size(); ++k) {
        if (k != drop) kept.push_back(bp.constraints()[k]);
      }
      BinaryProgram smaller(bp.name(), bp.sense(), n, bp.objective(), std::move(kept));
      CHECK(is_feasible(smaller, x));
    }
  }
}

TEST_CASE("constraint construction canonicalizes") {
  LinearConstraint merged({{2, 1}, {2, 1}}, Relation::LessEq, 3);
  REQUIRE(merged.terms().size() == 1);
  // <= is stored as >= of the negation
  CHECK(merged.relation() == Relation::GreaterEq);
  CHECK(merged.terms()[0].coefficient == -4);
  CHECK(merged.terms()[0].variable == 1);
  CHECK(merged.rhs() == -3);

  // merge-to-zero entries drop out; an empty row is rejected
  LinearConstraint partial({{1, 1}, {-1, 1}, {5, 2}}, Relation::GreaterEq, 2);
  REQUIRE(partial.terms().size() == 1);
  CHECK(partial.terms()[0].variable == 2);
  CHECK_THROWS_AS(LinearConstraint({{1, 1}, {-1, 1}}, Relation::GreaterEq, 0), DomainError);

  // terms come out sorted by variable index
  LinearConstraint sorted({{1, 3}, {2, 1}}, Relation::GreaterEq, 1);
  CHECK(sorted.terms()[0].variable == 1);
  CHECK(sorted.terms()[1].variable == 3);
}

TEST_CASE("program construction validates indices and drops zero costs") {
  CHECK_THROWS_AS(BinaryProgram("t", Sense::Minimize, 2, {{3, 1}}, {}), DomainError);
  CHECK_THROWS_AS(BinaryProgram("t", Sense::Minimize, 0, {{1, 1}}, {}), DomainError);
  CHECK_THROWS_AS(
      BinaryProgram("t", Sense::Minimize, 1, {},
                    {LinearConstraint({{1, 2}}, Relation::GreaterEq, 0)}),
      DomainError);

  BinaryProgram bp("t", Sense::Minimize, 2, {{1, 0}, {2, 5}}, {});
  CHECK(bp.objective().size() == 1);
  CHECK(bp.objective_coefficient(1) == 0);
  CHECK(bp.objective_coefficient(2) == 5);
}

TEST_CASE("largest coefficient scans objective, rows, and right-hand sides") {
  BinaryProgram bp("t", Sense::Minimize, 2, {{1, 3}, {2, -17}},
                   {LinearConstraint({{1, 1}, {1, 2}}, Relation::GreaterEq, 1)});
  CHECK(largest_abs_coefficient(bp) == 17);

  BinaryProgram empty("t", Sense::Minimize, 1, {}, {});
  CHECK(largest_abs_coefficient(empty) == 0);

  BinaryProgram knap = make_knapsack("k", {30, 20}, {512, 600}, 1024);
  CHECK(largest_abs_coefficient(knap) == 1024);
}

TEST_CASE("assignments order lexicographically") {
  CHECK(Assignment{false, true} < Assignment{true, false});
  CHECK_FALSE(Assignment{true, false} < Assignment{true, false});
  CHECK(Assignment{true, false} < Assignment{true, true});
}
