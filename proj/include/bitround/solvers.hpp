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

#ifndef BITROUND_SOLVERS_HPP_
#define BITROUND_SOLVERS_HPP_

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "bitround/model.hpp"
#include "bitround/rational.hpp"
#include "bitround/rounding.hpp"

namespace bitround {

enum class SolveStatus { Optimal, Infeasible, BudgetExhausted };

struct SolveResult {
  SolveStatus status = SolveStatus::BudgetExhausted;
  std::optional<int64_t> best_value;  // set whenever a feasible point was found
  Assignment best_assignment;        // empty when no feasible point was found
  int64_t nodes_explored = 0;
  double elapsed_s = 0.0;
};

// Node budgets are the deterministic cutoff; the time budget exists for
// interactive use and a time-based stop also reports BudgetExhausted.
struct SolveBudget {
  int64_t max_nodes = 10'000'000;
  double max_time_s = std::numeric_limits<double>::infinity();
};

// Ground-truth oracle: walks all 2^n assignments (Gray code, O(1) updates per
// step). Ties go to the lexicographically smallest optimal assignment with x1
// most significant. Refuses num_vars > max_vars.
SolveResult solve_enumeration(const BinaryProgram& bp, int32_t max_vars = 22);

// Depth-first branch and bound for max {c.x : w.x <= W}: items pre-sorted by
// value/weight ratio descending (ties by smaller index), take-branch first,
// Dantzig fractional bound on the remaining suffix. Assignments are reported
// in original item order.
SolveResult solve_knapsack(const std::vector<int64_t>& values,
                           const std::vector<int64_t>& weights, int64_t capacity,
                           const SolveBudget& budget = {});

// Generic exact solver: branches on variables in descending |c_i| order (ties
// ascending index; tie_break_seed rotates each equal-|c| block, which is how
// seed replication perturbs an otherwise deterministic search), propagates
// forced variables through constraint slack, improving value first, and
// prunes with bound = current value + sum of improving free coefficients.
SolveResult solve_bp(const BinaryProgram& bp, const SolveBudget& budget = {},
                     uint64_t tie_break_seed = 0);

// Present when bp is maximize, c >= 0, and the constraints are exactly one
// capacity row covering every variable with positive weights.
struct KnapsackForm {
  std::vector<int64_t> values;
  std::vector<int64_t> weights;
  int64_t capacity;
};
std::optional<KnapsackForm> as_knapsack(const BinaryProgram& bp);

enum class LossState { Available, UnavailableNotBothOptimal, UndefinedZeroOptimum };

struct PairReport {
  int level = 0;
  Rational epsilon;
  SolveResult original;
  SolveResult rounded;
  // x*_l priced under the ORIGINAL objective; set when the rounded solve
  // produced an assignment.
  std::optional<int64_t> rounded_under_original;
  LossState loss_state = LossState::UnavailableNotBothOptimal;
  std::optional<Rational> loss;
  bool envelope_ok = false;
  Rational loss_bound;  // 2*eps/(1+eps)
  bool traditional_applicable = false;  // maximize and c >= 0
  std::optional<bool> traditional_ok;   // set when applicable and loss available
};

// Solves bp and its level-rounded sibling with the same solver (the knapsack
// solver when bp is knapsack-form, else the generic one), checks the envelope
// certificate, and computes the loss when both runs reached Optimal.
PairReport certify_pair(const BinaryProgram& bp, int level, const SolveBudget& budget = {},
                        uint64_t tie_break_seed = 0);

}  // namespace bitround

#endif  // BITROUND_SOLVERS_HPP_
