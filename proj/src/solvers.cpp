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

#include "bitround/solvers.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <numeric>
#include <utility>

namespace bitround {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void check_budget_fields(const SolveBudget& budget) {
  if (budget.max_nodes < 1 || !(budget.max_time_s > 0)) {
    throw ContractViolation("solve budget must be positive");
  }
}

int64_t checked_magnitude_sum(__int128 sum, int64_t v) {
  sum += magnitude(v);
  if (sum > std::numeric_limits<int64_t>::max()) {
    throw OverflowError("coefficient magnitude sum exceeds 64 bits");
  }
  return static_cast<int64_t>(sum);
}

bool relation_holds(Relation rel, int64_t lhs, int64_t rhs) {
  switch (rel) {
    case Relation::GreaterEq:
      return lhs >= rhs;
    case Relation::Equal:
      return lhs == rhs;
    case Relation::LessEq:
      return lhs <= rhs;
  }
  return false;
}

}  // namespace

SolveResult solve_enumeration(const BinaryProgram& bp, int32_t max_vars) {
  const auto start = Clock::now();
  const int32_t n = bp.num_vars();
  if (n > max_vars) throw SizeLimitError("enumeration refused: too many variables");
  if (n > 62) throw SizeLimitError("enumeration refused: assignment mask exceeds 62 bits");

  // Variable v (1-based) lives at mask bit n - v, so numeric mask order is
  // lexicographic order with x1 most significant.
  std::vector<int64_t> coef(n, 0);
  int64_t obj_guard = 0;
  for (const auto& [var, c] : bp.objective()) {
    coef[var - 1] = c;
    obj_guard = checked_magnitude_sum(obj_guard, c);
  }
  const auto& constraints = bp.constraints();
  const int32_t m = static_cast<int32_t>(constraints.size());
  std::vector<std::vector<std::pair<int32_t, int64_t>>> columns(n);
  std::vector<int64_t> lhs(m, 0);
  std::vector<bool> sat(m);
  int32_t violated = 0;
  for (int32_t k = 0; k < m; ++k) {
    int64_t guard = 0;
    for (const Term& t : constraints[k].terms()) {
      columns[t.variable - 1].emplace_back(k, t.coefficient);
      guard = checked_magnitude_sum(guard, t.coefficient);
    }
    sat[k] = relation_holds(constraints[k].relation(), 0, constraints[k].rhs());
    if (!sat[k]) ++violated;
  }

  int64_t value = 0;
  bool have_best = false;
  int64_t best_value = 0;
  uint64_t best_mask = 0;
  auto consider = [&](uint64_t mask) {
    if (violated != 0) return;
    bool better;
    if (!have_best) {
      better = true;
    } else if (value != best_value) {
      better = bp.sense() == Sense::Maximize ? value > best_value : value < best_value;
    } else {
      better = mask < best_mask;
    }
    if (better) {
      have_best = true;
      best_value = value;
      best_mask = mask;
    }
  };

  consider(0);
  const uint64_t total = uint64_t{1} << n;
  uint64_t gray = 0;
  for (uint64_t t = 1; t < total; ++t) {
    int bit = std::countr_zero(t);
    gray ^= uint64_t{1} << bit;
    int32_t v = n - 1 - bit;  // 0-based variable index
    bool now_one = (gray >> bit) & 1;
    int64_t sign = now_one ? 1 : -1;
    value += sign * coef[v];
    for (const auto& [k, a] : columns[v]) {
      lhs[k] += sign * a;
      bool ok = relation_holds(constraints[k].relation(), lhs[k], constraints[k].rhs());
      if (ok != sat[k]) {
        sat[k] = ok;
        violated += ok ? -1 : 1;
      }
    }
    consider(gray);
  }

  SolveResult result;
  result.nodes_explored = static_cast<int64_t>(total);
  if (have_best) {
    result.status = SolveStatus::Optimal;
    result.best_value = best_value;
    Assignment x = Assignment::zeros(n);
    for (int32_t v = 0; v < n; ++v) x.set(v, (best_mask >> (n - 1 - v)) & 1);
    result.best_assignment = std::move(x);
  } else {
    result.status = SolveStatus::Infeasible;
  }
  result.elapsed_s = seconds_since(start);
  return result;
}

SolveResult solve_knapsack(const std::vector<int64_t>& values,
                           const std::vector<int64_t>& weights, int64_t capacity,
                           const SolveBudget& budget) {
  const auto start = Clock::now();
  check_budget_fields(budget);
  if (values.size() != weights.size()) throw ContractViolation("values/weights length mismatch");
  const int32_t n = static_cast<int32_t>(values.size());
  for (int32_t i = 0; i < n; ++i) {
    if (values[i] < 0) throw ContractViolation("knapsack values must be >= 0");
    if (weights[i] < 1) throw ContractViolation("knapsack weights must be >= 1");
  }

  SolveResult result;
  if (capacity < 0) {
    result.status = SolveStatus::Infeasible;
    result.nodes_explored = 1;
    result.elapsed_s = seconds_since(start);
    return result;
  }

  std::vector<int32_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int32_t a, int32_t b) {
    __int128 lhs = static_cast<__int128>(values[a]) * weights[b];
    __int128 rhs = static_cast<__int128>(values[b]) * weights[a];
    if (lhs != rhs) return lhs > rhs;
    return a < b;
  });
  std::vector<int64_t> prefix_w(n + 1, 0), prefix_v(n + 1, 0);
  for (int32_t i = 0; i < n; ++i) {
    prefix_w[i + 1] = checked_add(prefix_w[i], weights[order[i]]);
    prefix_v[i + 1] = checked_add(prefix_v[i], values[order[i]]);
  }
  // Capacity above the total weight is slack; clamping keeps bound arithmetic
  // inside 64 bits.
  const int64_t root_capacity = std::min(capacity, prefix_w[n]);

  int64_t nodes = 0;
  bool exhausted = false;
  bool have_best = false;
  int64_t best_value = 0;
  std::vector<char> chosen(n, 0), best_chosen(n, 0);
  const bool timed = budget.max_time_s != std::numeric_limits<double>::infinity();

  auto dfs = [&](auto&& self, int32_t idx, int64_t rem, int64_t val) -> void {
    if (exhausted) return;
    if (++nodes > budget.max_nodes ||
        (timed && (nodes & 4095) == 0 && seconds_since(start) > budget.max_time_s)) {
      exhausted = true;
      return;
    }
    if (have_best) {
      auto it = std::upper_bound(prefix_w.begin() + idx, prefix_w.end(), prefix_w[idx] + rem);
      int32_t e = static_cast<int32_t>(it - prefix_w.begin()) - 1;
      __int128 bound = static_cast<__int128>(val) + (prefix_v[e] - prefix_v[idx]);
      if (e < n) {
        int64_t left = rem - (prefix_w[e] - prefix_w[idx]);
        bound += static_cast<__int128>(values[order[e]]) * left / weights[order[e]];
      }
      if (bound <= best_value) return;
    }
    if (idx == n) {
      if (!have_best || val > best_value) {
        have_best = true;
        best_value = val;
        best_chosen = chosen;
      }
      return;
    }
    if (weights[order[idx]] <= rem) {
      chosen[idx] = 1;
      self(self, idx + 1, rem - weights[order[idx]], val + values[order[idx]]);
      chosen[idx] = 0;
    }
    self(self, idx + 1, rem, val);
  };
  dfs(dfs, 0, root_capacity, 0);

  result.nodes_explored = nodes;
  result.status = exhausted ? SolveStatus::BudgetExhausted : SolveStatus::Optimal;
  if (have_best) {
    result.best_value = best_value;
    Assignment x = Assignment::zeros(n);
    for (int32_t i = 0; i < n; ++i) {
      if (best_chosen[i]) x.set(order[i], true);
    }
    result.best_assignment = std::move(x);
  } else if (!exhausted) {
    // Unreachable: the empty selection is always feasible for capacity >= 0.
    result.status = SolveStatus::Infeasible;
  }
  result.elapsed_s = seconds_since(start);
  return result;
}

namespace {

// Branch-and-bound state for the generic solver. Aggregates per constraint
// let both the conflict test and the forcing test run from slack bounds:
// max_lhs = fixed_sum + pos_rest, min_lhs = fixed_sum + neg_rest.
class BpSearch {
 public:
  BpSearch(const BinaryProgram& bp, const SolveBudget& budget, uint64_t tie_break_seed)
      : bp_(bp), budget_(budget), n_(bp.num_vars()) {
    coef_.assign(n_, 0);
    int64_t obj_guard = 0;
    for (const auto& [var, c] : bp.objective()) {
      coef_[var - 1] = c;
      obj_guard = checked_magnitude_sum(obj_guard, c);
      if (c > 0) obj_pos_rest_ += c;
      if (c < 0) obj_neg_rest_ += c;
    }
    const auto& constraints = bp.constraints();
    const int32_t m = static_cast<int32_t>(constraints.size());
    cons_.resize(m);
    columns_.resize(n_);
    for (int32_t k = 0; k < m; ++k) {
      cons_[k].relation = constraints[k].relation();
      cons_[k].rhs = constraints[k].rhs();
      int64_t guard = 0;
      for (const Term& t : constraints[k].terms()) {
        guard = checked_magnitude_sum(guard, t.coefficient);
        cons_[k].terms.emplace_back(t.variable - 1, t.coefficient);
        columns_[t.variable - 1].emplace_back(k, t.coefficient);
        if (t.coefficient > 0) cons_[k].pos_rest += t.coefficient;
        if (t.coefficient < 0) cons_[k].neg_rest += t.coefficient;
      }
    }
    in_queue_.assign(m, false);
    state_.assign(n_, -1);
    charge_mark_.assign(n_, 0);

    order_.resize(n_);
    std::iota(order_.begin(), order_.end(), 0);
    std::sort(order_.begin(), order_.end(), [&](int32_t a, int32_t b) {
      uint64_t ma = magnitude(coef_[a]), mb = magnitude(coef_[b]);
      if (ma != mb) return ma > mb;
      return a < b;
    });
    if (tie_break_seed != 0) rotate_ties(tie_break_seed);
  }

  SolveResult run() {
    const auto start = Clock::now();
    check_budget_fields(budget_);
    timed_ = budget_.max_time_s != std::numeric_limits<double>::infinity();
    start_ = start;

    bool root_ok = true;
    for (int32_t k = 0; k < static_cast<int32_t>(cons_.size()); ++k) enqueue(k);
    if (!propagate()) root_ok = false;
    if (root_ok) dfs(0);

    SolveResult result;
    result.nodes_explored = nodes_;
    if (exhausted_) {
      result.status = SolveStatus::BudgetExhausted;
    } else {
      result.status = have_best_ ? SolveStatus::Optimal : SolveStatus::Infeasible;
    }
    if (have_best_) {
      result.best_value = best_value_;
      result.best_assignment = best_assignment_;
    }
    result.elapsed_s = seconds_since(start);
    return result;
  }

 private:
  struct ConsState {
    std::vector<std::pair<int32_t, int64_t>> terms;  // (0-based var, coefficient)
    Relation relation = Relation::GreaterEq;
    int64_t rhs = 0;
    int64_t fixed_sum = 0;
    int64_t pos_rest = 0;
    int64_t neg_rest = 0;
  };

  void rotate_ties(uint64_t seed) {
    size_t begin = 0;
    while (begin < order_.size()) {
      size_t end = begin + 1;
      while (end < order_.size() &&
             magnitude(coef_[order_[end]]) == magnitude(coef_[order_[begin]])) {
        ++end;
      }
      size_t len = end - begin;
      size_t shift = seed % len;
      if (shift != 0) {
        std::rotate(order_.begin() + begin, order_.begin() + begin + shift,
                    order_.begin() + end);
      }
      begin = end;
    }
  }

  void enqueue(int32_t k) {
    if (!in_queue_[k]) {
      in_queue_[k] = true;
      queue_.push_back(k);
    }
  }

  void fix(int32_t var, int8_t val) {
    state_[var] = val;
    trail_.push_back(var);
    int64_t c = coef_[var];
    if (c > 0) obj_pos_rest_ -= c;
    if (c < 0) obj_neg_rest_ -= c;
    if (val == 1) obj_fixed_ += c;
    for (const auto& [k, a] : columns_[var]) {
      if (a > 0) cons_[k].pos_rest -= a;
      if (a < 0) cons_[k].neg_rest -= a;
      if (val == 1) cons_[k].fixed_sum += a;
      enqueue(k);
    }
  }

  void undo_to(size_t mark) {
    while (trail_.size() > mark) {
      int32_t var = trail_.back();
      trail_.pop_back();
      int8_t val = state_[var];
      state_[var] = -1;
      int64_t c = coef_[var];
      if (c > 0) obj_pos_rest_ += c;
      if (c < 0) obj_neg_rest_ += c;
      if (val == 1) obj_fixed_ -= c;
      for (const auto& [k, a] : columns_[var]) {
        if (a > 0) cons_[k].pos_rest += a;
        if (a < 0) cons_[k].neg_rest += a;
        if (val == 1) cons_[k].fixed_sum -= a;
      }
    }
  }

  // Re-examines constraint k until it neither conflicts nor forces anything.
  bool process(int32_t k) {
    ConsState& c = cons_[k];
    while (true) {
      int64_t max_lhs = c.fixed_sum + c.pos_rest;
      int64_t min_lhs = c.fixed_sum + c.neg_rest;
      if (c.relation == Relation::GreaterEq) {
        if (max_lhs < c.rhs) return false;
        if (min_lhs >= c.rhs) return true;
      } else {  // Equal (LessEq never survives canonicalization)
        if (max_lhs < c.rhs || min_lhs > c.rhs) return false;
        if (max_lhs == c.rhs && min_lhs == c.rhs) return true;
      }
      bool forced = false;
      for (const auto& [var, a] : c.terms) {
        if (state_[var] != -1) continue;
        if (a > 0 && max_lhs - a < c.rhs) {
          fix(var, 1);
          forced = true;
          break;
        }
        if (a < 0 && max_lhs + a < c.rhs) {
          fix(var, 0);
          forced = true;
          break;
        }
        if (c.relation == Relation::Equal) {
          if (a > 0 && min_lhs + a > c.rhs) {
            fix(var, 0);
            forced = true;
            break;
          }
          if (a < 0 && min_lhs - a > c.rhs) {
            fix(var, 1);
            forced = true;
            break;
          }
        }
      }
      if (!forced) return true;
    }
  }

  bool propagate() {
    while (!queue_.empty()) {
      int32_t k = queue_.back();
      queue_.pop_back();
      in_queue_[k] = false;
      if (!process(k)) {
        // Leftover queue entries belong to abandoned decisions.
        for (int32_t j : queue_) in_queue_[j] = false;
        queue_.clear();
        return false;
      }
    }
    return true;
  }

  void record_leaf() {
    int64_t val = obj_fixed_;
    if (have_best_) {
      bool better = bp_.sense() == Sense::Maximize ? val > best_value_ : val < best_value_;
      if (!better) return;
    }
    Assignment x = Assignment::zeros(n_);
    for (int32_t v = 0; v < n_; ++v) x.set(v, state_[v] == 1);
    // Propagation is supposed to make every completed assignment feasible;
    // re-check against the untouched program as a guard on the solver itself.
    if (!is_feasible(bp_, x) || evaluate_objective(bp_, x) != val) {
      throw Error("internal solver error: inconsistent incumbent");
    }
    have_best_ = true;
    best_value_ = val;
    best_assignment_ = std::move(x);
  }

  // Any completion must pay at least this much objective, on top of the
  // cost-preferred relaxation, to activate constraints the preferred
  // assignment leaves violated. Each charged row needs one flip away from a
  // variable's preferred value inside its own candidate set; rows are charged
  // only while their candidate sets stay pairwise disjoint, so the per-row
  // minima add up soundly. On assignment-style rows (one row per customer,
  // disjoint variables) this is the classic assignment relaxation.
  int64_t activation_charge() {
    const bool maximize = bp_.sense() == Sense::Maximize;
    ++charge_epoch_;
    int64_t total = 0;
    for (const ConsState& c : cons_) {
      int64_t zmax = c.fixed_sum;  // best lhs reachable at zero objective cost
      int64_t zmin = c.fixed_sum;
      for (const auto& [var, a] : c.terms) {
        if (state_[var] != -1) continue;
        int64_t cv = coef_[var];
        if (cv == 0) {
          zmax += std::max<int64_t>(a, 0);
          zmin += std::min<int64_t>(a, 0);
        } else if (maximize ? cv > 0 : cv < 0) {
          zmax += a;
          zmin += a;
        }
      }
      bool need_increase = zmax < c.rhs;
      bool need_decrease = c.relation == Relation::Equal && zmin > c.rhs;
      if (!need_increase && !need_decrease) continue;

      int64_t cheapest = std::numeric_limits<int64_t>::max();
      bool clash = false;
      for (const auto& [var, a] : c.terms) {
        if (state_[var] != -1) continue;
        int64_t cv = coef_[var];
        if (cv == 0) continue;
        bool pref_one = maximize ? cv > 0 : cv < 0;
        bool raises = pref_one ? a < 0 : a > 0;  // flipping v moves lhs up
        if (need_increase != raises) continue;
        if (charge_mark_[var] == charge_epoch_) {
          clash = true;
          break;
        }
        cheapest = std::min(cheapest, static_cast<int64_t>(magnitude(cv)));
      }
      if (clash || cheapest == std::numeric_limits<int64_t>::max()) continue;
      for (const auto& [var, a] : c.terms) {
        if (state_[var] != -1 || coef_[var] == 0) continue;
        bool pref_one = maximize ? coef_[var] > 0 : coef_[var] < 0;
        bool raises = pref_one ? a < 0 : a > 0;
        if (need_increase == raises) charge_mark_[var] = charge_epoch_;
      }
      total += cheapest;  // bounded by the checked sum of |objective|
    }
    return total;
  }

  void dfs(int32_t order_pos) {
    if (exhausted_) return;
    if (++nodes_ > budget_.max_nodes ||
        (timed_ && (nodes_ & 4095) == 0 && seconds_since(start_) > budget_.max_time_s)) {
      exhausted_ = true;
      return;
    }
    if (have_best_) {
      const bool maximize = bp_.sense() == Sense::Maximize;
      int64_t bound = maximize ? obj_fixed_ + obj_pos_rest_ : obj_fixed_ + obj_neg_rest_;
      bool can_improve = maximize ? bound > best_value_ : bound < best_value_;
      if (!can_improve) return;
      int64_t charge = activation_charge();
      if (charge > 0) {
        bound = maximize ? bound - charge : bound + charge;
        can_improve = maximize ? bound > best_value_ : bound < best_value_;
        if (!can_improve) return;
      }
    }
    while (order_pos < n_ && state_[order_[order_pos]] != -1) ++order_pos;
    if (order_pos == n_) {
      record_leaf();
      return;
    }
    int32_t var = order_[order_pos];
    int64_t c = coef_[var];
    int8_t first = bp_.sense() == Sense::Maximize ? (c > 0 ? 1 : 0) : (c < 0 ? 1 : 0);
    for (int8_t pass = 0; pass < 2 && !exhausted_; ++pass) {
      int8_t val = pass == 0 ? first : static_cast<int8_t>(1 - first);
      size_t mark = trail_.size();
      fix(var, val);
      if (propagate()) dfs(order_pos + 1);
      undo_to(mark);
    }
  }

  const BinaryProgram& bp_;
  SolveBudget budget_;
  int32_t n_;
  std::vector<int64_t> coef_;
  std::vector<ConsState> cons_;
  std::vector<std::vector<std::pair<int32_t, int64_t>>> columns_;
  std::vector<int32_t> order_;
  std::vector<int8_t> state_;
  std::vector<int32_t> trail_;
  std::vector<int32_t> queue_;
  std::vector<bool> in_queue_;
  std::vector<int64_t> charge_mark_;
  int64_t charge_epoch_ = 0;
  int64_t obj_fixed_ = 0;
  int64_t obj_pos_rest_ = 0;
  int64_t obj_neg_rest_ = 0;
  int64_t nodes_ = 0;
  bool exhausted_ = false;
  bool timed_ = false;
  Clock::time_point start_;
  bool have_best_ = false;
  int64_t best_value_ = 0;
  Assignment best_assignment_;
};

}  // namespace

SolveResult solve_bp(const BinaryProgram& bp, const SolveBudget& budget,
                     uint64_t tie_break_seed) {
  BpSearch search(bp, budget, tie_break_seed);
  return search.run();
}

std::optional<KnapsackForm> as_knapsack(const BinaryProgram& bp) {
  if (bp.sense() != Sense::Maximize) return std::nullopt;
  if (bp.constraints().size() != 1) return std::nullopt;
  const LinearConstraint& c = bp.constraints()[0];
  if (c.relation() != Relation::GreaterEq || c.rhs() > 0) return std::nullopt;
  if (static_cast<int32_t>(c.terms().size()) != bp.num_vars()) return std::nullopt;
  for (const auto& [var, coef] : bp.objective()) {
    if (coef < 0) return std::nullopt;
  }
  KnapsackForm form;
  form.values.reserve(bp.num_vars());
  form.weights.reserve(bp.num_vars());
  for (const Term& t : c.terms()) {
    if (t.coefficient >= 0) return std::nullopt;  // stored form is -w.x >= -W
    form.weights.push_back(checked_neg(t.coefficient));
  }
  for (int32_t v = 1; v <= bp.num_vars(); ++v) {
    form.values.push_back(bp.objective_coefficient(v));
  }
  form.capacity = checked_neg(c.rhs());
  return form;
}

PairReport certify_pair(const BinaryProgram& bp, int level, const SolveBudget& budget,
                        uint64_t tie_break_seed) {
  if (level < 1) throw DomainError("certify_pair requires level >= 1");
  PairReport pair;
  pair.level = level;
  pair.epsilon = epsilon_for_level(level);
  pair.loss_bound = loss_bound_traditional(level);

  auto [rounded_bp, rounding] = round_objective(bp, level);
  auto form = as_knapsack(bp);
  if (form) {
    auto rounded_form = as_knapsack(rounded_bp);
    pair.original = solve_knapsack(form->values, form->weights, form->capacity, budget);
    pair.rounded =
        solve_knapsack(rounded_form->values, rounded_form->weights, rounded_form->capacity,
                       budget);
  } else {
    pair.original = solve_bp(bp, budget, tie_break_seed);
    pair.rounded = solve_bp(rounded_bp, budget, tie_break_seed);
  }

  if (pair.rounded.best_value.has_value()) {
    pair.rounded_under_original = evaluate_objective(bp, pair.rounded.best_assignment);
  }

  EpsilonCertificate cert{pair.rounded.best_assignment, bp.objective(),
                          rounded_bp.objective(), pair.epsilon};
  pair.envelope_ok = verify_certificate(cert, bp.sense());

  pair.traditional_applicable = bp.sense() == Sense::Maximize;
  for (const auto& [var, coef] : bp.objective()) {
    if (coef < 0) pair.traditional_applicable = false;
  }

  if (pair.original.status == SolveStatus::Optimal &&
      pair.rounded.status == SolveStatus::Optimal) {
    if (*pair.original.best_value == 0) {
      pair.loss_state = LossState::UndefinedZeroOptimum;
    } else {
      pair.loss_state = LossState::Available;
      pair.loss = objective_loss(*pair.original.best_value, *pair.rounded_under_original);
      if (pair.traditional_applicable) pair.traditional_ok = *pair.loss <= pair.loss_bound;
    }
  } else {
    pair.loss_state = LossState::UnavailableNotBothOptimal;
  }
  return pair;
}

}  // namespace bitround
