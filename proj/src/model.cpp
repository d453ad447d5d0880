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

#include "bitround/model.hpp"

#include <algorithm>
#include <map>
#include <utility>

namespace bitround {

LinearConstraint::LinearConstraint(std::vector<Term> terms, Relation relation, int64_t rhs) {
  std::map<int32_t, int64_t> merged;
  for (const Term& t : terms) {
    if (t.variable < 1) throw DomainError("constraint references variable index < 1");
    auto [it, inserted] = merged.emplace(t.variable, t.coefficient);
    if (!inserted) it->second = checked_add(it->second, t.coefficient);
  }
  for (auto it = merged.begin(); it != merged.end();) {
    it = it->second == 0 ? merged.erase(it) : std::next(it);
  }
  if (merged.empty()) throw DomainError("constraint has no terms after merging");
  terms_.reserve(merged.size());
  for (const auto& [var, coef] : merged) terms_.push_back({coef, var});
  if (relation == Relation::LessEq) {
    for (Term& t : terms_) t.coefficient = checked_neg(t.coefficient);
    relation_ = Relation::GreaterEq;
    rhs_ = checked_neg(rhs);
  } else {
    relation_ = relation;
    rhs_ = rhs;
  }
}

BinaryProgram::BinaryProgram(std::string name, Sense sense, int32_t num_vars,
                             ObjectiveMap objective, std::vector<LinearConstraint> constraints)
    : name_(std::move(name)),
      sense_(sense),
      num_vars_(num_vars),
      objective_(std::move(objective)),
      constraints_(std::move(constraints)) {
  if (num_vars_ < 0) throw DomainError("negative variable count");
  for (auto it = objective_.begin(); it != objective_.end();) {
    if (it->first < 1 || it->first > num_vars_) {
      throw DomainError("objective references variable outside 1..num_vars");
    }
    it = it->second == 0 ? objective_.erase(it) : std::next(it);
  }
  for (const LinearConstraint& c : constraints_) {
    for (const Term& t : c.terms()) {
      if (t.variable > num_vars_) {
        throw DomainError("constraint references variable outside 1..num_vars");
      }
    }
  }
}

int64_t BinaryProgram::objective_coefficient(int32_t variable) const {
  auto it = objective_.find(variable);
  return it == objective_.end() ? 0 : it->second;
}

int64_t evaluate_objective(const BinaryProgram& bp, const Assignment& x) {
  if (x.size() != static_cast<size_t>(bp.num_vars())) {
    throw ContractViolation("assignment length does not match variable count");
  }
  int64_t total = 0;
  for (const auto& [var, coef] : bp.objective()) {
    if (x[var - 1]) total = checked_add(total, coef);
  }
  return total;
}

bool is_feasible(const BinaryProgram& bp, const Assignment& x) {
  if (x.size() != static_cast<size_t>(bp.num_vars())) {
    throw ContractViolation("assignment length does not match variable count");
  }
  for (const LinearConstraint& c : bp.constraints()) {
    int64_t lhs = 0;
    for (const Term& t : c.terms()) {
      if (x[t.variable - 1]) lhs = checked_add(lhs, t.coefficient);
    }
    switch (c.relation()) {
      case Relation::GreaterEq:
        if (lhs < c.rhs()) return false;
        break;
      case Relation::Equal:
        if (lhs != c.rhs()) return false;
        break;
      case Relation::LessEq:
        if (lhs > c.rhs()) return false;
        break;
    }
  }
  return true;
}

uint64_t largest_abs_coefficient(const BinaryProgram& bp) {
  uint64_t best = 0;
  for (const auto& [var, coef] : bp.objective()) best = std::max(best, magnitude(coef));
  for (const LinearConstraint& c : bp.constraints()) {
    for (const Term& t : c.terms()) best = std::max(best, magnitude(t.coefficient));
    best = std::max(best, magnitude(c.rhs()));
  }
  return best;
}

BinaryProgram make_knapsack(std::string name, const std::vector<int64_t>& values,
                            const std::vector<int64_t>& weights, int64_t capacity) {
  if (values.size() != weights.size()) throw DomainError("values/weights length mismatch");
  ObjectiveMap objective;
  std::vector<Term> row;
  for (size_t i = 0; i < values.size(); ++i) {
    int32_t var = static_cast<int32_t>(i) + 1;
    if (values[i] != 0) objective[var] = values[i];
    row.push_back({weights[i], var});
  }
  std::vector<LinearConstraint> constraints;
  constraints.emplace_back(std::move(row), Relation::LessEq, capacity);
  return BinaryProgram(std::move(name), Sense::Maximize, static_cast<int32_t>(values.size()),
                       std::move(objective), std::move(constraints));
}

}  // namespace bitround
