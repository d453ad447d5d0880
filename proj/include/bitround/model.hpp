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

#ifndef BITROUND_MODEL_HPP_
#define BITROUND_MODEL_HPP_

#include <cstdint>
#include <initializer_list>
#include <map>
#include <string>
#include <vector>

#include "bitround/common.hpp"

namespace bitround {

enum class Sense { Minimize, Maximize };
enum class Relation { LessEq, Equal, GreaterEq };

// Sparse objective: variable index (1-based) -> nonzero coefficient.
using ObjectiveMap = std::map<int32_t, int64_t>;

struct Term {
  int64_t coefficient;
  int32_t variable;  // 1-based
  friend bool operator==(const Term&, const Term&) = default;
};

// A linear constraint in canonical form: terms merged per variable, zero
// coefficients dropped, sorted by variable index, and <= rewritten to >= by
// negating both sides. Canonicalization happens at construction so that
// equality, hashing into graph colors, and OPB emission all agree.
class LinearConstraint {
 public:
  LinearConstraint(std::vector<Term> terms, Relation relation, int64_t rhs);

  const std::vector<Term>& terms() const { return terms_; }
  Relation relation() const { return relation_; }
  int64_t rhs() const { return rhs_; }

  friend bool operator==(const LinearConstraint&, const LinearConstraint&) = default;

 private:
  std::vector<Term> terms_;
  Relation relation_;
  int64_t rhs_;
};

// A 0/1 point; index 0 holds x1. Comparisons are lexicographic with x1 most
// significant, which is the tie-break order the solvers document.
class Assignment {
 public:
  Assignment() = default;
  explicit Assignment(std::vector<bool> values) : values_(std::move(values)) {}
  Assignment(std::initializer_list<bool> values) : values_(values) {}
  static Assignment zeros(size_t n) { return Assignment(std::vector<bool>(n, false)); }

  size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }
  bool operator[](size_t i) const { return values_[i]; }
  void set(size_t i, bool v) { values_[i] = v; }
  const std::vector<bool>& values() const { return values_; }

  friend bool operator==(const Assignment&, const Assignment&) = default;
  friend bool operator<(const Assignment& a, const Assignment& b) {
    return a.values_ < b.values_;
  }

 private:
  std::vector<bool> values_;
};

// Immutable after construction; safe to share across concurrent readers.
class BinaryProgram {
 public:
  BinaryProgram(std::string name, Sense sense, int32_t num_vars, ObjectiveMap objective,
                std::vector<LinearConstraint> constraints);

  const std::string& name() const { return name_; }
  Sense sense() const { return sense_; }
  int32_t num_vars() const { return num_vars_; }
  const ObjectiveMap& objective() const { return objective_; }
  int64_t objective_coefficient(int32_t variable) const;
  const std::vector<LinearConstraint>& constraints() const { return constraints_; }

  friend bool operator==(const BinaryProgram&, const BinaryProgram&) = default;

 private:
  std::string name_;
  Sense sense_;
  int32_t num_vars_;
  ObjectiveMap objective_;
  std::vector<LinearConstraint> constraints_;
};

int64_t evaluate_objective(const BinaryProgram& bp, const Assignment& x);
bool is_feasible(const BinaryProgram& bp, const Assignment& x);

// Max of |c_i|, all |constraint coefficients|, and |rhs|; 0 for the empty program.
uint64_t largest_abs_coefficient(const BinaryProgram& bp);

// Convenience factory: maximize values subject to one capacity row.
BinaryProgram make_knapsack(std::string name, const std::vector<int64_t>& values,
                            const std::vector<int64_t>& weights, int64_t capacity);

}  // namespace bitround

#endif  // BITROUND_MODEL_HPP_
