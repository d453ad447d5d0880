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

#ifndef BITROUND_ROUNDING_HPP_
#define BITROUND_ROUNDING_HPP_

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "bitround/model.hpp"
#include "bitround/rational.hpp"

namespace bitround {

struct CoefficientRounding {
  int32_t variable;
  int64_t original;
  int64_t rounded;
  int bit_len;  // of the original coefficient
};

struct RoundingReport {
  int level;
  std::optional<Rational> epsilon;            // 1/2^(level-1); empty for level 0
  std::optional<Rational> traditional_bound;  // (1-eps)/(1+eps); empty for level 0
  std::optional<Rational> loss_bound;         // 2*eps/(1+eps); empty for level 0
  std::vector<CoefficientRounding> per_coefficient;
};

// Witness that c_perturbed sits inside the relative envelope
// |c'_j - c_j| <= eps * |c_j| around c_original, together with the point the
// perturbed problem was optimized to.
struct EpsilonCertificate {
  Assignment x_star;
  ObjectiveMap c_original;
  ObjectiveMap c_perturbed;
  Rational epsilon;
};

// ceil(log2(|c| + 1)), by bit inspection: the number of bits in |c|.
int bit_length(int64_t c);

// Keep the top `level` bits of |c|, zero the rest, reattach the sign.
// level 0 gives 0; level >= bit_length(c) gives c back.
int64_t round_coefficient(int64_t c, int level);

// Rounds every objective coefficient, leaving constraints untouched. Rounded
// zeros are dropped from the sparse objective. The report lists one entry per
// original objective entry in ascending variable order.
std::pair<BinaryProgram, RoundingReport> round_objective(const BinaryProgram& bp, int level);

// 1/2^(level-1). Level 0 has no finite guarantee (throws DomainError).
Rational epsilon_for_level(int level);

// Componentwise envelope check, exact arithmetic, over the union of the two
// index sets (a missing entry is coefficient 0). The sense parameter is part
// of the certificate interface but the envelope itself is sense-free.
bool verify_certificate(const EpsilonCertificate& cert, Sense sense);

// 2*eps/(1+eps) with eps = 1/2^(level-1): the worst-case relative objective
// loss for maximization with nonnegative coefficients.
Rational loss_bound_traditional(int level);

// |opt_original - opt_rounded_under_original| / |opt_original|, exact.
Rational objective_loss(int64_t opt_original, int64_t opt_rounded_under_original);

}  // namespace bitround

#endif  // BITROUND_ROUNDING_HPP_
