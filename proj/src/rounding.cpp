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

#include "bitround/rounding.hpp"

#include <bit>
#include <set>

namespace bitround {

int bit_length(int64_t c) { return std::bit_width(magnitude(c)); }

int64_t round_coefficient(int64_t c, int level) {
  if (level < 0) throw ContractViolation("negative rounding level");
  if (level == 0) return 0;
  uint64_t mag = magnitude(c);
  int k = std::bit_width(mag);
  if (level >= k) return c;
  uint64_t mask = ~((uint64_t{1} << (k - level)) - 1);
  uint64_t rounded = mag & mask;
  // Unsigned negation maps 2^63 (possible only for c == INT64_MIN) back into
  // range; positive magnitudes always fit.
  return c < 0 ? static_cast<int64_t>(~rounded + 1) : static_cast<int64_t>(rounded);
}

std::pair<BinaryProgram, RoundingReport> round_objective(const BinaryProgram& bp, int level) {
  if (level < 0) throw ContractViolation("negative rounding level");
  RoundingReport report;
  report.level = level;
  if (level >= 1) {
    report.epsilon = epsilon_for_level(level);
    const Rational& eps = *report.epsilon;
    report.traditional_bound = (Rational(1) - eps) / (Rational(1) + eps);
    report.loss_bound = loss_bound_traditional(level);
  }
  ObjectiveMap rounded;
  for (const auto& [var, coef] : bp.objective()) {
    int64_t r = round_coefficient(coef, level);
    report.per_coefficient.push_back({var, coef, r, bit_length(coef)});
    if (r != 0) rounded[var] = r;
  }
  BinaryProgram out(bp.name(), bp.sense(), bp.num_vars(), std::move(rounded),
                    bp.constraints());
  return {std::move(out), std::move(report)};
}

Rational epsilon_for_level(int level) {
  if (level < 1) throw DomainError("epsilon is defined only for level >= 1");
  if (level > 63) throw OverflowError("epsilon denominator exceeds 64 bits");
  return Rational(1, static_cast<int64_t>(uint64_t{1} << (level - 1)));
}

bool verify_certificate(const EpsilonCertificate& cert, Sense sense) {
  (void)sense;
  std::set<int32_t> keys;
  for (const auto& [var, coef] : cert.c_original) keys.insert(var);
  for (const auto& [var, coef] : cert.c_perturbed) keys.insert(var);
  const __int128 num = cert.epsilon.num();
  const __int128 den = cert.epsilon.den();
  for (int32_t var : keys) {
    auto orig_it = cert.c_original.find(var);
    auto pert_it = cert.c_perturbed.find(var);
    __int128 c = orig_it == cert.c_original.end() ? 0 : orig_it->second;
    __int128 cp = pert_it == cert.c_perturbed.end() ? 0 : pert_it->second;
    __int128 diff = cp - c;
    if (diff < 0) diff = -diff;
    __int128 mag = c < 0 ? -c : c;
    // |c' - c| <= eps * |c|, cleared of denominators. This is Definition 1's
    // two-sided envelope for either sign of c.
    if (diff * den > num * mag) return false;
  }
  return true;
}

Rational loss_bound_traditional(int level) {
  Rational eps = epsilon_for_level(level);
  return (Rational(2) * eps) / (Rational(1) + eps);
}

Rational objective_loss(int64_t opt_original, int64_t opt_rounded_under_original) {
  if (opt_original == 0) throw DomainError("objective loss undefined for zero optimum");
  __int128 diff = static_cast<__int128>(opt_original) - opt_rounded_under_original;
  if (diff < 0) diff = -diff;
  __int128 denom = opt_original < 0 ? -static_cast<__int128>(opt_original)
                                    : static_cast<__int128>(opt_original);
  return Rational::from_int128(diff, denom);
}

}  // namespace bitround
