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

#ifndef BITROUND_RATIONAL_HPP_
#define BITROUND_RATIONAL_HPP_

#include <cstdint>
#include <string>

#include "bitround/common.hpp"

namespace bitround {

// Exact rational with 64-bit numerator and positive 64-bit denominator,
// always stored in lowest terms. Intermediates use 128-bit arithmetic and
// the result is range-checked, so operations either return the exact value
// or throw OverflowError. Large enough for every bound and loss this
// project computes; not a general bignum.
class Rational {
 public:
  constexpr Rational() : num_(0), den_(1) {}
  Rational(int64_t value) : num_(value), den_(1) {}  // NOLINT: implicit by design
  Rational(int64_t num, int64_t den);

  static Rational from_int128(__int128 num, __int128 den);
  // Accepts "3", "-3", "3/4", and plain decimals such as "0.01".
  static Rational parse(const std::string& text);

  int64_t num() const { return num_; }
  int64_t den() const { return den_; }
  bool is_zero() const { return num_ == 0; }

  Rational abs() const { return num_ < 0 ? Rational(checked_neg(num_), den_) : *this; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string to_string() const;  // "num/den", or "num" when den == 1

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a);

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

 private:
  int64_t num_;
  int64_t den_;
};

}  // namespace bitround

#endif  // BITROUND_RATIONAL_HPP_
