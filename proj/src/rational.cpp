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

#include "bitround/rational.hpp"

#include <charconv>
#include <cstdlib>
#include <limits>

namespace bitround {

namespace {

using int128 = __int128;
using uint128 = unsigned __int128;

uint128 abs128(int128 v) {
  return v < 0 ? static_cast<uint128>(-(v + 1)) + 1 : static_cast<uint128>(v);
}

uint128 gcd128(uint128 a, uint128 b) {
  while (b != 0) {
    uint128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

int64_t narrow(int128 v) {
  if (v < std::numeric_limits<int64_t>::min() || v > std::numeric_limits<int64_t>::max()) {
    throw OverflowError("rational does not fit in 64 bits after reduction");
  }
  return static_cast<int64_t>(v);
}

int64_t parse_i64(const std::string& text) {
  int64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw FormatError("invalid rational literal: " + text);
  }
  return v;
}

}  // namespace

Rational::Rational(int64_t num, int64_t den) {
  Rational r = from_int128(num, den);
  num_ = r.num_;
  den_ = r.den_;
}

Rational Rational::from_int128(int128 num, int128 den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  if (num == 0) {
    Rational r;
    return r;
  }
  uint128 g = gcd128(abs128(num), static_cast<uint128>(den));
  num /= static_cast<int128>(g);
  den /= static_cast<int128>(g);
  Rational r;
  r.num_ = narrow(num);
  r.den_ = narrow(den);
  return r;
}

Rational Rational::parse(const std::string& text) {
  if (text.empty()) throw FormatError("empty rational literal");
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    return Rational(parse_i64(text.substr(0, slash)), parse_i64(text.substr(slash + 1)));
  }
  auto dot = text.find('.');
  if (dot == std::string::npos) return Rational(parse_i64(text));
  std::string digits = text.substr(0, dot) + text.substr(dot + 1);
  size_t frac_len = text.size() - dot - 1;
  if (frac_len == 0 || frac_len > 18) throw FormatError("invalid decimal literal: " + text);
  int64_t den = 1;
  for (size_t i = 0; i < frac_len; ++i) den = checked_mul(den, 10);
  return Rational(parse_i64(digits), den);
}

std::string Rational::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational operator+(const Rational& a, const Rational& b) {
  int128 num = static_cast<int128>(a.num_) * b.den_ + static_cast<int128>(b.num_) * a.den_;
  int128 den = static_cast<int128>(a.den_) * b.den_;
  return Rational::from_int128(num, den);
}

Rational operator-(const Rational& a, const Rational& b) {
  int128 num = static_cast<int128>(a.num_) * b.den_ - static_cast<int128>(b.num_) * a.den_;
  int128 den = static_cast<int128>(a.den_) * b.den_;
  return Rational::from_int128(num, den);
}

Rational operator*(const Rational& a, const Rational& b) {
  return Rational::from_int128(static_cast<int128>(a.num_) * b.num_,
                               static_cast<int128>(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.num_ == 0) throw DomainError("division by zero rational");
  return Rational::from_int128(static_cast<int128>(a.num_) * b.den_,
                               static_cast<int128>(a.den_) * b.num_);
}

Rational operator-(const Rational& a) { return Rational(checked_neg(a.num_), a.den_); }

}  // namespace bitround
