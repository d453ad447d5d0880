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

#ifndef BITROUND_COMMON_HPP_
#define BITROUND_COMMON_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>

namespace bitround {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A documented precondition was violated by the caller.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

// An argument is outside the mathematical domain of the operation
// (level 0 epsilon, empty mean, zero denominator, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Malformed OPB input or experiment config.
class FormatError : public Error {
 public:
  using Error::Error;
};

// A checked 64-bit computation would wrap.
class OverflowError : public Error {
 public:
  using Error::Error;
};

// The input is too large for an intentionally desk-scale routine.
class SizeLimitError : public Error {
 public:
  using Error::Error;
};

// An instance recipe produced values outside the representable range.
class GenerationError : public Error {
 public:
  using Error::Error;
};

inline int64_t checked_add(int64_t a, int64_t b) {
  int64_t r = 0;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("64-bit addition overflow");
  return r;
}

inline int64_t checked_sub(int64_t a, int64_t b) {
  int64_t r = 0;
  if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("64-bit subtraction overflow");
  return r;
}

inline int64_t checked_mul(int64_t a, int64_t b) {
  int64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("64-bit multiplication overflow");
  return r;
}

inline int64_t checked_neg(int64_t a) { return checked_sub(0, a); }

// |v| as an unsigned value; well defined for INT64_MIN.
inline uint64_t magnitude(int64_t v) {
  return v < 0 ? ~static_cast<uint64_t>(v) + 1 : static_cast<uint64_t>(v);
}

}  // namespace bitround

#endif  // BITROUND_COMMON_HPP_
