// Copyright 2026-present the rdx authors
//
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

// Fixed-point scaled integers and the rounding primitives every other
// module is built on. Nothing here touches floating point.

#pragma once

#include <cstdint>
#include <string_view>

#include "rdx/error.hpp"
#include "rdx/wide_uint.hpp"

namespace rdx {

inline constexpr int kMaxWidth = 256;

using Mant = WideUint<4>;  // holds a w-bit mantissa, w <= kMaxWidth
using Wide = WideUint<8>;  // holds a 2w-bit product

enum class RoundingMode : std::uint8_t { NearestEven, Down, Up, TowardZero };

std::string_view to_string(RoundingMode m) noexcept;
/// Accepts "nearest", "ne", "down", "up", "zero", "towardzero" (case-sensitive).
RoundingMode parse_rounding_mode(std::string_view s);

/// Rounding mode to apply to a magnitude whose sign is `negative`.
/// The result is one of NearestEven, Down (toward zero) or Up (away from zero).
constexpr RoundingMode magnitude_mode(RoundingMode m, bool negative) noexcept {
  switch (m) {
    case RoundingMode::NearestEven: return RoundingMode::NearestEven;
    case RoundingMode::TowardZero: return RoundingMode::Down;
    case RoundingMode::Down: return negative ? RoundingMode::Up : RoundingMode::Down;
    case RoundingMode::Up: return negative ? RoundingMode::Down : RoundingMode::Up;
  }
  return m;
}

/// Parameters of one binary/decimal format pairing plus the working precision
/// of the mantissa engine.
///
/// `emin`/`emax` bound the exponent E of a binary value 2^E * m whose integer
/// mantissa m is normalized to p2 bits, subnormal inputs included (so for
/// binary64 emin = -1126, not -1074). The IEEE minimum exponent of the
/// integer-mantissa convention is `ieee_emin()`.
struct FormatParams {
  int p2 = 53;
  int p10 = 17;
  int emin = -1126;
  int emax = 971;
  int fmin = -340;
  int fmax = 293;
  int w = 128;
  int lambda = 64;

  constexpr int ieee_emin() const noexcept { return emin + p2 - 1; }
  /// Throws RangeError when the parameters are inconsistent.
  void validate() const;

  friend constexpr bool operator==(const FormatParams&, const FormatParams&) = default;
};

/// A w-bit normalized mantissa with a binary scale: value = mant * 2^exp2,
/// 2^(w-1) <= mant < 2^w.
class ScaledInteger {
 public:
  /// The value 1 at width 1.
  constexpr ScaledInteger() : mant_(Mant::from_u64(1)) {}

  /// Throws DomainError unless mant is normalized at `width`.
  static ScaledInteger from_normalized(const Mant& mant, std::int64_t exp2, int width);

  /// No validation; for kernels whose output is normalized by construction.
  static constexpr ScaledInteger assume_normalized(const Mant& mant, std::int64_t exp2, int width) noexcept {
    ScaledInteger s;
    s.mant_ = mant;
    s.exp2_ = exp2;
    s.width_ = width;
    return s;
  }

  constexpr const Mant& mant() const noexcept { return mant_; }
  constexpr std::int64_t exp2() const noexcept { return exp2_; }
  constexpr int width() const noexcept { return width_; }

  /// Same mantissa, scale moved by `delta`.
  constexpr ScaledInteger scaled(std::int64_t delta) const noexcept {
    ScaledInteger s = *this;
    s.exp2_ += delta;
    return s;
  }

  friend constexpr bool operator==(const ScaledInteger&, const ScaledInteger&) = default;

 private:
  Mant mant_;
  std::int64_t exp2_ = 0;
  int width_ = 1;
};

/// Truncating normalization to width w. Throws DomainError for a zero mantissa.
template <std::size_t N>
ScaledInteger normalize(const WideUint<N>& mant, std::int64_t exp2, int w);
ScaledInteger normalize(u128 mant, std::int64_t exp2, int w);

extern template ScaledInteger normalize<4>(const WideUint<4>&, std::int64_t, int);
extern template ScaledInteger normalize<8>(const WideUint<8>&, std::int64_t, int);

/// Product with the low `lambda` bits discarded: v = floor(a*b / 2^lambda).
struct TruncatedProduct {
  Wide v;
  std::int64_t exp2 = 0;
};

TruncatedProduct mul_trunc(const ScaledInteger& a, const ScaledInteger& b, int lambda);

/// mul_trunc followed by truncating renormalization back to the operand width.
/// `shift` is the renormalization applied after the lambda truncation:
/// positive = further right shift, negative = left shift (at most one bit).
/// value.exp2() == a.exp2() + b.exp2() + lambda + shift.
struct NormalizedProduct {
  ScaledInteger value;
  int shift = 0;
};

NormalizedProduct mul_trunc_norm(const ScaledInteger& a, const ScaledInteger& b, int lambda) noexcept;

/// Products formed by mul_trunc and mul_trunc_norm on the calling thread.
std::uint64_t products_formed() noexcept;

struct RoundedMantissa {
  u128 mant = 0;
  bool carry = false;
  bool inexact = false;
};

/// Rounds the magnitude `value` to an integer mantissa of `precision` digits
/// in `radix` (2 or 10). The integer part of value must be below
/// radix^precision; it may be shorter (subnormal targets). When rounding
/// reaches radix^precision the result is radix^(precision-1) with carry set.
/// `mode` is interpreted on the magnitude (see magnitude_mode).
RoundedMantissa round_scaled(const ScaledInteger& value, int precision, int radix, RoundingMode mode);

/// radix^k as u128; throws RangeError when it does not fit.
u128 pow_u128(unsigned radix, int k);

}  // namespace rdx
