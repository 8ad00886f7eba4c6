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

// Exact reference quantities on arbitrary-precision integers.
//
// This module shares nothing with the fast path except type definitions:
// every result is obtained by plain big-integer comparisons and divisions,
// never by a table or a truncated product.

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

#include "rdx/fxcore.hpp"

namespace rdx::oracle {

/// value * 2^scale2.
struct BigPow {
  mpz_class value;
  std::int64_t scale2 = 0;
};

/// Position of the discarded tail relative to half an ulp of the kept part.
enum class Discarded : std::uint8_t { None, BelowHalf, Half, AboveHalf };

struct ExactPow5 {
  ScaledInteger value;  // leading w bits, truncated
  bool truncated = false;
  Discarded discarded = Discarded::None;
};

inline constexpr std::int64_t kPow5Cap = 1'000'000;

/// 5^k by mpz_pow_ui.
mpz_class pow5(std::uint64_t k);
/// 5^k by left-to-right repeated multiplication; independent cross-check of pow5().
mpz_class pow5_by_repeated_multiplication(std::uint64_t k);

/// Leading w bits of 5^B (B may be negative). Throws RangeError when |B| > kPow5Cap.
ExactPow5 exact_pow5(std::int64_t b, int w);

/// Exact 5^B as a rational p/q.
mpq_class pow5_rational(std::int64_t b);

/// Exact value of a scaled integer.
mpq_class to_rational(const ScaledInteger& x);
mpq_class to_rational(const BigPow& x);
mpz_class to_mpz(u128 x);
u128 to_u128(const mpz_class& x);  // throws RangeError if it does not fit

/// base 10: floor(log10(2^exponent * mantissa)); base 2: floor(log2(10^exponent * mantissa)).
/// Throws DomainError for mantissa <= 0.
std::int64_t exact_floor_log(int base, std::int64_t exponent, const mpz_class& mantissa);

enum class Direction : std::uint8_t { BinToDec, DecToBin };

/// A correctly rounded conversion result. mantissa == 0 encodes a result that
/// rounded to zero (only possible toward decimal-to-binary underflow).
struct ExactResult {
  std::int64_t exponent = 0;
  u128 mantissa = 0;
  bool inexact = false;

  friend bool operator==(const ExactResult&, const ExactResult&) = default;
};

/// Correctly rounded conversion of the magnitude radix^exponent * mantissa.
/// BinToDec: input 2^E*m (m need not be normalized), output 10^F*n with
/// n in [10^(p10-1), 10^p10). DecToBin: input 10^F*n, output 2^E*m in the
/// IEEE integer-mantissa convention (subnormal results at fmt.ieee_emin()).
/// `negative` selects the direction of directed roundings.
/// Throws OverflowError when the result exponent leaves the format.
ExactResult exact_convert(Direction dir, bool negative, std::int64_t exponent, const mpz_class& mantissa,
                          const FormatParams& fmt, RoundingMode mode);

/// Correctly rounds q + r/den (0 <= r < den) to an integer, magnitude mode.
u128 round_quotient(u128 q, int cmp_twice_r_den, bool r_nonzero, RoundingMode magnitude_mode) noexcept;

/// Mantissas m in [m_begin, m_end) at which floor(log10(2^E * m)) steps up,
/// in increasing order.
std::vector<u128> decade_crossings(std::int64_t e, u128 m_begin, u128 m_end);

/// Walks consecutive integer mantissas m at a fixed binary exponent E and
/// keeps the exact decimal quotient n* = 2^E * m / 10^F, F = floor(log10(2^E m)) - p10 + 1,
/// as q + r/den. Each step is one exact 128-bit addition; the state is
/// re-seeded from big integers at every decade crossing. Suitable for formats
/// whose reduced denominators stay below 2^126 (binary32 does).
class BinadeWalker {
 public:
  BinadeWalker(std::int64_t e, u128 m_begin, u128 m_end, int p10);

  bool done() const noexcept { return m_ >= end_; }
  u128 mantissa() const noexcept { return m_; }
  std::int64_t decimal_exponent() const noexcept { return f_; }
  u128 quotient() const noexcept { return q_; }
  u128 remainder() const noexcept { return r_; }
  u128 denominator() const noexcept { return den_; }
  void next();

  /// Correctly rounded (F, n, inexact) for the current mantissa.
  ExactResult rounded(RoundingMode magnitude_mode) const noexcept;

 private:
  void seed();

  std::int64_t e_;
  u128 m_;
  u128 end_;
  int p10_;
  std::int64_t f_ = 0;
  u128 next_crossing_ = 0;
  u128 q_ = 0, r_ = 0, den_ = 1;
  u128 step_q_ = 0, step_r_ = 0;
  u128 decade_top_ = 0;
};

}  // namespace rdx::oracle
