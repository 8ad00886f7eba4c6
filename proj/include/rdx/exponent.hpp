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

// Exact output-radix exponent without logarithms.
//
// For binary -> decimal the value is written 2^e * m' with e even and the
// mantissa m' in [1, 4), where floor(log10 m') = 0. Then
//
//   floor(log10(2^e m')) = floor(e log10 2) + gamma,
//
// gamma in {0, 1}, and gamma = 1 exactly when m' reaches a per-exponent
// threshold. floor(e log10 2) is a multiply and an arithmetic shift by a
// certified constant. Decimal -> binary is the same with the roles of 2 and
// 10 swapped and the decimal mantissa re-encoded exactly as a binary number
// in [1, 2).

#pragma once

#include <cstdint>
#include <vector>

#include "rdx/fxcore.hpp"
#include "rdx/kernels.hpp"

namespace rdx {

enum class LogKind : std::uint8_t {
  Log10Of2,  // floor(x * log10 2)
  Log2Of10,  // floor(x * log2 10)
};

/// floor(x * log) computed as (x * constant) >> shift, certified for x in [lo, hi].
struct MulShiftConstant {
  LogKind kind = LogKind::Log10Of2;
  std::int64_t constant = 0;
  int shift = 0;
  std::int64_t lo = 0;
  std::int64_t hi = -1;

  friend bool operator==(const MulShiftConstant&, const MulShiftConstant&) = default;
};

/// Arithmetic (flooring) shift of the product. Throws RangeError outside [c.lo, c.hi].
std::int64_t apply(const MulShiftConstant& c, std::int64_t x);
std::int64_t floor_log10_pow2(std::int64_t e, const MulShiftConstant& c);
std::int64_t floor_log2_pow10(std::int64_t f, const MulShiftConstant& c);

enum class ThresholdDirection : std::uint8_t { BinToDec, DecToBin };
enum class Reduction : std::uint8_t { Identity, ParityHalved };

/// Per-exponent critical mantissas. Entry i belongs to the (reduced) exponent
/// first_exponent + i * step(). Entries are ceil(threshold * 2^frac_bits);
/// gamma = 1 iff mantissa >= entry. An entry equal to never() marks an
/// exponent for which no mantissa of the interval reaches the next decade
/// (or binade).
struct ThresholdTable {
  ThresholdDirection direction = ThresholdDirection::BinToDec;
  Reduction reduction = Reduction::ParityHalved;
  std::int64_t first_exponent = 0;
  int frac_bits = 0;
  std::vector<u128> entries;

  int step() const noexcept { return reduction == Reduction::ParityHalved ? 2 : 1; }
  std::int64_t last_exponent() const noexcept {
    return first_exponent + static_cast<std::int64_t>(entries.size() - 1) * step();
  }
  /// Mantissa interval is [1, 4) binary->decimal and [1, 2) decimal->binary.
  u128 never() const noexcept {
    return (direction == ThresholdDirection::BinToDec ? u128{4} : u128{2}) << frac_bits;
  }
  bool covers(std::int64_t reduced_exponent) const noexcept;
  /// Throws RangeError when the exponent is not covered.
  u128 at(std::int64_t reduced_exponent) const;

  friend bool operator==(const ThresholdTable&, const ThresholdTable&) = default;
};

struct ExponentTables {
  MulShiftConstant log10_2;
  MulShiftConstant log2_10;
  ThresholdTable bin2dec;
  ThresholdTable dec2bin;

  friend bool operator==(const ExponentTables&, const ExponentTables&) = default;
};

/// A binary value 2^exponent * mantissa / 2^frac_bits.
struct FixedBinade {
  std::int64_t exponent = 0;
  u128 mantissa = 0;
  int frac_bits = 0;
};

/// Fractional bits of the reduced binary mantissa (and of bin2dec thresholds).
constexpr int bin2dec_frac_bits(int p2) noexcept { return p2 + 2; }
/// ceil(log2(10^p10 - 1)): width of the exact binary re-encoding of a p10-digit mantissa.
int decimal_kappa(int p10);
constexpr int dec2bin_frac_bits(int kappa) noexcept { return kappa + 2; }

/// Folds the exponent's parity into the mantissa. Input: the value
/// 2^e * m / 2^(p2-1) with m in [2^(p2-1), 2^p2). Output: even exponent and a
/// mantissa in [1, 4) with p2 + 2 fractional bits, same value.
FixedBinade reduce_binade(std::int64_t e, u128 m, int p2);

/// gamma for a reduced value (exponent must be even for a parity-halved table;
/// mantissa carries tbl.frac_bits fractional bits).
int gamma(std::int64_t reduced_exponent, u128 mantissa, const ThresholdTable& tbl);

/// F = floor(log10(2^E * m)) - p10 + 1 for an integer mantissa m normalized
/// to p2 bits.
std::int64_t decimal_exponent(std::int64_t e, u128 m, const FormatParams& fmt, const ExponentTables& t);

/// E = floor(log2(10^F * n)) - p2 + 1 for n in [10^(p10-1), 10^p10).
std::int64_t binary_exponent(std::int64_t f, u128 n, const FormatParams& fmt, const ExponentTables& t);

/// Owns a 64-bit copy of a bin2dec table laid out for the batch kernels.
class BatchExponentTable {
 public:
  /// Throws RangeError when thresholds exceed 64 bits (p2 > 61).
  BatchExponentTable(const FormatParams& fmt, const ExponentTables& t);
  kernels::ExponentKernelTable view() const noexcept;

 private:
  kernels::ExponentKernelTable base_;
  std::vector<std::uint64_t> thresholds_;
};

}  // namespace rdx
