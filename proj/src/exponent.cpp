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

#include "rdx/exponent.hpp"

#include <string>

namespace rdx {

std::int64_t apply(const MulShiftConstant& c, std::int64_t x) {
  if (x < c.lo || x > c.hi)
    throw RangeError("exponent " + std::to_string(x) + " outside certified range [" + std::to_string(c.lo) + ", " +
                     std::to_string(c.hi) + "]");
  const i128 p = static_cast<i128>(x) * c.constant;
  return static_cast<std::int64_t>(p >> c.shift);  // arithmetic: floor for negative x
}

std::int64_t floor_log10_pow2(std::int64_t e, const MulShiftConstant& c) {
  if (c.kind != LogKind::Log10Of2) throw DomainError("constant is not floor(x log10 2)");
  return apply(c, e);
}

std::int64_t floor_log2_pow10(std::int64_t f, const MulShiftConstant& c) {
  if (c.kind != LogKind::Log2Of10) throw DomainError("constant is not floor(x log2 10)");
  return apply(c, f);
}

bool ThresholdTable::covers(std::int64_t reduced_exponent) const noexcept {
  if (entries.empty() || reduced_exponent < first_exponent || reduced_exponent > last_exponent()) return false;
  return (reduced_exponent - first_exponent) % step() == 0;
}

u128 ThresholdTable::at(std::int64_t reduced_exponent) const {
  if (!covers(reduced_exponent))
    throw RangeError("exponent " + std::to_string(reduced_exponent) + " not covered by threshold table");
  return entries[static_cast<std::size_t>((reduced_exponent - first_exponent) / step())];
}

int decimal_kappa(int p10) { return bit_length(pow_u128(10, p10) - 1); }

FixedBinade reduce_binade(std::int64_t e, u128 m, int p2) {
  const int r = static_cast<int>(e & 1);  // e mod 2, also for negative e
  return {e - r, m << (3 + r), bin2dec_frac_bits(p2)};
}

int gamma(std::int64_t reduced_exponent, u128 mantissa, const ThresholdTable& tbl) {
  return mantissa >= tbl.at(reduced_exponent) ? 1 : 0;
}

std::int64_t decimal_exponent(std::int64_t e, u128 m, const FormatParams& fmt, const ExponentTables& t) {
  if (bit_length(m) != fmt.p2) throw DomainError("binary mantissa not normalized to p2 bits");
  const FixedBinade r = reduce_binade(e + fmt.p2 - 1, m, fmt.p2);
  return floor_log10_pow2(r.exponent, t.log10_2) + gamma(r.exponent, r.mantissa, t.bin2dec) - fmt.p10 + 1;
}

std::int64_t binary_exponent(std::int64_t f, u128 n, const FormatParams& fmt, const ExponentTables& t) {
  const u128 top = pow_u128(10, fmt.p10);
  if (n < top / 10 || n >= top) throw DomainError("decimal mantissa not normalized to p10 digits");
  const int kappa = decimal_kappa(fmt.p10);
  const int len = bit_length(n);
  // n = 2^(len - kappa) * mhat, mhat in [2^(kappa-1), 2^kappa); floor(log2 mhat) = kappa - 1.
  const u128 mhat = n << (kappa - len);
  const u128 mu = mhat << 3;  // [1, 2) with kappa + 2 fractional bits
  const int g = gamma(f, mu, t.dec2bin);
  return floor_log2_pow10(f, t.log2_10) + (len - kappa) + (kappa - 1) + g - fmt.p2 + 1;
}

BatchExponentTable::BatchExponentTable(const FormatParams& fmt, const ExponentTables& t) {
  if (t.bin2dec.reduction != Reduction::ParityHalved || t.bin2dec.frac_bits != bin2dec_frac_bits(fmt.p2))
    throw DomainError("batch kernels need a parity-halved bin2dec table");
  thresholds_.reserve(t.bin2dec.entries.size());
  for (const u128 v : t.bin2dec.entries) {
    if ((v >> 63) != 0) throw RangeError("threshold entry exceeds 63 bits");
    thresholds_.push_back(static_cast<std::uint64_t>(v));
  }
  base_.p2 = fmt.p2;
  base_.p10 = fmt.p10;
  base_.first_exponent = static_cast<int>(t.bin2dec.first_exponent);
  base_.log10_2_constant = t.log10_2.constant;
  base_.log10_2_shift = t.log10_2.shift;
}

kernels::ExponentKernelTable BatchExponentTable::view() const noexcept {
  kernels::ExponentKernelTable v = base_;
  v.thresholds = thresholds_;
  return v;
}

}  // namespace rdx
