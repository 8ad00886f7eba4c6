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

#include "rdx/kernels.hpp"

namespace rdx::kernels {

namespace {

inline std::int32_t from_normalized(const ExponentKernelTable& t, std::int64_t e, std::uint64_t m) noexcept {
  // e is the exponent of m / 2^(p2-1) in [1, 2); fold parity into [1, 4).
  const std::int64_t r = e & 1;
  const std::int64_t reduced = e - r;
  const std::uint64_t mfix = m << (3 + r);
  const std::uint64_t thr = t.thresholds[static_cast<std::size_t>((reduced - t.first_exponent) >> 1)];
  const std::int64_t fl = (reduced * t.log10_2_constant) >> t.log10_2_shift;
  return static_cast<std::int32_t>(fl + (mfix >= thr ? 1 : 0) - t.p10 + 1);
}

}  // namespace

void decimal_exponents_binary32_reference(const ExponentKernelTable& t, std::span<const std::uint32_t> bits,
                                          std::span<std::int32_t> out) noexcept {
  for (std::size_t i = 0; i < bits.size(); ++i) {
    const std::uint32_t b = bits[i] & 0x7fffffffu;
    const std::uint32_t ef = b >> 23;
    const std::uint32_t frac = b & 0x7fffffu;
    if (b == 0 || ef == 0xff) {
      out[i] = kNoExponent;
      continue;
    }
    std::uint64_t m;
    std::int64_t e;
    if (ef == 0) {
      const int shift = 24 - bit_length(static_cast<std::uint64_t>(frac));
      m = static_cast<std::uint64_t>(frac) << shift;
      e = -149 - shift;
    } else {
      m = frac | 0x800000u;
      e = static_cast<std::int64_t>(ef) - 150;
    }
    out[i] = from_normalized(t, e + 23, m);
  }
}

void decimal_exponents_binary64_reference(const ExponentKernelTable& t, std::span<const std::uint64_t> bits,
                                          std::span<std::int32_t> out) noexcept {
  constexpr std::uint64_t kFrac = (std::uint64_t{1} << 52) - 1;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    const std::uint64_t b = bits[i] & 0x7fffffffffffffffull;
    const std::uint64_t ef = b >> 52;
    const std::uint64_t frac = b & kFrac;
    if (b == 0 || ef == 0x7ff) {
      out[i] = kNoExponent;
      continue;
    }
    std::uint64_t m;
    std::int64_t e;
    if (ef == 0) {
      const int shift = 53 - bit_length(frac);
      m = frac << shift;
      e = -1074 - shift;
    } else {
      m = frac | (kFrac + 1);
      e = static_cast<std::int64_t>(ef) - 1075;
    }
    out[i] = from_normalized(t, e + 52, m);
  }
}

}  // namespace rdx::kernels
