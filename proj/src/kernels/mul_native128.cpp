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

struct U256 {
  u128 hi;
  u128 lo;
};

inline U256 mul_128x128(u128 a, u128 b) noexcept {
  const auto a0 = static_cast<std::uint64_t>(a), a1 = static_cast<std::uint64_t>(a >> 64);
  const auto b0 = static_cast<std::uint64_t>(b), b1 = static_cast<std::uint64_t>(b >> 64);
  const u128 p00 = static_cast<u128>(a0) * b0;
  const u128 p01 = static_cast<u128>(a0) * b1;
  const u128 p10 = static_cast<u128>(a1) * b0;
  const u128 p11 = static_cast<u128>(a1) * b1;
  const u128 mid = (p00 >> 64) + static_cast<std::uint64_t>(p01) + static_cast<std::uint64_t>(p10);
  return {p11 + (p01 >> 64) + (p10 >> 64) + (mid >> 64), (mid << 64) | static_cast<std::uint64_t>(p00)};
}

// Low 128 bits of x >> s, 0 <= s < 256.
inline u128 shr_low(const U256& x, int s) noexcept {
  if (s == 0) return x.lo;
  if (s < 128) return (x.lo >> s) | (x.hi << (128 - s));
  return x.hi >> (s - 128);
}

}  // namespace

NormalizedProduct mul_norm_native128(const ScaledInteger& a, const ScaledInteger& b, int lambda) noexcept {
  const int w = a.width();
  const U256 p = mul_128x128(a.mant().low128(), b.mant().low128());
  const int len = p.hi != 0 ? 128 + bit_length(p.hi) : bit_length(p.lo);
  const int d = len - w - lambda;
  u128 v;
  if (d >= 0) {
    v = shr_low(p, lambda + d);
  } else {
    // lambda >= w - 1: the truncated product is one bit short.
    v = shr_low(p, lambda) << -d;
  }
  return {ScaledInteger::assume_normalized(Mant::from_u128(v), a.exp2() + b.exp2() + lambda + d, w), d};
}

}  // namespace rdx::kernels
