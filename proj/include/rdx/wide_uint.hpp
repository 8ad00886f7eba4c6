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

#pragma once

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <string>

namespace rdx {

using u128 = unsigned __int128;
using i128 = __int128;

inline int bit_length(std::uint64_t x) noexcept { return 64 - std::countl_zero(x); }

inline int bit_length(u128 x) noexcept {
  const auto hi = static_cast<std::uint64_t>(x >> 64);
  return hi != 0 ? 64 + bit_length(hi) : bit_length(static_cast<std::uint64_t>(x));
}

// Fixed-capacity unsigned integer, little-endian 64-bit limbs.
template <std::size_t Limbs>
struct WideUint {
  static constexpr std::size_t kLimbs = Limbs;
  static constexpr int kBits = static_cast<int>(Limbs * 64);

  std::array<std::uint64_t, Limbs> limb{};

  constexpr WideUint() = default;

  static constexpr WideUint from_u64(std::uint64_t x) noexcept {
    WideUint r;
    r.limb[0] = x;
    return r;
  }

  static constexpr WideUint from_u128(u128 x) noexcept {
    static_assert(Limbs >= 2);
    WideUint r;
    r.limb[0] = static_cast<std::uint64_t>(x);
    r.limb[1] = static_cast<std::uint64_t>(x >> 64);
    return r;
  }

  static constexpr WideUint power_of_two(int k) noexcept {
    WideUint r;
    r.limb[static_cast<std::size_t>(k) / 64] = std::uint64_t{1} << (k % 64);
    return r;
  }

  template <std::size_t M>
  constexpr WideUint<M> resized() const noexcept {
    WideUint<M> r;
    for (std::size_t i = 0; i < (M < Limbs ? M : Limbs); ++i) r.limb[i] = limb[i];
    return r;
  }

  constexpr bool is_zero() const noexcept {
    for (auto l : limb)
      if (l != 0) return false;
    return true;
  }

  int bit_length() const noexcept {
    for (std::size_t i = Limbs; i-- > 0;)
      if (limb[i] != 0) return static_cast<int>(i * 64) + rdx::bit_length(limb[i]);
    return 0;
  }

  constexpr bool bit(int k) const noexcept {
    return ((limb[static_cast<std::size_t>(k) / 64] >> (k % 64)) & 1u) != 0;
  }

  /// Low 128 bits.
  constexpr u128 low128() const noexcept {
    if constexpr (Limbs == 1) {
      return limb[0];
    } else {
      return (static_cast<u128>(limb[1]) << 64) | limb[0];
    }
  }

  constexpr WideUint shr(int k) const noexcept {
    WideUint r;
    if (k >= kBits) return r;
    const std::size_t ls = static_cast<std::size_t>(k) / 64;
    const int bs = k % 64;
    for (std::size_t i = 0; i + ls < Limbs; ++i) {
      std::uint64_t v = limb[i + ls] >> bs;
      if (bs != 0 && i + ls + 1 < Limbs) v |= limb[i + ls + 1] << (64 - bs);
      r.limb[i] = v;
    }
    return r;
  }

  constexpr WideUint shl(int k) const noexcept {
    WideUint r;
    if (k >= kBits) return r;
    const std::size_t ls = static_cast<std::size_t>(k) / 64;
    const int bs = k % 64;
    for (std::size_t i = Limbs; i-- > ls;) {
      std::uint64_t v = limb[i - ls] << bs;
      if (bs != 0 && i - ls >= 1) v |= limb[i - ls - 1] >> (64 - bs);
      r.limb[i] = v;
    }
    return r;
  }

  /// Bits [0, k).
  constexpr WideUint low_bits(int k) const noexcept {
    if (k >= kBits) return *this;
    WideUint r = *this;
    const std::size_t ls = static_cast<std::size_t>(k) / 64;
    const int bs = k % 64;
    for (std::size_t i = ls + 1; i < Limbs; ++i) r.limb[i] = 0;
    r.limb[ls] = bs == 0 ? 0 : (r.limb[ls] & ((std::uint64_t{1} << bs) - 1));
    return r;
  }

  constexpr WideUint add(const WideUint& o) const noexcept {
    WideUint r;
    unsigned carry = 0;
    for (std::size_t i = 0; i < Limbs; ++i) {
      const u128 s = static_cast<u128>(limb[i]) + o.limb[i] + carry;
      r.limb[i] = static_cast<std::uint64_t>(s);
      carry = static_cast<unsigned>(s >> 64);
    }
    return r;
  }

  /// Wraps modulo 2^kBits when o > *this.
  constexpr WideUint sub(const WideUint& o) const noexcept {
    WideUint r;
    std::uint64_t borrow = 0;
    for (std::size_t i = 0; i < Limbs; ++i) {
      const std::uint64_t a = limb[i];
      const std::uint64_t d = a - o.limb[i] - borrow;
      borrow = (a < o.limb[i] || (a == o.limb[i] && borrow)) ? 1 : 0;
      r.limb[i] = d;
    }
    return r;
  }

  friend constexpr bool operator==(const WideUint&, const WideUint&) = default;

  friend constexpr int compare(const WideUint& a, const WideUint& b) noexcept {
    for (std::size_t i = Limbs; i-- > 0;) {
      if (a.limb[i] != b.limb[i]) return a.limb[i] < b.limb[i] ? -1 : 1;
    }
    return 0;
  }
  friend constexpr bool operator<(const WideUint& a, const WideUint& b) noexcept { return compare(a, b) < 0; }
  friend constexpr bool operator<=(const WideUint& a, const WideUint& b) noexcept { return compare(a, b) <= 0; }
  friend constexpr bool operator>(const WideUint& a, const WideUint& b) noexcept { return compare(a, b) > 0; }
  friend constexpr bool operator>=(const WideUint& a, const WideUint& b) noexcept { return compare(a, b) >= 0; }

  std::string to_hex() const {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string s;
    bool started = false;
    for (std::size_t i = Limbs; i-- > 0;) {
      for (int nib = 15; nib >= 0; --nib) {
        const unsigned d = static_cast<unsigned>((limb[i] >> (nib * 4)) & 0xf);
        if (d != 0) started = true;
        if (started) s.push_back(kDigits[d]);
      }
    }
    return started ? "0x" + s : "0x0";
  }
};

/// Full product; only the low `used_a` / `used_b` limbs of the operands are read.
template <std::size_t A, std::size_t B>
WideUint<A + B> full_product(const WideUint<A>& a, const WideUint<B>& b, std::size_t used_a = A,
                             std::size_t used_b = B) noexcept {
  WideUint<A + B> r;
  for (std::size_t i = 0; i < used_a; ++i) {
    std::uint64_t carry = 0;
    for (std::size_t j = 0; j < used_b; ++j) {
      const u128 t = static_cast<u128>(a.limb[i]) * b.limb[j] + r.limb[i + j] + carry;
      r.limb[i + j] = static_cast<std::uint64_t>(t);
      carry = static_cast<std::uint64_t>(t >> 64);
    }
    r.limb[i + used_b] = carry;
  }
  return r;
}

}  // namespace rdx
