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

#include "rdx/fxcore.hpp"

#include <array>
#include <string>

#include "rdx/kernels.hpp"

namespace rdx {

std::string_view to_string(RoundingMode m) noexcept {
  switch (m) {
    case RoundingMode::NearestEven: return "nearest";
    case RoundingMode::Down: return "down";
    case RoundingMode::Up: return "up";
    case RoundingMode::TowardZero: return "zero";
  }
  return "?";
}

RoundingMode parse_rounding_mode(std::string_view s) {
  if (s == "nearest" || s == "ne" || s == "nearest-even") return RoundingMode::NearestEven;
  if (s == "down") return RoundingMode::Down;
  if (s == "up") return RoundingMode::Up;
  if (s == "zero" || s == "towardzero" || s == "toward-zero") return RoundingMode::TowardZero;
  throw FormatError("unknown rounding mode '" + std::string(s) + "'");
}

void FormatParams::validate() const {
  if (p2 < 1 || p2 > 126) throw RangeError("p2 must be in [1, 126]");
  if (p10 < 1 || p10 > 37) throw RangeError("p10 must be in [1, 37]");
  if (emin >= emax) throw RangeError("emin must be below emax");
  if (fmin >= fmax) throw RangeError("fmin must be below fmax");
  if (w < 2 || w > kMaxWidth) throw RangeError("w must be in [2, " + std::to_string(kMaxWidth) + "]");
  if (lambda < 0 || lambda > w) throw RangeError("lambda must be in [0, w]");
}

ScaledInteger ScaledInteger::from_normalized(const Mant& mant, std::int64_t exp2, int width) {
  if (width < 1 || width > kMaxWidth) throw DomainError("width out of range");
  if (mant.bit_length() != width) throw DomainError("mantissa is not normalized at width " + std::to_string(width));
  return assume_normalized(mant, exp2, width);
}

template <std::size_t N>
ScaledInteger normalize(const WideUint<N>& mant, std::int64_t exp2, int w) {
  if (w < 1 || w > kMaxWidth) throw DomainError("width out of range");
  const int len = mant.bit_length();
  if (len == 0) throw DomainError("zero has no normalized form");
  if (len > w) {
    const int s = len - w;
    return ScaledInteger::assume_normalized(mant.shr(s).template resized<Mant::kLimbs>(), exp2 + s, w);
  }
  const int s = w - len;
  return ScaledInteger::assume_normalized(mant.template resized<Mant::kLimbs>().shl(s), exp2 - s, w);
}

template ScaledInteger normalize<4>(const WideUint<4>&, std::int64_t, int);
template ScaledInteger normalize<8>(const WideUint<8>&, std::int64_t, int);

ScaledInteger normalize(u128 mant, std::int64_t exp2, int w) { return normalize(Mant::from_u128(mant), exp2, w); }

namespace {
thread_local std::uint64_t tl_products = 0;
}  // namespace

std::uint64_t products_formed() noexcept { return tl_products; }

TruncatedProduct mul_trunc(const ScaledInteger& a, const ScaledInteger& b, int lambda) {
  if (a.width() != b.width()) throw DomainError("mul_trunc operands differ in width");
  if (lambda < 0 || lambda > a.width()) throw RangeError("lambda must be in [0, w]");
  ++tl_products;
  const Wide p = full_product(a.mant(), b.mant());
  return {p.shr(lambda), a.exp2() + b.exp2() + lambda};
}

NormalizedProduct mul_trunc_norm(const ScaledInteger& a, const ScaledInteger& b, int lambda) noexcept {
  ++tl_products;
  if (a.width() <= 128) return kernels::mul_norm_native128(a, b, lambda);
  return kernels::mul_norm_reference(a, b, lambda);
}

namespace {

template <unsigned Radix>
struct PowerTable {
  std::array<u128, 128> v{};
  int count = 0;
  constexpr PowerTable() {
    u128 r = 1;
    for (;;) {
      v[static_cast<std::size_t>(count++)] = r;
      if (r > ~u128{0} / Radix) break;
      r *= Radix;
    }
  }
};

constexpr PowerTable<5> kPow5;
constexpr PowerTable<10> kPow10;

}  // namespace

u128 pow_u128(unsigned radix, int k) {
  if (k < 0) throw RangeError("negative power");
  if (radix == 10 && k < kPow10.count) return kPow10.v[static_cast<std::size_t>(k)];
  if (radix == 5 && k < kPow5.count) return kPow5.v[static_cast<std::size_t>(k)];
  if (radix == 2 && k < 128) return u128{1} << k;
  u128 r = 1;
  for (int i = 0; i < k; ++i) {
    if (r > ~u128{0} / radix) throw RangeError("power does not fit 128 bits");
    r *= radix;
  }
  return r;
}

RoundedMantissa round_scaled(const ScaledInteger& value, int precision, int radix, RoundingMode mode) {
  if (radix != 2 && radix != 10) throw RangeError("radix must be 2 or 10");
  const u128 limit = pow_u128(static_cast<unsigned>(radix), precision);
  const Mant& m = value.mant();
  RoundedMantissa r;

  if (value.exp2() >= 0) {
    if (value.exp2() + value.width() > 127) throw RangeError("integer part does not fit");
    r.mant = m.low128() << value.exp2();
  } else {
    const std::int64_t fb = -value.exp2();
    if (fb >= value.width() + 1) {
      // Entire value below one half.
      r.inexact = true;
      r.mant = mode == RoundingMode::Up ? 1 : 0;
    } else {
      const int f = static_cast<int>(fb);
      const Mant ip = m.shr(f);
      if (ip.bit_length() > 127) throw RangeError("integer part does not fit");
      const u128 ipart = ip.low128();
      const Mant frac = m.low_bits(f);
      const bool nonzero = !frac.is_zero();
      r.inexact = nonzero;
      bool up = false;
      switch (mode) {
        case RoundingMode::NearestEven: {
          const int c = compare(frac, Mant::power_of_two(f - 1));
          up = c > 0 || (c == 0 && (ipart & 1) != 0);
          break;
        }
        case RoundingMode::Up: up = nonzero; break;
        case RoundingMode::Down:
        case RoundingMode::TowardZero: up = false; break;
      }
      r.mant = ipart + (up ? 1 : 0);
    }
  }

  if (r.mant > limit) throw RangeError("value exceeds the target precision");
  if (r.mant == limit) {
    r.mant = limit / static_cast<unsigned>(radix);
    r.carry = true;
  }
  return r;
}

}  // namespace rdx
