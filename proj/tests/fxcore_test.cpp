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

#include <gtest/gtest.h>

#include <random>

#include "rdx/fxcore.hpp"
#include "rdx/kernels.hpp"
#include "test_support.hpp"

namespace rdx {
namespace {

using test::value;

TEST(Normalize, SmallIntegers) {
  const ScaledInteger one = normalize(u128{1}, 0, 8);
  EXPECT_EQ(one.mant().low128(), 128u);
  EXPECT_EQ(one.exp2(), -7);
  const ScaledInteger five = normalize(u128{5}, 0, 8);
  EXPECT_EQ(five.mant().low128(), 160u);
  EXPECT_EQ(five.exp2(), -5);
}

TEST(Normalize, TruncatesLikeBigIntegerShift) {
  const u128 x = (u128{1} << 64) - 1;
  const ScaledInteger s = normalize(x, 0, 32);
  const mpz_class want = oracle::to_mpz(x) >> 32;
  EXPECT_EQ(oracle::to_mpz(s.mant().low128()), want);
  EXPECT_EQ(s.mant().low128(), (u128{1} << 32) - 1);
  EXPECT_EQ(s.exp2(), 32);
}

TEST(Normalize, ZeroIsRejected) { EXPECT_THROW(normalize(u128{0}, 0, 16), DomainError); }

TEST(Normalize, Idempotent) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 1000; ++i) {
    const u128 m = (static_cast<u128>(rng()) << 64) | rng();
    if (m == 0) continue;
    const int w = 1 + static_cast<int>(rng() % 128);
    const ScaledInteger a = normalize(m, static_cast<std::int64_t>(rng() % 200) - 100, w);
    const ScaledInteger b = normalize(a.mant(), a.exp2(), w);
    EXPECT_EQ(a, b);
    EXPECT_EQ(a.mant().bit_length(), w);
  }
}

TEST(Normalize, RelativeErrorBelowOneUlp) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 1000; ++i) {
    const u128 m = ((static_cast<u128>(rng()) << 64) | rng()) | 1;
    const int w = 1 + static_cast<int>(rng() % 100);
    const ScaledInteger s = normalize(m, 0, w);
    const mpq_class exact(oracle::to_mpz(m));
    const mpq_class err = (exact - value(s)) / exact;
    EXPECT_GE(err, 0);
    EXPECT_LT(err, test::pow2q(1 - w));
  }
}

TEST(MulTrunc, PowerOfTwoIsExact) {
  for (int w : {8, 64, 128, 200}) {
    const ScaledInteger h = ScaledInteger::from_normalized(Mant::power_of_two(w - 1), 0, w);
    const TruncatedProduct p = mul_trunc(h, h, w);
    EXPECT_EQ(p.v, Wide::power_of_two(w - 2)) << "w=" << w;
    EXPECT_EQ(p.exp2, w);
  }
}

TEST(MulTrunc, ThreeQuartersAtWidthEight) {
  const ScaledInteger a = ScaledInteger::from_normalized(Mant::from_u64(192), 0, 8);
  const TruncatedProduct p = mul_trunc(a, a, 8);
  EXPECT_EQ(p.v, Wide::from_u64(36864 / 256));
  EXPECT_EQ(p.v, Wide::from_u64(144));
  EXPECT_EQ(p.exp2, 8);
}

TEST(MulTrunc, LambdaZeroIsExact) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    const u128 x = (static_cast<u128>(rng()) << 64) | rng() | (u128{1} << 127);
    const u128 y = (static_cast<u128>(rng()) << 64) | rng() | (u128{1} << 127);
    const TruncatedProduct p = mul_trunc(normalize(x, 0, 128), normalize(y, 0, 128), 0);
    mpz_class got;
    mpz_import(got.get_mpz_t(), Wide::kLimbs, -1, 8, 0, 0, p.v.limb.data());
    EXPECT_EQ(got, oracle::to_mpz(x) * oracle::to_mpz(y));
  }
}

// Every normalized pair at w = 8 and every lambda.
TEST(MulTrunc, BruteForceWidthEight) {
  for (int lambda = 0; lambda <= 8; ++lambda) {
    for (unsigned a = 128; a < 256; ++a) {
      for (unsigned b = 128; b < 256; ++b) {
        const ScaledInteger sa = ScaledInteger::from_normalized(Mant::from_u64(a), 0, 8);
        const ScaledInteger sb = ScaledInteger::from_normalized(Mant::from_u64(b), 0, 8);
        const TruncatedProduct p = mul_trunc(sa, sb, lambda);
        const std::uint64_t exact = a * b;
        const std::uint64_t raw = p.v.limb[0] << lambda;
        ASSERT_LE(raw, exact);
        ASSERT_GT(raw + (std::uint64_t{1} << lambda), exact);
        ASSERT_EQ(p.exp2, lambda);
      }
    }
  }
}

TEST(MulTrunc, RejectsBadLambdaAndWidthMismatch) {
  const ScaledInteger a = normalize(u128{3}, 0, 8);
  EXPECT_THROW(mul_trunc(a, a, 9), RangeError);
  EXPECT_THROW(mul_trunc(a, normalize(u128{3}, 0, 9), 0), DomainError);
}

TEST(MulTruncNorm, KernelsAgree) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 20000; ++i) {
    const int w = 2 + static_cast<int>(rng() % 127);
    const int lambda = static_cast<int>(rng() % static_cast<unsigned>(w + 1));
    const u128 x = (static_cast<u128>(rng()) << 64) | rng() | 1;
    const u128 y = (static_cast<u128>(rng()) << 64) | rng() | 1;
    const ScaledInteger a = normalize(x, static_cast<std::int64_t>(rng() % 64) - 32, w);
    const ScaledInteger b = normalize(y, static_cast<std::int64_t>(rng() % 64) - 32, w);
    const NormalizedProduct r = kernels::mul_norm_reference(a, b, lambda);
    const NormalizedProduct n = kernels::mul_norm_native128(a, b, lambda);
    ASSERT_EQ(r.value, n.value) << "w=" << w << " lambda=" << lambda;
    ASSERT_EQ(r.shift, n.shift);
  }
}

TEST(MulTruncNorm, MatchesTruncatedProductThenNormalize) {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 2000; ++i) {
    const int w = 64 + static_cast<int>(rng() % 193);
    const int lambda = static_cast<int>(rng() % static_cast<unsigned>(w));
    Mant x, y;
    for (std::size_t l = 0; l < Mant::kLimbs; ++l) {
      x.limb[l] = rng();
      y.limb[l] = rng();
    }
    const ScaledInteger a = normalize(x, 0, w);
    const ScaledInteger b = normalize(y, 0, w);
    const TruncatedProduct t = mul_trunc(a, b, lambda);
    const NormalizedProduct p = mul_trunc_norm(a, b, lambda);
    EXPECT_EQ(p.value, normalize(t.v, t.exp2, w));
    EXPECT_EQ(p.value.exp2(), a.exp2() + b.exp2() + lambda + p.shift);
    EXPECT_GE(p.shift, -1);
  }
}

TEST(MulTruncNorm, KernelSelection) {
  EXPECT_EQ(kernels::mul_kernel_for(128), kernels::Isa::Native128);
  EXPECT_EQ(kernels::mul_kernel_for(160), kernels::Isa::Reference);
}

ScaledInteger dyadic(std::int64_t num, int frac_bits) { return normalize(static_cast<u128>(num), -frac_bits, 64); }

TEST(RoundScaled, ExactPowerOfTen) {
  const RoundedMantissa r = round_scaled(normalize(u128{100000000}, 0, 128), 9, 10, RoundingMode::NearestEven);
  EXPECT_EQ(r.mant, u128{100000000});
  EXPECT_FALSE(r.carry);
  EXPECT_FALSE(r.inexact);
}

TEST(RoundScaled, DecadeCarry) {
  // 999999999.625
  const RoundedMantissa r = round_scaled(dyadic(7999999997, 3), 9, 10, RoundingMode::NearestEven);
  EXPECT_EQ(r.mant, u128{100000000});
  EXPECT_TRUE(r.carry);
  EXPECT_TRUE(r.inexact);
}

TEST(RoundScaled, TiesGoToEven) {
  EXPECT_EQ(round_scaled(dyadic(5, 1), 1, 10, RoundingMode::NearestEven).mant, u128{2});   // 2.5
  EXPECT_EQ(round_scaled(dyadic(7, 1), 1, 10, RoundingMode::NearestEven).mant, u128{4});   // 3.5
  EXPECT_EQ(round_scaled(dyadic(31, 1), 2, 10, RoundingMode::NearestEven).mant, u128{16});  // 15.5
  EXPECT_EQ(round_scaled(dyadic(5, 1), 2, 2, RoundingMode::NearestEven).mant, u128{2});    // 2.5
  const RoundedMantissa c = round_scaled(dyadic(7, 1), 2, 2, RoundingMode::NearestEven);  // 3.5 -> 4
  EXPECT_EQ(c.mant, u128{2});
  EXPECT_TRUE(c.carry);
}

TEST(RoundScaled, DirectedModes) {
  const ScaledInteger x = dyadic(41, 2);  // 10.25
  EXPECT_EQ(round_scaled(x, 2, 10, RoundingMode::Down).mant, u128{10});
  EXPECT_EQ(round_scaled(x, 2, 10, RoundingMode::TowardZero).mant, u128{10});
  EXPECT_EQ(round_scaled(x, 2, 10, RoundingMode::Up).mant, u128{11});
  EXPECT_EQ(round_scaled(x, 2, 10, RoundingMode::NearestEven).mant, u128{10});
}

TEST(RoundScaled, RejectsOversizedValues) {
  EXPECT_THROW(round_scaled(normalize(u128{1000}, 0, 64), 2, 10, RoundingMode::Down), RangeError);
  EXPECT_THROW(round_scaled(normalize(u128{7}, 0, 64), 2, 3, RoundingMode::Down), RangeError);
}

// Random cases against exact rational rounding.
TEST(RoundScaled, AgreesWithRationalRounding) {
  std::mt19937_64 rng(13);
  const RoundingMode modes[] = {RoundingMode::NearestEven, RoundingMode::Down, RoundingMode::Up};
  for (int i = 0; i < 100000; ++i) {
    const int radix = (rng() & 1) != 0 ? 10 : 2;
    const int precision = radix == 10 ? 1 + static_cast<int>(rng() % 19) : 1 + static_cast<int>(rng() % 64);
    const u128 limit = pow_u128(static_cast<unsigned>(radix), precision);
    const int frac = static_cast<int>(rng() % 40);
    // An integer part in [0, limit) with `frac` random fraction bits.
    const u128 ipart = (static_cast<u128>(rng()) << 64 | rng()) % limit;
    const u128 num = (ipart << frac) | (frac == 0 ? 0 : rng() & ((std::uint64_t{1} << frac) - 1));
    if (num == 0) continue;
    const RoundingMode mode = modes[rng() % 3];
    const ScaledInteger v = normalize(num, -frac, 128);
    const RoundedMantissa r = round_scaled(v, precision, radix, mode);

    const mpq_class exact = value(v);
    const mpz_class fl = oracle::to_mpz(num) >> frac;
    const mpq_class rest = exact - mpq_class(fl);
    mpz_class want = fl;
    if (mode == RoundingMode::Up && rest > 0) want += 1;
    if (mode == RoundingMode::NearestEven && (rest > mpq_class(1, 2) || (rest == mpq_class(1, 2) && mpz_odd_p(fl.get_mpz_t()))))
      want += 1;
    const mpz_class got = r.carry ? oracle::to_mpz(r.mant) * radix : oracle::to_mpz(r.mant);
    ASSERT_EQ(got, want) << "case " << i;
    ASSERT_EQ(r.inexact, rest != 0);
    if (mode == RoundingMode::Down) {
      ASSERT_LE(mpq_class(got), exact);
    } else if (mode == RoundingMode::Up) {
      ASSERT_GE(mpq_class(got), exact);
    } else {
      ASSERT_LE(abs(mpq_class(got) - exact), mpq_class(1, 2));
    }
  }
}

TEST(RoundingModes, ParseAndMagnitude) {
  EXPECT_EQ(parse_rounding_mode("nearest"), RoundingMode::NearestEven);
  EXPECT_EQ(parse_rounding_mode("zero"), RoundingMode::TowardZero);
  EXPECT_THROW(parse_rounding_mode("sideways"), FormatError);
  EXPECT_EQ(magnitude_mode(RoundingMode::Down, true), RoundingMode::Up);
  EXPECT_EQ(magnitude_mode(RoundingMode::Up, true), RoundingMode::Down);
  EXPECT_EQ(magnitude_mode(RoundingMode::TowardZero, true), RoundingMode::Down);
}

TEST(FormatParamsTest, Validation) {
  FormatParams f;
  EXPECT_NO_THROW(f.validate());
  f.lambda = 129;
  EXPECT_THROW(f.validate(), RangeError);
  f = FormatParams{};
  f.fmin = f.fmax;
  EXPECT_THROW(f.validate(), RangeError);
}

}  // namespace
}  // namespace rdx
