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

#include <algorithm>
#include <random>
#include <vector>

#include "rdx/exponent.hpp"
#include "rdx/kernels.hpp"
#include "test_support.hpp"

namespace rdx {
namespace {

FormatParams small_format(int p2, int p10) {
  FormatParams f;
  f.p2 = p2;
  f.p10 = p10;
  f.emin = -40;
  f.emax = 40;
  f.fmin = -20;
  f.fmax = 20;
  return f;
}

ExponentTables exponent_tables(const FormatParams& f) {
  ExponentTables t;
  t.bin2dec = gen_threshold_table(f, ThresholdDirection::BinToDec);
  t.dec2bin = gen_threshold_table(f, ThresholdDirection::DecToBin);
  t.log10_2 = gen_mulshift(LogKind::Log10Of2, t.bin2dec.first_exponent, t.bin2dec.last_exponent());
  t.log2_10 = gen_mulshift(LogKind::Log2Of10, f.fmin, f.fmax);
  return t;
}

std::int64_t oracle_f(std::int64_t e, u128 m, int p10) {
  return oracle::exact_floor_log(10, e, oracle::to_mpz(m)) - p10 + 1;
}

std::int64_t oracle_e(std::int64_t f, u128 n, int p2) {
  return oracle::exact_floor_log(2, f, oracle::to_mpz(n)) - p2 + 1;
}

TEST(FloorLog, PowersOfTwo) {
  const MulShiftConstant c = gen_mulshift(LogKind::Log10Of2, -1100, 1100);
  EXPECT_EQ(floor_log10_pow2(0, c), 0);
  EXPECT_EQ(floor_log10_pow2(10, c), 3);
  EXPECT_EQ(floor_log10_pow2(-10, c), -4);
  EXPECT_THROW(floor_log10_pow2(1101, c), RangeError);
  EXPECT_THROW(floor_log2_pow10(1, c), DomainError);
}

TEST(FloorLog, PowersOfTen) {
  const MulShiftConstant c = gen_mulshift(LogKind::Log2Of10, -400, 400);
  EXPECT_EQ(floor_log2_pow10(0, c), 0);
  EXPECT_EQ(floor_log2_pow10(1, c), 3);
  EXPECT_EQ(floor_log2_pow10(-1, c), -4);
  EXPECT_THROW(floor_log2_pow10(-401, c), RangeError);
}

TEST(FloorLog, AgreesWithOracleOverRange) {
  const MulShiftConstant c10 = gen_mulshift(LogKind::Log10Of2, -17000, 17000);
  const MulShiftConstant c2 = gen_mulshift(LogKind::Log2Of10, -6200, 6200);
  for (std::int64_t e = -17000; e <= 17000; e += 7) ASSERT_EQ(floor_log10_pow2(e, c10), oracle::exact_floor_log(10, e, 1));
  for (std::int64_t f = -6200; f <= 6200; f += 3) ASSERT_EQ(floor_log2_pow10(f, c2), oracle::exact_floor_log(2, f, 1));
}

TEST(ReduceBinade, FoldsParity) {
  // p2 = 3: mantissas 4..7 stand for 1.00b .. 1.11b; results carry 5 fraction bits.
  const FixedBinade a = reduce_binade(4, 4, 3);
  EXPECT_EQ(a.exponent, 4);
  EXPECT_EQ(a.mantissa, u128{32});  // 1.0
  EXPECT_EQ(a.frac_bits, 5);
  const FixedBinade b = reduce_binade(3, 5, 3);
  EXPECT_EQ(b.exponent, 2);
  EXPECT_EQ(b.mantissa, u128{80});  // 2.5
  const FixedBinade c = reduce_binade(-5, 6, 3);
  EXPECT_EQ(c.exponent, -6);
  EXPECT_EQ(c.mantissa, u128{96});  // 3.0
}

TEST(ReduceBinade, PreservesValue) {
  for (std::int64_t e = -9; e <= 9; ++e) {
    for (u128 m = 4; m < 8; ++m) {
      const FixedBinade r = reduce_binade(e, m, 3);
      EXPECT_EQ(r.exponent % 2, 0);
      // 2^e * m / 4 == 2^e' * mantissa / 32
      const mpq_class before = test::pow2q(e) * mpq_class(oracle::to_mpz(m)) / 4;
      const mpq_class after = test::pow2q(r.exponent) * mpq_class(oracle::to_mpz(r.mantissa)) / 32;
      EXPECT_EQ(before, after) << "e=" << e;
    }
  }
}

TEST(Gamma, Binary32Thresholds) {
  const TableSet& t = test::tables("binary32");
  const int fb = t.exponent.bin2dec.frac_bits;
  EXPECT_EQ(fb, 26);
  EXPECT_EQ(gamma(0, u128{1} << fb, t.exponent.bin2dec), 0);
  EXPECT_EQ(gamma(2, u128{5} << (fb - 1), t.exponent.bin2dec), 1);  // 2^2 * 2.5 = 10
  const u128 m24 = (u128{12} << fb) / 5;                            // 2.4, rounded down
  EXPECT_EQ(gamma(2, m24, t.exponent.bin2dec), 0);
  EXPECT_EQ(gamma(2, (u128{5} << (fb - 1)) - 1, t.exponent.bin2dec), 0);
}

TEST(Thresholds, NeverAndExactEntries) {
  const ThresholdTable& tbl = test::tables("binary32").exponent.bin2dec;
  EXPECT_EQ(tbl.at(0), tbl.never());
  EXPECT_EQ(tbl.at(2), u128{5} << (tbl.frac_bits - 1));
  EXPECT_FALSE(tbl.covers(1));
  EXPECT_THROW(tbl.at(1), RangeError);
  EXPECT_THROW(tbl.at(tbl.last_exponent() + 2), RangeError);
}

TEST(DecimalExponent, Examples) {
  const FormatParams f1 = small_format(1, 1);
  EXPECT_EQ(decimal_exponent(0, 1, f1, exponent_tables(f1)), 0);

  const FormatParams f3 = small_format(3, 2);
  EXPECT_EQ(decimal_exponent(1, 5, f3, exponent_tables(f3)), 0);  // 2 * 5 = 10

  const TableSet& t = test::tables("binary64");
  EXPECT_EQ(decimal_exponent(-52, u128{1} << 52, t.fmt, t.exponent), -16);
  EXPECT_THROW(decimal_exponent(0, 3, t.fmt, t.exponent), DomainError);
}

TEST(BinaryExponent, Examples) {
  const FormatParams f1 = small_format(1, 1);
  EXPECT_EQ(binary_exponent(0, 1, f1, exponent_tables(f1)), 0);

  const TableSet& t = test::tables("decimal64");
  EXPECT_EQ(binary_exponent(0, pow_u128(10, 15), t.fmt, t.exponent), -3);
  EXPECT_EQ(decimal_kappa(16), 54);
  EXPECT_THROW(binary_exponent(0, 12, t.fmt, t.exponent), DomainError);
}

// Every mantissa within 8 ulps of each threshold plus random ones.
void check_bin2dec(const TableSet& t, int random_per_exponent) {
  const FormatParams& f = t.fmt;
  std::mt19937_64 rng(17);
  const u128 lo = u128{1} << (f.p2 - 1);
  const u128 hi = u128{1} << f.p2;
  for (std::int64_t e = f.emin; e <= f.emax; ++e) {
    const FixedBinade r = reduce_binade(e + f.p2 - 1, lo, f.p2);
    const u128 thr = t.exponent.bin2dec.at(r.exponent);
    const int sh = 3 + static_cast<int>((e + f.p2 - 1) & 1);
    std::vector<u128> ms;
    const u128 centre = thr >> sh;
    for (int d = -8; d <= 8; ++d) ms.push_back(centre + static_cast<u128>(static_cast<std::int64_t>(d)));
    for (int i = 0; i < random_per_exponent; ++i) ms.push_back(lo + static_cast<u128>(rng()) % (hi - lo));
    ms.push_back(lo);
    ms.push_back(hi - 1);
    for (const u128 m : ms) {
      if (m < lo || m >= hi) continue;
      ASSERT_EQ(decimal_exponent(e, m, f, t.exponent), oracle_f(e, m, f.p10)) << "E=" << e;
    }
  }
}

TEST(DecimalExponent, Binary64AgainstOracle) { check_bin2dec(test::tables("binary64"), 200); }
TEST(DecimalExponent, Decimal64AgainstOracle) { check_bin2dec(test::tables("decimal64"), 50); }
TEST(DecimalExponent, Binary128AgainstOracle) { check_bin2dec(test::tables("binary128"), 2); }

TEST(DecimalExponent, MonotoneInMantissa) {
  const TableSet& t = test::tables("binary64");
  std::mt19937_64 rng(19);
  for (int i = 0; i < 200; ++i) {
    const std::int64_t e = t.fmt.emin + static_cast<std::int64_t>(rng() % (t.fmt.emax - t.fmt.emin + 1));
    std::vector<u128> ms(64);
    for (u128& m : ms) m = (u128{1} << 52) + (rng() & ((std::uint64_t{1} << 52) - 1));
    std::sort(ms.begin(), ms.end());
    std::int64_t prev = decimal_exponent(e, ms[0], t.fmt, t.exponent);
    for (const u128 m : ms) {
      const std::int64_t f = decimal_exponent(e, m, t.fmt, t.exponent);
      ASSERT_GE(f, prev);
      ASSERT_LE(f, prev + 1);
      prev = f;
    }
  }
}

void check_dec2bin(const TableSet& t, int random_per_exponent) {
  const FormatParams& f = t.fmt;
  std::mt19937_64 rng(23);
  const u128 lo = pow_u128(10, f.p10 - 1);
  const u128 hi = pow_u128(10, f.p10);
  for (std::int64_t fe = f.fmin; fe <= f.fmax; ++fe) {
    std::vector<u128> ns{lo, hi - 1};
    for (int i = 0; i < random_per_exponent; ++i) ns.push_back(lo + static_cast<u128>(rng()) % (hi - lo));
    // Mantissas next to each power of two inside the decade.
    for (int k = bit_length(lo); k <= bit_length(hi); ++k) {
      for (int d = -2; d <= 2; ++d) ns.push_back((u128{1} << k) + static_cast<u128>(static_cast<std::int64_t>(d)));
    }
    for (const u128 n : ns) {
      if (n < lo || n >= hi) continue;
      ASSERT_EQ(binary_exponent(fe, n, f, t.exponent), oracle_e(fe, n, f.p2)) << "F=" << fe;
    }
  }
}

TEST(BinaryExponent, Decimal64AgainstOracle) { check_dec2bin(test::tables("decimal64"), 100); }
TEST(BinaryExponent, Binary64AgainstOracle) { check_dec2bin(test::tables("binary64"), 100); }
TEST(BinaryExponent, Decimal32AgainstOracle) { check_dec2bin(test::tables("decimal32"), 200); }

// Batch kernels against the scalar path and against each other.

std::vector<std::uint32_t> random_bits32(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::uint32_t> v(n);
  for (auto& x : v) x = static_cast<std::uint32_t>(rng());
  // Specials, subnormals and extremes at odd positions so they also hit vector tails.
  const std::uint32_t edge[] = {0u, 0x80000000u, 1u, 0x7fffffu, 0x800000u, 0x7f7fffffu, 0x7f800000u, 0xffc00000u, 0x3f800000u};
  for (std::size_t i = 0; i < std::size(edge) && 3 * i + 1 < n; ++i) v[3 * i + 1] = edge[i];
  return v;
}

std::vector<std::uint64_t> random_bits64(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::uint64_t> v(n);
  for (auto& x : v) x = rng();
  const std::uint64_t edge[] = {0ull, 1ull, 0x000fffffffffffffull, 0x0010000000000000ull, 0x7fefffffffffffffull,
                                0x7ff0000000000000ull, 0x7ff8000000000000ull, 0x3ff0000000000000ull};
  for (std::size_t i = 0; i < std::size(edge) && 3 * i + 1 < n; ++i) v[3 * i + 1] = edge[i];
  return v;
}

TEST(BatchExponent, Binary32MatchesScalar) {
  const TableSet& t = test::tables("binary32");
  const BatchExponentTable batch(t.fmt, t.exponent);
  for (const std::size_t n : {0u, 1u, 7u, 8u, 9u, 1000u, 4099u}) {
    const auto bits = random_bits32(n, 29 + n);
    std::vector<std::int32_t> ref(n), got(n);
    kernels::decimal_exponents_binary32_reference(batch.view(), bits, ref);
    kernels::decimal_exponents_binary32(batch.view(), bits, got);
    EXPECT_EQ(ref, got) << "n=" << n;
    if (kernels::cpu_has_avx2()) {
      std::vector<std::int32_t> avx(n);
      kernels::decimal_exponents_binary32_avx2(batch.view(), bits, avx);
      EXPECT_EQ(ref, avx) << "n=" << n;
    }
    for (std::size_t i = 0; i < n; ++i) {
      const BinaryFP x = decode_binary32(bits[i]);
      if (x.special != Special::None) {
        ASSERT_EQ(ref[i], kernels::kNoExponent);
        continue;
      }
      const int len = bit_length(x.mantissa);
      ASSERT_EQ(ref[i], decimal_exponent(x.exponent - (24 - len), x.mantissa << (24 - len), t.fmt, t.exponent));
    }
  }
}

TEST(BatchExponent, Binary64MatchesScalar) {
  const TableSet& t = test::tables("binary64");
  const BatchExponentTable batch(t.fmt, t.exponent);
  for (const std::size_t n : {0u, 1u, 3u, 4u, 5u, 1000u, 4099u}) {
    const auto bits = random_bits64(n, 31 + n);
    std::vector<std::int32_t> ref(n), got(n);
    kernels::decimal_exponents_binary64_reference(batch.view(), bits, ref);
    kernels::decimal_exponents_binary64(batch.view(), bits, got);
    EXPECT_EQ(ref, got) << "n=" << n;
    if (kernels::cpu_has_avx2()) {
      std::vector<std::int32_t> avx(n);
      kernels::decimal_exponents_binary64_avx2(batch.view(), bits, avx);
      EXPECT_EQ(ref, avx) << "n=" << n;
    }
    for (std::size_t i = 0; i < n; ++i) {
      const BinaryFP x = decode_binary64(bits[i]);
      if (x.special != Special::None) {
        ASSERT_EQ(ref[i], kernels::kNoExponent);
        continue;
      }
      ASSERT_EQ(ref[i], oracle_f(x.exponent, x.mantissa, 17));
    }
  }
}

TEST(BatchExponent, RejectsWideThresholds) {
  const TableSet& t = test::tables("binary128");
  EXPECT_THROW(BatchExponentTable(t.fmt, t.exponent), RangeError);
}

}  // namespace
}  // namespace rdx
