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

#include <vector>

#include "rdx/analysis.hpp"
#include "rdx/pow5.hpp"
#include "test_support.hpp"

namespace rdx {
namespace {

using test::value;

const std::vector<int> kShifts{4, 8};

const Pow5Table& table128() {
  static const Pow5Table t = gen_pow5_table(4, 128, 64, kShifts, 340);
  return t;
}

TEST(Decompose, Examples) {
  const Decomposition z = decompose(0, kShifts);
  EXPECT_EQ(z.k, 2);
  EXPECT_EQ(z.q[0], 0u);
  EXPECT_EQ(z.q[1], 0u);
  EXPECT_EQ(z.q[2], 0u);

  const Decomposition d = decompose(600, kShifts);
  EXPECT_EQ(d.q[2], 2u);
  EXPECT_EQ(d.q[1], 5u);
  EXPECT_EQ(d.q[0], 8u);

  const Decomposition f = decompose(15, kShifts);
  EXPECT_EQ(f.q[2], 0u);
  EXPECT_EQ(f.q[1], 0u);
  EXPECT_EQ(f.q[0], 15u);
}

TEST(Decompose, ReconstructsEveryPower) {
  for (const std::vector<int>& s : {std::vector<int>{4, 8}, std::vector<int>{3, 6, 9}, std::vector<int>{5},
                                    std::vector<int>{4, 8, 12}}) {
    const std::int64_t top = max_natural_power(s);
    for (std::int64_t b = 0; b <= top; ++b) {
      const Decomposition d = decompose(b, s);
      ASSERT_EQ(d.reconstruct(), b);
      for (int i = 0; i <= d.k; ++i) ASSERT_LT(d.q[static_cast<std::size_t>(i)], 1u << s[0]);
    }
    EXPECT_THROW(decompose(top + 1, s), RangeError);
  }
  EXPECT_EQ(max_natural_power(kShifts), 4095);
}

TEST(Decompose, RejectsBadInput) {
  EXPECT_THROW(decompose(-1, kShifts), RangeError);
  EXPECT_THROW(decompose(5, std::vector<int>{}), DomainError);
  EXPECT_THROW(decompose(5, std::vector<int>{8, 4}), DomainError);
  EXPECT_THROW(decompose(5, std::vector<int>{4, 9}), DomainError);  // gap wider than n_1
}

TEST(SquareChain, EmptyChain) {
  const ScaledInteger v0 = normalize(u128{5}, 0, 128);
  const SquareChainResult r = square_chain(v0, 0, 64);
  EXPECT_EQ(r.v, v0);
  EXPECT_EQ(r.sigma, 0);
  EXPECT_EQ(r.rho, 0);
  EXPECT_EQ(r.consumed_scale, 0);
}

TEST(SquareChain, OneExactSquaring) {
  const SquareChainResult r = square_chain(normalize(u128{5}, 0, 128), 1, 0);
  EXPECT_EQ(value(r.v), 25);
}

TEST(SquareChain, ScaleIdentityAndShiftBounds) {
  for (const int w : {32, 64, 128, 160}) {
    for (const int lambda : {0, w / 2, w - 1, w}) {
      const ScaledInteger v0 = oracle::exact_pow5(15, w).value;
      for (int n = 0; n <= 10; ++n) {
        const SquareChainResult r = square_chain(v0, n, lambda);
        const std::int64_t scale = (v0.exp2() << n) + r.consumed_scale - r.sigma + r.rho;
        ASSERT_EQ(r.v.exp2(), scale) << "w=" << w << " lambda=" << lambda << " n=" << n;
        ASSERT_EQ(r.consumed_scale, ((std::int64_t{1} << n) - 1) * lambda);
        ASSERT_GE(r.sigma, 0);
        ASSERT_LE(r.sigma, (std::int64_t{1} << n) - 1);
        ASSERT_EQ(r.v.mant().bit_length(), w);
      }
    }
  }
}

// 5^(15 * 256) through eight truncated squarings at lambda = w. Each error
// is squared by every later step, so the chain carries 2^8 - 1 error terms.
TEST(SquareChain, LongChainWithinPropagatedBound) {
  const int w = 128;
  const SquareChainResult r = square_chain(normalize(pow_u128(5, 15), 0, w), 8, w);
  const mpq_class err = analysis::relative_error(r.v, 15 * 256);
  EXPECT_LE(err, analysis::total_bound(255, analysis::eps_step(w, w)));
  const oracle::ExactPow5 want = oracle::exact_pow5(15 * 256, w);
  EXPECT_EQ(r.v.exp2(), want.value.exp2());
}

TEST(Pow5Nat, SmallPowersAreExact) {
  const Pow5Table& t = table128();
  EXPECT_EQ(value(pow5_nat(0, t)), 1);
  EXPECT_EQ(value(pow5_nat(3, t)), 125);
  EXPECT_EQ(value(pow5_nat(15, t)), mpq_class(mpz_class("30517578125")));
}

TEST(Pow5Nat, SixHundredWithinBound) {
  const Pow5Table& t = table128();
  const mpq_class err = analysis::relative_error(pow5_nat(600, t), 600);
  const analysis::ErrorBudget b = analysis::propagated_budget(t, false);
  EXPECT_LE(err, b.total);
  EXPECT_LT(analysis::log2_abs(err), -115.0);
}

TEST(Pow5Nat, EveryPowerWithinBound) {
  const Pow5Table& t = table128();
  const mpq_class bound = analysis::propagated_budget(t, false).total;
  for (std::int64_t b = 0; b <= t.max_power(); b += 3) ASSERT_LE(analysis::relative_error(pow5_nat(b, t), b), bound) << b;
}

TEST(Pow5Nat, MultiplicationCountAndClosedForm) {
  for (const std::vector<int>& s : {std::vector<int>{4, 8}, std::vector<int>{3, 6, 9}, std::vector<int>{5}}) {
    const Pow5Table t = gen_pow5_table(s[0], 128, 64, s, 0);
    const int n = pow5_multiplications(s);
    for (std::int64_t b = 0; b <= t.max_power(); ++b) {
      Pow5Trace trace;
      const std::uint64_t before = products_formed();
      const ScaledInteger y = pow5_nat(b, t, &trace);
      ASSERT_EQ(products_formed() - before, static_cast<std::uint64_t>(n)) << b;
      ASSERT_EQ(trace.multiplications, n) << b;
      ASSERT_EQ(trace.multiplications, analysis::mult_count(trace.decomposition, false));
      ASSERT_EQ(closed_form_exp2(trace, t), y.exp2()) << b;
    }
  }
}

TEST(Pow5Nat, RejectsOutOfRange) {
  EXPECT_THROW(pow5_nat(4096, table128()), RangeError);
  EXPECT_THROW(pow5_nat(-1, table128()), RangeError);
}

TEST(Pow5Signed, Examples) {
  const Pow5Table& t = table128();
  const mpq_class bound = analysis::propagated_budget(t, true).total;
  EXPECT_LE(analysis::relative_error(pow5_signed(0, t), 0), bound);
  EXPECT_LE(analysis::relative_error(pow5_signed(-1, t), -1), bound);
  const oracle::ExactPow5 fifth = oracle::exact_pow5(-1, 128);
  const ScaledInteger p = pow5_signed(-1, t);
  EXPECT_EQ(p.exp2(), fifth.value.exp2());
  EXPECT_EQ(pow5_signed(-340, t), t.offset_constant);
  Pow5Trace trace;
  const std::uint64_t before = products_formed();
  pow5_signed(17, t, &trace);
  EXPECT_EQ(static_cast<std::int64_t>(products_formed() - before), analysis::mult_count(kShifts, true));
  EXPECT_EQ(trace.multiplications, analysis::mult_count(kShifts, true));
}

TEST(Pow5Signed, RangeAndBound) {
  const Pow5Table& t = table128();
  const mpq_class bound = analysis::propagated_budget(t, true).total;
  for (std::int64_t b = -340; b <= 340; ++b) ASSERT_LE(analysis::relative_error(pow5_signed(b, t), b), bound) << b;
  EXPECT_THROW(pow5_signed(-341, t), RangeError);
  EXPECT_THROW(pow5_signed(t.max_power() - 339, t), RangeError);
}

TEST(Pow5Signed, WideWorkingPrecision) {
  const Pow5Table t = gen_pow5_table(4, 256, 128, kShifts, 400);
  const mpq_class bound = analysis::propagated_budget(t, true).total;
  for (std::int64_t b = -400; b <= 400; b += 13) ASSERT_LE(analysis::relative_error(pow5_signed(b, t), b), bound) << b;
}

}  // namespace
}  // namespace rdx
