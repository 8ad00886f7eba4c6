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

// 5^B in fixed precision: a small table of 5^q, truncated squaring chains
// and a final multiplication pass.
//
//   B = 2^(n_k) q_k + ... + 2^(n_1) q_1 + q_0
//   5^B = (5^q_k)^(2^n_k) * ... * (5^q_1)^(2^n_1) * 5^q_0
//
// Every product drops its low lambda bits and is renormalized to w bits.
// Scale bookkeeping rides along in ScaledInteger::exp2.

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "rdx/fxcore.hpp"

namespace rdx {

inline constexpr int kMaxPow5Factors = 8;  // k

struct Decomposition {
  int k = 0;
  std::array<int, kMaxPow5Factors> shifts{};       // n_1 .. n_k at [0, k)
  std::array<std::uint32_t, kMaxPow5Factors + 1> q{};  // q_0 .. q_k

  std::int64_t reconstruct() const noexcept;
};

/// Splits B by shifts (n_1 < ... < n_k, every gap at most n_1). Throws
/// DomainError on bad shifts, RangeError when B < 0 or q_k >= 2^(n_1).
Decomposition decompose(std::int64_t b, std::span<const int> shifts);

/// Largest B decompose() accepts for `shifts`.
std::int64_t max_natural_power(std::span<const int> shifts);

struct Pow5Table {
  int t = 0;  // index bits, equals n_1
  int w = 0;
  int lambda = 0;
  std::vector<int> shifts;              // n_1 .. n_k
  std::vector<ScaledInteger> entries;   // 5^q for q in [0, 2^t), leading w bits
  std::int64_t offset_power = 0;        // B-bar
  ScaledInteger offset_constant;        // leading w bits of 5^(-B-bar)

  /// True when every entry holds 5^q without truncation.
  bool entries_exact() const noexcept;
  std::int64_t min_power() const noexcept { return -offset_power; }
  std::int64_t max_power() const noexcept;

  friend bool operator==(const Pow5Table&, const Pow5Table&) = default;
};

struct SquareChainResult {
  ScaledInteger v;
  std::int64_t sigma = 0;           // doubled-up left renormalizations
  std::int64_t rho = 0;             // doubled-up right renormalizations
  std::int64_t consumed_scale = 0;  // (2^n - 1) * lambda
};

/// n truncated squarings of v0. v.exp2() == 2^n v0.exp2() + consumed_scale - sigma + rho.
/// Throws RangeError for n > 62.
SquareChainResult square_chain(const ScaledInteger& v0, int n, int lambda);

/// Optional instrumentation of one pow5 call.
struct Pow5Trace {
  int multiplications = 0;
  Decomposition decomposition;
  std::array<SquareChainResult, kMaxPow5Factors> chains{};  // factor i at [i - 1]
  std::array<int, kMaxPow5Factors + 1> final_shifts{};      // renormalization of each final product
  int final_count = 0;
};

/// 5^B for B in [0, tbl.max_power()].
ScaledInteger pow5_nat(std::int64_t b, const Pow5Table& tbl, Pow5Trace* trace = nullptr);

/// 5^B for B in [tbl.min_power(), tbl.max_power() - offset_power]:
/// pow5_nat(B + B-bar) times the stored 5^(-B-bar).
ScaledInteger pow5_signed(std::int64_t b, const Pow5Table& tbl, Pow5Trace* trace = nullptr);

/// Multiplications pow5_nat performs: sum n_i + k.
int pow5_multiplications(std::span<const int> shifts) noexcept;

/// The result scale rebuilt after the fact from the entry scales, the
/// chain corrections and the final shifts of a traced pow5_nat call:
///   sum_i [2^(n_i) e(q_i) + (2^(n_i) - 1) lambda - sigma_i + rho_i] + e(q_0) + k lambda + sum d.
std::int64_t closed_form_exp2(const Pow5Trace& trace, const Pow5Table& tbl);

}  // namespace rdx
