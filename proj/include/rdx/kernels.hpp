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

// Inner-loop kernels. Every accelerated variant has a portable reference
// twin with identical results; the equivalence tests pin them together.

#pragma once

#include <cstdint>
#include <span>
#include <string_view>

#include "rdx/fxcore.hpp"

namespace rdx::kernels {

enum class Isa : std::uint8_t { Reference, Native128, Avx2 };

std::string_view to_string(Isa isa) noexcept;

// ---------------------------------------------------------------------------
// Truncated multiply + renormalize.

/// Multi-limb reference, any width up to kMaxWidth.
NormalizedProduct mul_norm_reference(const ScaledInteger& a, const ScaledInteger& b, int lambda) noexcept;
/// unsigned __int128 variant; requires width <= 128.
NormalizedProduct mul_norm_native128(const ScaledInteger& a, const ScaledInteger& b, int lambda) noexcept;

/// Kernel mul_trunc_norm() picks for `width`.
Isa mul_kernel_for(int width) noexcept;

// ---------------------------------------------------------------------------
// Batched binary -> decimal exponent determination over IEEE bit patterns.

/// Flattened exponent tables for one binary interchange format. Threshold
/// entries are indexed by (e' - first_exponent) / 2 where e' is the even
/// reduced exponent of a mantissa in [1, 4); thresholds carry p2 + 2
/// fractional bits.
struct ExponentKernelTable {
  int p2 = 0;
  int p10 = 0;
  int first_exponent = 0;  // reduced exponent of entry 0 (even)
  std::int64_t log10_2_constant = 0;
  int log10_2_shift = 0;
  std::span<const std::uint64_t> thresholds;
};

/// Output for zero, infinity and NaN lanes.
inline constexpr std::int32_t kNoExponent = INT32_MIN;

void decimal_exponents_binary32_reference(const ExponentKernelTable& t, std::span<const std::uint32_t> bits,
                                          std::span<std::int32_t> out) noexcept;
void decimal_exponents_binary64_reference(const ExponentKernelTable& t, std::span<const std::uint64_t> bits,
                                          std::span<std::int32_t> out) noexcept;
void decimal_exponents_binary32_avx2(const ExponentKernelTable& t, std::span<const std::uint32_t> bits,
                                     std::span<std::int32_t> out) noexcept;
void decimal_exponents_binary64_avx2(const ExponentKernelTable& t, std::span<const std::uint64_t> bits,
                                     std::span<std::int32_t> out) noexcept;

bool cpu_has_avx2() noexcept;

/// Best available exponent kernel. RDX_FORCE_SCALAR=1 in the environment pins
/// the reference kernel.
Isa exponent_kernel() noexcept;

void decimal_exponents_binary32(const ExponentKernelTable& t, std::span<const std::uint32_t> bits,
                                std::span<std::int32_t> out) noexcept;
void decimal_exponents_binary64(const ExponentKernelTable& t, std::span<const std::uint64_t> bits,
                                std::span<std::int32_t> out) noexcept;

}  // namespace rdx::kernels
