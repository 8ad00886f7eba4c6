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

#include <cstdlib>
#include <cstring>

#include "rdx/kernels.hpp"

namespace rdx::kernels {

std::string_view to_string(Isa isa) noexcept {
  switch (isa) {
    case Isa::Reference: return "reference";
    case Isa::Native128: return "native128";
    case Isa::Avx2: return "avx2";
  }
  return "?";
}

Isa mul_kernel_for(int width) noexcept { return width <= 128 ? Isa::Native128 : Isa::Reference; }

bool cpu_has_avx2() noexcept {
#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Isa exponent_kernel() noexcept {
  static const Isa chosen = [] {
    const char* force = std::getenv("RDX_FORCE_SCALAR");
    if (force != nullptr && std::strcmp(force, "") != 0 && std::strcmp(force, "0") != 0) return Isa::Reference;
    return cpu_has_avx2() ? Isa::Avx2 : Isa::Reference;
  }();
  return chosen;
}

void decimal_exponents_binary32(const ExponentKernelTable& t, std::span<const std::uint32_t> bits,
                                std::span<std::int32_t> out) noexcept {
  if (exponent_kernel() == Isa::Avx2)
    decimal_exponents_binary32_avx2(t, bits, out);
  else
    decimal_exponents_binary32_reference(t, bits, out);
}

void decimal_exponents_binary64(const ExponentKernelTable& t, std::span<const std::uint64_t> bits,
                                std::span<std::int32_t> out) noexcept {
  if (exponent_kernel() == Isa::Avx2)
    decimal_exponents_binary64_avx2(t, bits, out);
  else
    decimal_exponents_binary64_reference(t, bits, out);
}

}  // namespace rdx::kernels
