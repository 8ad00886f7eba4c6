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

NormalizedProduct mul_norm_reference(const ScaledInteger& a, const ScaledInteger& b, int lambda) noexcept {
  const int w = a.width();
  const std::size_t used = static_cast<std::size_t>(w + 63) / 64;
  const Wide p = full_product(a.mant(), b.mant(), used, used);
  const int d = p.bit_length() - w - lambda;
  Wide v = p.shr(lambda);
  v = d >= 0 ? v.shr(d) : v.shl(-d);
  return {ScaledInteger::assume_normalized(v.resized<Mant::kLimbs>(), a.exp2() + b.exp2() + lambda + d, w), d};
}

}  // namespace rdx::kernels
