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

#include "rdx/formats.hpp"

#include <algorithm>
#include <string>

namespace rdx {

namespace {

// emin/emax cover subnormal inputs after normalization to p2 bits; fmax
// leaves room for the decade carry of the largest finite value.
FormatParams make(int p2, int p10, int emin, int emax, int fmin, int fmax) {
  FormatParams f;
  f.p2 = p2;
  f.p10 = p10;
  f.emin = emin;
  f.emax = emax;
  f.fmin = fmin;
  f.fmax = fmax;
  f.w = 128;
  f.lambda = 64;
  return f;
}

const std::vector<FormatPreset>& table() {
  static const std::vector<FormatPreset> kPresets = {
      {"binary32", FormatFamily::Binary, make(24, 9, -172, 104, -53, 31), {4, 8}, 32, 554},
      {"binary64", FormatFamily::Binary, make(53, 17, -1126, 971, -340, 293), {4, 8}, 64, 8392},
      {"binary128", FormatFamily::Binary, make(113, 36, -16606, 16271, -5001, 4898), {4, 8, 12}, 0, 263024},
      {"decimal32", FormatFamily::Decimal, make(24, 7, -172, 104, -101, 90), {4, 8}, 32, 792},
      {"decimal64", FormatFamily::Decimal, make(53, 16, -1126, 971, -398, 369), {4, 8}, 64, 6294},
      {"decimal128", FormatFamily::Decimal, make(113, 34, -16606, 16271, -6176, 6111), {4, 8, 12}, 0, 19713},
  };
  return kPresets;
}

}  // namespace

std::span<const FormatPreset> presets() { return table(); }

std::optional<FormatPreset> find_preset(std::string_view name) {
  for (const FormatPreset& p : table())
    if (p.name == name) return p;
  return std::nullopt;
}

const FormatPreset& preset(std::string_view name) {
  for (const FormatPreset& p : table())
    if (p.name == name) return p;
  throw FormatError("unknown format '" + std::string(name) + "'");
}

std::int64_t offset_power(const FormatParams& fmt) noexcept {
  return std::max<std::int64_t>(fmt.fmax, -static_cast<std::int64_t>(fmt.fmin));
}

}  // namespace rdx
