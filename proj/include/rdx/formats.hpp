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

// Shipped format pairings.

#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "rdx/fxcore.hpp"

namespace rdx {

/// Which side the format is named after; selects the table the size
/// report counts (binary: bin2dec thresholds, decimal: dec2bin thresholds).
enum class FormatFamily : std::uint8_t { Binary, Decimal };

struct FormatPreset {
  std::string_view name;
  FormatFamily family = FormatFamily::Binary;
  FormatParams fmt;
  std::vector<int> shifts;          // pow5 decomposition
  int binary_interchange_bits = 0;  // 32 or 64 when an IEEE codec exists, else 0
  long published_table_bytes = 0;   // reference figure for the size report
};

std::span<const FormatPreset> presets();
/// Throws FormatError for an unknown name.
const FormatPreset& preset(std::string_view name);
std::optional<FormatPreset> find_preset(std::string_view name);

/// Offset that makes every pow5 exponent the pairing needs nonnegative.
std::int64_t offset_power(const FormatParams& fmt) noexcept;

}  // namespace rdx
