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

// Oracle comparison suites shared by the CLI and the acceptance tests.

#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "rdx/convert.hpp"

namespace rdx::verify {

struct Report {
  std::string suite;
  std::uint64_t checked = 0;
  std::uint64_t mismatches = 0;
  std::uint64_t uncertain = 0;
  std::uint64_t errors = 0;             // unexpected exceptions
  std::vector<std::string> examples;    // first few failures

  bool ok() const noexcept { return checked > 0 && mismatches == 0 && uncertain == 0 && errors == 0; }
  void merge(const Report& o);
  void note(const std::string& s);
};

void print(std::ostream& os, const Report& r);

/// Called with (done, total) units of work; may be empty.
using Progress = std::function<void(std::uint64_t, std::uint64_t)>;

/// floor(log10) based F for every positive finite binary32 value, both
/// through decimal_exponent() and through the dispatched batch kernel,
/// against decade crossings computed by the oracle.
Report exponent_binary32_exhaustive(const TableSet& tables, const Progress& progress = {});

/// Every positive finite binary32 value through bin_to_dec in each of
/// `modes`, against the exact walker. Negative inputs reduce to these
/// through magnitude_mode().
Report bin_to_dec_binary32_exhaustive(const Converter& conv, const std::vector<RoundingMode>& modes,
                                      const Progress& progress = {});

/// binary32 -> decimal -> binary32 under nearest-even for every positive
/// finite binary32 value, plus every 64th negative one.
Report round_trip_binary32_exhaustive(const Converter& conv, const Progress& progress = {});

/// `samples` random binary64 bit patterns (finite, nonzero) per call.
Report bin_to_dec_binary64_sampled(const Converter& conv, RoundingMode mode, std::uint64_t samples,
                                   std::uint64_t seed);
Report round_trip_binary64_sampled(const Converter& conv, std::uint64_t samples, std::uint64_t seed);

/// Random p10-digit decimals with F in the format's range through
/// dec_to_bin, against the oracle. Overflowing draws count only when both
/// sides overflow.
Report dec_to_bin_sampled(const Converter& conv, RoundingMode mode, std::uint64_t samples, std::uint64_t seed);

}  // namespace rdx::verify
