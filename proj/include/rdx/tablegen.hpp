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

// Generation, certification and persistence of every table the fast path
// reads. All values come from the oracle; nothing is hand-entered.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "rdx/exponent.hpp"
#include "rdx/formats.hpp"
#include "rdx/pow5.hpp"

namespace rdx {

struct TableSet {
  FormatParams fmt;
  ExponentTables exponent;
  Pow5Table pow5;

  friend bool operator==(const TableSet&, const TableSet&) = default;
};

/// Thresholds over the full exponent range of `fmt`: bin2dec covers the
/// reduced exponents of every E in [emin, emax], dec2bin every F in
/// [fmin, fmax]. Each entry is certified against the oracle on the
/// representable mantissas straddling it; a failure throws GenerationError
/// naming the exponent.
ThresholdTable gen_threshold_table(const FormatParams& fmt, ThresholdDirection dir);

/// Re-runs the straddle certification on an existing table. Returns the
/// number of failing entries (0 = certified); the first offending exponent is
/// stored in *first_failure when given.
std::size_t certify_threshold_table(const FormatParams& fmt, const ThresholdTable& tbl,
                                    std::int64_t* first_failure = nullptr);

/// Minimal shift L (and smallest constant at that L) such that
/// (x * C) >> L == floor(x * log) for every x in [lo, hi]. Exhaustive.
MulShiftConstant gen_mulshift(LogKind kind, std::int64_t lo, std::int64_t hi);
/// Exhaustive re-check of a constant over its range.
bool certify_mulshift(const MulShiftConstant& c);

/// Table of 5^q, q < 2^t, at width w plus the 5^(-offset) constant.
/// shifts[0] must equal t. With require_exact, GenerationError unless 5^(2^t - 1)
/// fits w bits; otherwise entries are truncated to their leading w bits.
Pow5Table gen_pow5_table(int t, int w, int lambda, std::span<const int> shifts, std::int64_t offset,
                         bool require_exact = true);

/// Everything a Converter needs for `fmt`.
TableSet gen_tables(const FormatParams& fmt, std::span<const int> shifts);
TableSet gen_tables(const FormatPreset& p);

/// Throws GenerationError describing the first problem.
void certify_tables(const TableSet& t);

// ---------------------------------------------------------------------------
// File format: "RDXTBL01", FormatParams as eight LE int32, section count,
// sections {u32 tag, u32 meta count, i64 meta[], u32 entry count,
// u32 entry width, LE entries}, then FNV-1a 64 of everything before it.

std::vector<std::uint8_t> serialize(const TableSet& t);
/// Throws FormatError on bad magic, checksum, structure or counts.
TableSet deserialize(std::span<const std::uint8_t> bytes);

std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes) noexcept;

void write_table_file(const std::string& path, const TableSet& t);
TableSet read_table_file(const std::string& path);

/// Human-readable listing of every section.
void dump(std::ostream& os, const TableSet& t);

// ---------------------------------------------------------------------------
// Size report.

struct SizeRow {
  std::string format;
  std::size_t entries = 0;
  std::size_t entry_bytes = 0;
  std::size_t table_bytes = 0;   // entries * entry_bytes
  std::size_t file_bytes = 0;    // whole serialized table set
  long published_bytes = 0;
};

/// Entry width in bytes as stored: the smallest of 4, 8, 16 that holds the
/// never() sentinel.
std::size_t threshold_entry_bytes(const ThresholdTable& tbl) noexcept;

SizeRow size_row(const FormatPreset& p, const TableSet& t);
std::vector<SizeRow> report_sizes();
void print_size_report(std::ostream& os, const std::vector<SizeRow>& rows);

}  // namespace rdx
