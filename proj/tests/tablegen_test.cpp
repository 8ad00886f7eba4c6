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

#include <cstdio>
#include <filesystem>
#include <sstream>

#include "rdx/tablegen.hpp"
#include "test_support.hpp"

namespace rdx {
namespace {

TEST(ThresholdGen, Binary64EntryCount) {
  FormatParams f = preset("binary64").fmt;
  f.emin = -1074;
  const ThresholdTable t = gen_threshold_table(f, ThresholdDirection::BinToDec);
  EXPECT_EQ(t.entries.size(), 1023u);
  EXPECT_EQ(t.first_exponent % 2, 0);
}

TEST(ThresholdGen, PresetsCertify) {
  for (const char* name : {"binary32", "binary64", "decimal32", "decimal64"}) {
    const TableSet& t = test::tables(name);
    std::int64_t bad = 0;
    EXPECT_EQ(certify_threshold_table(t.fmt, t.exponent.bin2dec, &bad), 0u) << name << " " << bad;
    EXPECT_EQ(certify_threshold_table(t.fmt, t.exponent.dec2bin, &bad), 0u) << name << " " << bad;
  }
}

TEST(ThresholdGen, CertificationCatchesTampering) {
  TableSet t = test::tables("binary32");
  const std::size_t i = 10;
  t.exponent.bin2dec.entries[i] += 1u << 5;
  std::int64_t bad = 0;
  EXPECT_GT(certify_threshold_table(t.fmt, t.exponent.bin2dec, &bad), 0u);
  EXPECT_EQ(bad, t.exponent.bin2dec.first_exponent + 2 * static_cast<std::int64_t>(i));
  EXPECT_THROW(certify_tables(t), GenerationError);
}

TEST(MulShiftGen, Ranges) {
  const MulShiftConstant tiny = gen_mulshift(LogKind::Log10Of2, -4, 4);
  EXPECT_TRUE(certify_mulshift(tiny));
  EXPECT_LE(tiny.shift, 4);
  const MulShiftConstant b64 = gen_mulshift(LogKind::Log10Of2, -1074, 971);
  EXPECT_TRUE(certify_mulshift(b64));
  const MulShiftConstant d64 = gen_mulshift(LogKind::Log2Of10, -398, 369);
  EXPECT_TRUE(certify_mulshift(d64));
  for (std::int64_t e = -1074; e <= 971; ++e) ASSERT_EQ(apply(b64, e), oracle::exact_floor_log(10, e, 1));
  // Minimality: one bit less fails somewhere in range.
  MulShiftConstant shorter = b64;
  --shorter.shift;
  bool any = false;
  for (std::int64_t c = (b64.constant >> 1) - 2; c <= (b64.constant >> 1) + 2 && !any; ++c) {
    shorter.constant = c;
    any = certify_mulshift(shorter);
  }
  EXPECT_FALSE(any);
}

TEST(MulShiftGen, CertificationCatchesBadConstant) {
  MulShiftConstant c = gen_mulshift(LogKind::Log10Of2, -1074, 971);
  c.constant += 1000;
  EXPECT_FALSE(certify_mulshift(c));
}

TEST(Pow5Gen, ExactEntries) {
  const std::vector<int> s{4, 8};
  const Pow5Table t = gen_pow5_table(4, 128, 64, s, 340);
  ASSERT_EQ(t.entries.size(), 16u);
  EXPECT_TRUE(t.entries_exact());
  for (std::size_t q = 0; q < 16; ++q) EXPECT_EQ(test::value(t.entries[q]), mpq_class(oracle::pow5(q)));
  EXPECT_EQ(t.offset_constant, oracle::exact_pow5(-340, 128).value);
  EXPECT_EQ(t.offset_power, 340);
  EXPECT_THROW(gen_pow5_table(4, 32, 16, s, 0), GenerationError);
  const Pow5Table loose = gen_pow5_table(4, 32, 16, s, 0, /*require_exact=*/false);
  EXPECT_FALSE(loose.entries_exact());
  EXPECT_THROW(gen_pow5_table(3, 128, 64, s, 0), GenerationError);
}

TEST(Pow5Gen, PresetOffsets) {
  EXPECT_EQ(test::tables("binary64").pow5.offset_power, 340);
  EXPECT_EQ(test::tables("decimal64").pow5.offset_power, 398);
  EXPECT_EQ(test::tables("binary64").pow5.offset_constant, oracle::exact_pow5(-340, 128).value);
}

TEST(Serialize, RoundTripIsBitExact) {
  for (const FormatPreset& p : presets()) {
    const TableSet& t = test::tables(std::string(p.name));
    const std::vector<std::uint8_t> bytes = serialize(t);
    const TableSet back = deserialize(bytes);
    EXPECT_EQ(back, t) << p.name;
    EXPECT_EQ(serialize(back), bytes) << p.name;
    EXPECT_EQ(serialize(gen_tables(p)), bytes) << p.name << " regeneration";
  }
}

TEST(Serialize, DetectsCorruption) {
  const std::vector<std::uint8_t> good = serialize(test::tables("binary32"));
  std::vector<std::uint8_t> flipped = good;
  flipped[good.size() / 2] ^= 0x10;
  EXPECT_THROW(deserialize(flipped), FormatError);

  std::vector<std::uint8_t> magic = good;
  magic[0] = 'X';
  EXPECT_THROW(deserialize(magic), FormatError);

  for (const std::size_t n : {std::size_t{0}, std::size_t{7}, std::size_t{40}, good.size() - 1}) {
    const std::vector<std::uint8_t> cut(good.begin(), good.begin() + static_cast<std::ptrdiff_t>(n));
    EXPECT_THROW(deserialize(cut), FormatError) << n;
  }
  std::vector<std::uint8_t> longer = good;
  longer.push_back(0);
  EXPECT_THROW(deserialize(longer), FormatError);
}

TEST(Serialize, ChecksumIsFnv1a) {
  const std::uint8_t a[] = {'a'};
  EXPECT_EQ(fnv1a64({}), 0xcbf29ce484222325ull);
  EXPECT_EQ(fnv1a64(a), 0xaf63dc4c8601ec8cull);
}

TEST(Serialize, FileRoundTrip) {
  const std::string path = (std::filesystem::temp_directory_path() / "rdx_tablegen_test.rdxtbl").string();
  write_table_file(path, test::tables("decimal32"));
  EXPECT_EQ(read_table_file(path), test::tables("decimal32"));
  std::filesystem::remove(path);
  EXPECT_THROW(read_table_file(path), Error);
}

TEST(SizeReport, ListsPublishedFigures) {
  const std::vector<SizeRow> rows = report_sizes();
  ASSERT_EQ(rows.size(), 6u);
  std::ostringstream os;
  print_size_report(os, rows);
  for (const char* fig : {"554", "8392", "263024", "792", "6294", "19713"}) EXPECT_NE(os.str().find(fig), std::string::npos);
  for (const SizeRow& r : rows) EXPECT_EQ(r.table_bytes, r.entries * r.entry_bytes) << r.format;
  EXPECT_EQ(rows[1].format, "binary64");
  EXPECT_EQ(rows[1].table_bytes, 8392u);
}

TEST(Dump, MentionsEverySection) {
  std::ostringstream os;
  dump(os, test::tables("binary32"));
  for (const char* s : {"bin2dec", "dec2bin", "pow5"}) EXPECT_NE(os.str().find(s), std::string::npos) << s;
}

}  // namespace
}  // namespace rdx
