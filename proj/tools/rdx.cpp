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

// rdx: conversions, table management, oracle verification and the accuracy sweep.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "rdx/analysis.hpp"
#include "rdx/convert.hpp"
#include "rdx/oracle.hpp"
#include "rdx/tablegen.hpp"
#include "rdx/verify.hpp"

namespace fs = std::filesystem;
using namespace rdx;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitOverflow = 3;

// Preset, optionally with another decimal precision. The decimal exponent
// range follows from the binary range at that precision.
FormatPreset resolve_format(const std::string& name, int p10) {
  FormatPreset p = preset(name);
  if (p10 > 0 && p10 != p.fmt.p10) {
    if (p.family != FormatFamily::Binary) throw FormatError("--p10 only applies to binary formats");
    FormatParams& f = p.fmt;
    f.p10 = p10;
    const mpz_class mmin = oracle::to_mpz(u128{1} << (f.p2 - 1));
    const mpz_class mmax = oracle::to_mpz((u128{1} << f.p2) - 1);
    f.fmin = static_cast<int>(oracle::exact_floor_log(10, f.emin, mmin) - p10 + 1);
    f.fmax = static_cast<int>(oracle::exact_floor_log(10, f.emax, mmax) - p10 + 2);
    const std::int64_t need = offset_power(f);
    if (need > max_natural_power(p.shifts) - need) p.shifts.push_back(p.shifts.back() + p.shifts.front());
  }
  return p;
}

std::string default_table_path(const FormatPreset& p) {
  const char* env = std::getenv("RDX_TABLE_PATH");
  const std::string file = std::string(p.name) + ".rdxtbl";
  if (env == nullptr || *env == '\0') return file;
  const fs::path base(env);
  if (base.extension() == ".rdxtbl") return base.string();
  return (base / file).string();
}

// Table file when one matching the parameters exists, else fresh generation.
TableSet load_tables(const FormatPreset& p, const std::string& explicit_path) {
  const std::string path = explicit_path.empty() ? default_table_path(p) : explicit_path;
  if (fs::exists(path)) {
    TableSet t = read_table_file(path);
    if (t.fmt == p.fmt) return t;
    if (!explicit_path.empty()) throw FormatError("table file '" + path + "' was built for other parameters");
  } else if (!explicit_path.empty()) {
    throw Error("table file '" + explicit_path + "' not found");
  }
  return gen_tables(p);
}

std::string hex_word(std::uint64_t v, int digits) {
  std::ostringstream s;
  s << "0x" << std::hex << std::uppercase << std::setw(digits) << std::setfill('0') << v;
  return s.str();
}

u128 parse_u128(std::string_view s, const std::string& what) {
  if (s.empty()) throw FormatError(what + ": empty number");
  u128 v = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') throw FormatError(what + ": bad digit at position " + std::to_string(i));
    v = v * 10 + static_cast<unsigned>(s[i] - '0');
  }
  return v;
}

std::int64_t parse_i64(std::string_view s, const std::string& what) {
  bool neg = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    neg = s[0] == '-';
    s.remove_prefix(1);
  }
  const u128 v = parse_u128(s, what);
  if (v > static_cast<u128>(INT64_MAX)) throw FormatError(what + ": out of range");
  return neg ? -static_cast<std::int64_t>(v) : static_cast<std::int64_t>(v);
}

struct ConvertOptions {
  bool b2d = false;
  bool d2b = false;
  std::string input;
  std::string format;
  int p10 = 0;
  std::string mode = "nearest";
  std::string table;
};

int cmd_convert(const ConvertOptions& o) {
  if (o.b2d == o.d2b) throw FormatError("choose exactly one of --b2d and --d2b");
  const RoundingMode mode = parse_rounding_mode(o.mode);
  const std::string_view in = o.input;

  if (o.b2d) {
    BinaryFP x;
    std::string fmt_name = o.format;
    int width = 0;
    if (in.starts_with("bits:")) {
      std::string_view h = in.substr(5);
      if (h.starts_with("0x") || h.starts_with("0X")) h.remove_prefix(2);
      if (h.empty() || h.size() > 16) throw FormatError("bits literal needs 1 to 16 hex digits");
      std::uint64_t v = 0;
      for (std::size_t i = 0; i < h.size(); ++i) {
        const char c = h[i];
        int d;
        if (c >= '0' && c <= '9') d = c - '0';
        else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
        else if (c >= 'A' && c <= 'F') d = c - 'A' + 10;
        else throw FormatError("bits literal: bad hex digit at position " + std::to_string(i + 5));
        v = (v << 4) | static_cast<unsigned>(d);
      }
      if (fmt_name.empty()) fmt_name = h.size() > 8 ? "binary64" : "binary32";
      width = preset(fmt_name).binary_interchange_bits;
      if (width == 32) {
        if (v > 0xffffffffull) throw FormatError("bits literal wider than binary32");
        x = decode_binary32(static_cast<std::uint32_t>(v));
      } else if (width == 64) {
        x = decode_binary64(v);
      } else {
        throw FormatError("no bit-level codec for " + fmt_name);
      }
    } else if (in.starts_with("em:")) {
      const std::string_view body = in.substr(3);
      const std::size_t comma = body.find(',');
      if (comma == std::string_view::npos) throw FormatError("em literal is em:E,m");
      x.exponent = parse_i64(body.substr(0, comma), "exponent");
      x.mantissa = parse_u128(body.substr(comma + 1), "mantissa");
      if (x.mantissa == 0) x.special = Special::Zero;
      if (fmt_name.empty()) fmt_name = "binary64";
    } else {
      throw FormatError("binary input must be bits:0x... or em:E,m");
    }
    const FormatPreset p = resolve_format(fmt_name, o.p10);
    const Converter conv(load_tables(p, o.table));
    std::cout << "input:  " << format_binary(x) << '\n';
    const ConversionResult<DecimalFP> r = conv.bin_to_dec(x, mode);
    std::cout << "result: " << format_decimal(r.output) << '\n'
              << "status: " << to_string(r.status) << '\n';
    return r.status == Status::Uncertain ? kExitFail : 0;
  }

  const std::string fmt_name = o.format.empty() ? "binary64" : o.format;
  const FormatPreset p = resolve_format(fmt_name, o.p10);
  DecimalFP x;
  if (in.starts_with("dec:")) {
    x = parse_decimal_literal(in.substr(4), p.fmt.p10);
  } else if (in.starts_with("fn:")) {
    const std::string_view body = in.substr(3);
    const std::size_t comma = body.find(',');
    if (comma == std::string_view::npos) throw FormatError("fn literal is fn:F,n");
    bool neg = false;
    std::string_view mant = body.substr(comma + 1);
    if (!mant.empty() && mant[0] == '-') {
      neg = true;
      mant.remove_prefix(1);
    }
    x = {neg, parse_i64(body.substr(0, comma), "exponent"), parse_u128(mant, "mantissa"), Special::None};
    if (x.mantissa == 0) x.special = Special::Zero;
  } else {
    throw FormatError("decimal input must be dec:<literal> or fn:F,n");
  }
  const Converter conv(load_tables(p, o.table));
  std::cout << "input:  " << format_decimal(x) << '\n';
  const ConversionResult<BinaryFP> r = conv.dec_to_bin(x, mode);
  std::cout << "result: " << format_binary(r.output) << '\n';
  if (p.binary_interchange_bits == 32)
    std::cout << "bits:   " << hex_word(encode_binary32(r.output), 8) << '\n';
  else if (p.binary_interchange_bits == 64)
    std::cout << "bits:   " << hex_word(encode_binary64(r.output), 16) << '\n';
  std::cout << "status: " << to_string(r.status) << '\n';
  return r.status == Status::Uncertain ? kExitFail : 0;
}

struct TablesOptions {
  std::string format = "binary64";
  std::string file;
};

int cmd_tables_gen(const TablesOptions& o) {
  const FormatPreset& p = preset(o.format);
  const std::string path = o.file.empty() ? default_table_path(p) : o.file;
  const TableSet t = gen_tables(p);
  write_table_file(path, t);
  std::cout << "wrote " << path << " (" << serialize(t).size() << " bytes, certified)\n";
  return 0;
}

std::string file_or_default(const TablesOptions& o) {
  return o.file.empty() ? default_table_path(preset(o.format)) : o.file;
}

int cmd_tables_dump(const TablesOptions& o) {
  dump(std::cout, read_table_file(file_or_default(o)));
  return 0;
}

int cmd_tables_check(const TablesOptions& o) {
  const std::string path = file_or_default(o);
  const TableSet t = read_table_file(path);  // checksum and structure
  certify_tables(t);
  std::cout << path << ": checksum ok, all entries certified\n";
  return 0;
}

int cmd_tables_report() {
  print_size_report(std::cout, report_sizes());
  std::cout << "published: reference byte counts for the same tables; the entry encoding behind them is not known,\n"
               "so the comparison is informational.\n";
  return 0;
}

struct VerifyOptions {
  std::string suite = "b2d64";
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 1;
  std::string mode = "all";
  std::string table;
};

std::vector<RoundingMode> modes_of(const std::string& s) {
  if (s == "all")
    return {RoundingMode::NearestEven, RoundingMode::Down, RoundingMode::Up, RoundingMode::TowardZero};
  return {parse_rounding_mode(s)};
}

int cmd_verify(const VerifyOptions& o) {
  const std::vector<RoundingMode> modes = modes_of(o.mode);
  std::vector<verify::Report> reports;
  auto progress = [](std::uint64_t done, std::uint64_t total) {
    std::cerr << "\r  " << std::fixed << std::setprecision(1) << 100.0 * static_cast<double>(done) / total << "%"
              << std::flush;
  };
  if (o.suite == "exponent32") {
    reports.push_back(verify::exponent_binary32_exhaustive(load_tables(preset("binary32"), o.table), progress));
  } else if (o.suite == "b2d32") {
    const Converter conv(load_tables(preset("binary32"), o.table));
    reports.push_back(verify::bin_to_dec_binary32_exhaustive(conv, modes, progress));
  } else if (o.suite == "roundtrip32") {
    const Converter conv(load_tables(preset("binary32"), o.table));
    reports.push_back(verify::round_trip_binary32_exhaustive(conv, progress));
  } else if (o.suite == "b2d64") {
    const Converter conv(load_tables(preset("binary64"), o.table));
    for (const RoundingMode m : modes) reports.push_back(verify::bin_to_dec_binary64_sampled(conv, m, o.samples, o.seed));
  } else if (o.suite == "roundtrip64") {
    const Converter conv(load_tables(preset("binary64"), o.table));
    reports.push_back(verify::round_trip_binary64_sampled(conv, o.samples, o.seed));
  } else if (o.suite == "d2b64" || o.suite == "d2b-decimal64") {
    const Converter conv(load_tables(preset(o.suite == "d2b64" ? "binary64" : "decimal64"), o.table));
    for (const RoundingMode m : modes) reports.push_back(verify::dec_to_bin_sampled(conv, m, o.samples, o.seed));
  } else {
    throw FormatError("unknown suite '" + o.suite + "'");
  }
  std::cerr << '\n';
  bool ok = true;
  for (const verify::Report& r : reports) {
    verify::print(std::cout, r);
    ok = ok && r.ok();
  }
  return ok ? 0 : kExitFail;
}

struct SweepOptions {
  std::vector<int> widths{64, 96, 128, 160};
  std::vector<int> index_bits{3, 4, 5};
  std::int64_t b_max = 680;
  int lambda = -1;
  std::string out;
};

int cmd_sweep(const SweepOptions& o) {
  analysis::SweepConfig cfg;
  cfg.widths = o.widths;
  cfg.index_bits = o.index_bits;
  cfg.b_max = o.b_max;
  cfg.lambda = o.lambda;
  const std::vector<analysis::SweepRow> rows = analysis::sweep(cfg);
  bool ok = true;
  for (const analysis::SweepRow& r : rows) ok = ok && r.max_rel_err <= r.bound.total;
  if (o.out.empty()) {
    analysis::write_csv(std::cout, rows);
  } else {
    std::ofstream os(o.out, std::ios::binary);
    if (!os) throw Error("cannot open '" + o.out + "'");
    analysis::write_csv(os, rows);
  }
  if (!ok) std::cerr << "a row exceeds its bound\n";
  return ok ? 0 : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Integer-only binary/decimal floating-point radix conversion"};
  app.require_subcommand(1);

  ConvertOptions co;
  CLI::App* convert = app.add_subcommand("convert", "convert one value");
  convert->add_flag("--b2d", co.b2d, "binary to decimal");
  convert->add_flag("--d2b", co.d2b, "decimal to binary");
  convert->add_option("--in", co.input, "bits:0x..., em:E,m, dec:<literal> or fn:F,n")->required();
  convert->add_option("--fmt", co.format, "format preset (binary32, binary64, decimal32, decimal64, ...)");
  convert->add_option("--p10", co.p10, "decimal digits (binary formats)");
  convert->add_option("--mode", co.mode, "nearest | down | up | zero");
  convert->add_option("--tables", co.table, "table file");

  TablesOptions to;
  CLI::App* tables = app.add_subcommand("tables", "generate, inspect and check table files");
  tables->require_subcommand(1);
  CLI::App* gen = tables->add_subcommand("gen", "generate and certify a table file");
  CLI::App* dmp = tables->add_subcommand("dump", "print every entry");
  CLI::App* chk = tables->add_subcommand("check", "verify checksum and re-certify against the oracle");
  CLI::App* rep = tables->add_subcommand("report", "table sizes beside the published figures");
  for (CLI::App* s : {gen, dmp, chk}) {
    s->add_option("--fmt", to.format, "format preset");
    s->add_option("--file,--out", to.file, "table file (default: $RDX_TABLE_PATH/<fmt>.rdxtbl)");
  }

  VerifyOptions vo;
  CLI::App* ver = app.add_subcommand("verify", "compare against the exact oracle");
  ver->add_option("--suite", vo.suite, "exponent32 | b2d32 | roundtrip32 | b2d64 | roundtrip64 | d2b64 | d2b-decimal64");
  ver->add_option("--samples", vo.samples, "samples for the sampled suites");
  ver->add_option("--seed", vo.seed, "random seed");
  ver->add_option("--mode", vo.mode, "rounding mode or 'all'");
  ver->add_option("--tables", vo.table, "table file");

  SweepOptions so;
  CLI::App* swp = app.add_subcommand("sweep", "max relative error of 5^B against width (CSV)");
  swp->add_option("--w", so.widths, "widths")->delimiter(',');
  swp->add_option("--t", so.index_bits, "index bits")->delimiter(',');
  swp->add_option("--bmax", so.b_max, "B ranges over [0, bmax]");
  swp->add_option("--lambda", so.lambda, "truncation bits (default w/2)");
  swp->add_option("--out", so.out, "CSV file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitUsage;
  }

  try {
    if (convert->parsed()) return cmd_convert(co);
    if (gen->parsed()) return cmd_tables_gen(to);
    if (dmp->parsed()) return cmd_tables_dump(to);
    if (chk->parsed()) return cmd_tables_check(to);
    if (rep->parsed()) return cmd_tables_report();
    if (ver->parsed()) return cmd_verify(vo);
    if (swp->parsed()) return cmd_sweep(so);
  } catch (const OverflowError& e) {
    std::cerr << "overflow: " << e.what() << '\n';
    return kExitOverflow;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFail;
  }
  return kExitUsage;
}
