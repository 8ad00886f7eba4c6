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

#include "rdx/tablegen.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iterator>
#include <ostream>

#include "rdx/oracle.hpp"

namespace rdx {

namespace {

mpz_class pow_mpz(unsigned long base, std::int64_t k) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, static_cast<unsigned long>(k));
  return r;
}

// ceil(base^k * 2^s) for integer k, s of any sign.
u128 ceil_scaled_power(unsigned long base, std::int64_t k, std::int64_t s) {
  mpz_class num = 1, den = 1;
  if (k >= 0) num = pow_mpz(base, k); else den = pow_mpz(base, -k);
  if (s >= 0) num <<= static_cast<mp_bitcnt_t>(s); else den <<= static_cast<mp_bitcnt_t>(-s);
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  if (mpz_sizeinbase(q.get_mpz_t(), 2) > 127) return ~u128{0} >> 1;
  return oracle::to_u128(q);
}

std::int64_t bin2dec_lo(const FormatParams& f) { return f.emin + f.p2 - 1; }
std::int64_t bin2dec_hi(const FormatParams& f) { return f.emax + f.p2 - 1; }
std::int64_t even_floor(std::int64_t e) { return e - (e & 1); }

u128 bin2dec_entry(std::int64_t reduced, int frac_bits) {
  // m* = 10^(k+1) / 2^e', k = floor(e' log10 2); 1 < m* <= 10.
  const std::int64_t k = oracle::exact_floor_log(10, reduced, 1);
  const u128 never = u128{4} << frac_bits;
  const u128 v = ceil_scaled_power(10, k + 1, frac_bits - reduced);
  return v >= never ? never : v;
}

u128 dec2bin_entry(std::int64_t f, int frac_bits) {
  // mu* = 2^(j+1) / 10^F, j = floor(F log2 10); 1 < mu* <= 2.
  const std::int64_t j = oracle::exact_floor_log(2, f, 1);
  const u128 never = u128{2} << frac_bits;
  const u128 v = ceil_scaled_power(10, -f, j + 1 + frac_bits);
  return v >= never ? never : v;
}

// Oracle check of one bin2dec entry on the mantissas adjacent to it.
bool certify_bin2dec_entry(const FormatParams& fmt, const ThresholdTable& tbl, std::int64_t reduced) {
  const std::int64_t k = oracle::exact_floor_log(10, reduced, 1);
  const u128 thr = tbl.at(reduced);
  const u128 lo = u128{1} << (fmt.p2 - 1), hi = u128{1} << fmt.p2;
  for (int r = 0; r <= 1; ++r) {
    const std::int64_t e = reduced + r;
    if (e < bin2dec_lo(fmt) || e > bin2dec_hi(fmt)) continue;
    const int sh = 3 + r;
    const u128 m_hi = (thr + (u128{1} << sh) - 1) >> sh;  // first mantissa with gamma = 1
    for (const u128 m : {lo, m_hi - 1, m_hi, hi - 1}) {
      if (m < lo || m >= hi) continue;
      const int g = (m << sh) >= thr ? 1 : 0;
      if (oracle::exact_floor_log(10, e - (fmt.p2 - 1), oracle::to_mpz(m)) != k + g) return false;
    }
  }
  return true;
}

bool certify_dec2bin_entry(const FormatParams& fmt, const ThresholdTable& tbl, std::int64_t f) {
  const std::int64_t j = oracle::exact_floor_log(2, f, 1);
  const u128 thr = tbl.at(f);
  const int kappa = decimal_kappa(fmt.p10);
  const u128 dlo = pow_u128(10, fmt.p10 - 1), dhi = pow_u128(10, fmt.p10);
  const u128 target = (thr + 7) >> 3;  // first n-hat with gamma = 1
  for (int len = bit_length(dlo); len <= kappa; ++len) {
    const int s = kappa - len;
    const u128 nlo = std::max(dlo, u128{1} << (len - 1));
    const u128 nhi = std::min(dhi, u128{1} << len);  // exclusive
    if (nlo >= nhi) continue;
    const u128 n_hi = (target + (u128{1} << s) - 1) >> s;
    for (const u128 n : {nlo, n_hi - 1, n_hi, nhi - 1}) {
      if (n < nlo || n >= nhi) continue;
      const int g = ((n << s) << 3) >= thr ? 1 : 0;
      if (oracle::exact_floor_log(2, f, oracle::to_mpz(n)) != j + (len - 1) + g) return false;
    }
  }
  return true;
}

}  // namespace

ThresholdTable gen_threshold_table(const FormatParams& fmt, ThresholdDirection dir) {
  fmt.validate();
  ThresholdTable tbl;
  tbl.direction = dir;
  if (dir == ThresholdDirection::BinToDec) {
    tbl.reduction = Reduction::ParityHalved;
    tbl.frac_bits = bin2dec_frac_bits(fmt.p2);
    tbl.first_exponent = even_floor(bin2dec_lo(fmt));
    for (std::int64_t e = tbl.first_exponent; e <= even_floor(bin2dec_hi(fmt)); e += 2)
      tbl.entries.push_back(bin2dec_entry(e, tbl.frac_bits));
  } else {
    tbl.reduction = Reduction::Identity;
    tbl.frac_bits = dec2bin_frac_bits(decimal_kappa(fmt.p10));
    tbl.first_exponent = fmt.fmin;
    for (std::int64_t f = fmt.fmin; f <= fmt.fmax; ++f) tbl.entries.push_back(dec2bin_entry(f, tbl.frac_bits));
  }
  std::int64_t bad = 0;
  if (certify_threshold_table(fmt, tbl, &bad) != 0)
    throw GenerationError("threshold certification failed at exponent " + std::to_string(bad));
  return tbl;
}

std::size_t certify_threshold_table(const FormatParams& fmt, const ThresholdTable& tbl, std::int64_t* first_failure) {
  std::size_t failures = 0;
  const bool b2d = tbl.direction == ThresholdDirection::BinToDec;
  for (std::size_t i = 0; i < tbl.entries.size(); ++i) {
    const std::int64_t e = tbl.first_exponent + static_cast<std::int64_t>(i) * tbl.step();
    const bool ok = b2d ? certify_bin2dec_entry(fmt, tbl, e) : certify_dec2bin_entry(fmt, tbl, e);
    if (!ok) {
      if (failures == 0 && first_failure != nullptr) *first_failure = e;
      ++failures;
    }
  }
  return failures;
}

namespace {

std::vector<std::int64_t> expected_floor_logs(LogKind kind, std::int64_t lo, std::int64_t hi) {
  std::vector<std::int64_t> v;
  v.reserve(static_cast<std::size_t>(hi - lo + 1));
  const int base = kind == LogKind::Log10Of2 ? 10 : 2;
  for (std::int64_t x = lo; x <= hi; ++x) v.push_back(oracle::exact_floor_log(base, x, 1));
  return v;
}

bool matches(std::int64_t c, int l, std::int64_t lo, const std::vector<std::int64_t>& expected) {
  for (std::size_t i = 0; i < expected.size(); ++i) {
    const i128 x = lo + static_cast<std::int64_t>(i);
    if (static_cast<std::int64_t>((x * c) >> l) != expected[i]) return false;
  }
  return true;
}

}  // namespace

MulShiftConstant gen_mulshift(LogKind kind, std::int64_t lo, std::int64_t hi) {
  if (lo > hi) throw GenerationError("empty mul-shift range");
  const std::vector<std::int64_t> expected = expected_floor_logs(kind, lo, hi);
  const long double log = kind == LogKind::Log10Of2 ? std::log10(2.0L) : std::log2(10.0L);
  for (int l = 0; l <= 60; ++l) {
    // The estimate only seeds the search; the scan below is the certificate.
    const auto c0 = static_cast<std::int64_t>(std::floor(std::ldexp(log, l)));
    for (std::int64_t c = std::max<std::int64_t>(c0 - 2, 1); c <= c0 + 2; ++c)
      if (matches(c, l, lo, expected)) return {kind, c, l, lo, hi};
  }
  throw GenerationError("no mul-shift constant with shift <= 60 for [" + std::to_string(lo) + ", " +
                        std::to_string(hi) + "]");
}

bool certify_mulshift(const MulShiftConstant& c) {
  if (c.lo > c.hi || c.shift < 0 || c.shift > 100) return false;
  return matches(c.constant, c.shift, c.lo, expected_floor_logs(c.kind, c.lo, c.hi));
}

Pow5Table gen_pow5_table(int t, int w, int lambda, std::span<const int> shifts, std::int64_t offset,
                         bool require_exact) {
  if (t < 1 || t > 16) throw GenerationError("index bits must be in [1, 16]");
  if (w < 2 || w > kMaxWidth) throw GenerationError("width must be in [2, " + std::to_string(kMaxWidth) + "]");
  if (lambda < 0 || lambda > w) throw GenerationError("lambda must be in [0, w]");
  if (shifts.empty() || shifts[0] != t) throw GenerationError("first shift must equal the index bits");
  std::int64_t max_nat = 0;
  try {
    max_nat = max_natural_power(shifts);
  } catch (const Error& e) {
    throw GenerationError(e.what());
  }
  if (offset < 0 || offset > max_nat) throw GenerationError("offset outside the natural power range");

  Pow5Table tbl;
  tbl.t = t;
  tbl.w = w;
  tbl.lambda = lambda;
  tbl.shifts.assign(shifts.begin(), shifts.end());
  tbl.offset_power = offset;
  for (std::int64_t q = 0; q < (std::int64_t{1} << t); ++q) {
    const oracle::ExactPow5 p = oracle::exact_pow5(q, w);
    if (p.truncated && require_exact)
      throw GenerationError("5^" + std::to_string(q) + " does not fit " + std::to_string(w) + " bits");
    tbl.entries.push_back(p.value);
  }
  tbl.offset_constant = oracle::exact_pow5(-offset, w).value;
  return tbl;
}

TableSet gen_tables(const FormatParams& fmt, std::span<const int> shifts) {
  fmt.validate();
  TableSet s;
  s.fmt = fmt;
  s.exponent.bin2dec = gen_threshold_table(fmt, ThresholdDirection::BinToDec);
  s.exponent.dec2bin = gen_threshold_table(fmt, ThresholdDirection::DecToBin);
  s.exponent.log10_2 = gen_mulshift(LogKind::Log10Of2, s.exponent.bin2dec.first_exponent,
                                    s.exponent.bin2dec.last_exponent());
  s.exponent.log2_10 = gen_mulshift(LogKind::Log2Of10, fmt.fmin, fmt.fmax);
  s.pow5 = gen_pow5_table(shifts.empty() ? 0 : shifts[0], fmt.w, fmt.lambda, shifts, offset_power(fmt));
  return s;
}

TableSet gen_tables(const FormatPreset& p) { return gen_tables(p.fmt, p.shifts); }

void certify_tables(const TableSet& t) {
  std::int64_t bad = 0;
  if (certify_threshold_table(t.fmt, t.exponent.bin2dec, &bad) != 0)
    throw GenerationError("bin2dec threshold fails certification at exponent " + std::to_string(bad));
  if (certify_threshold_table(t.fmt, t.exponent.dec2bin, &bad) != 0)
    throw GenerationError("dec2bin threshold fails certification at exponent " + std::to_string(bad));
  if (!certify_mulshift(t.exponent.log10_2)) throw GenerationError("floor(x log10 2) constant fails certification");
  if (!certify_mulshift(t.exponent.log2_10)) throw GenerationError("floor(x log2 10) constant fails certification");
  const Pow5Table fresh =
      gen_pow5_table(t.pow5.t, t.pow5.w, t.pow5.lambda, t.pow5.shifts, t.pow5.offset_power, t.pow5.entries_exact());
  if (!(fresh == t.pow5)) throw GenerationError("pow5 table differs from the oracle");
}

// ---------------------------------------------------------------------------
// Serialization.

namespace {

constexpr char kMagic[8] = {'R', 'D', 'X', 'T', 'B', 'L', '0', '1'};

enum SectionTag : std::uint32_t { kBin2Dec = 1, kDec2Bin = 2, kMulShift = 3, kPow5 = 4 };

class Writer {
 public:
  void u32(std::uint32_t v) { le(v, 4); }
  void i32(std::int32_t v) { le(static_cast<std::uint32_t>(v), 4); }
  void i64(std::int64_t v) { le(static_cast<std::uint64_t>(v), 8); }
  void u64(std::uint64_t v) { le(v, 8); }
  void u128le(u128 v, std::size_t bytes) {
    for (std::size_t i = 0; i < bytes; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void raw(const char* p, std::size_t n) { out.insert(out.end(), p, p + n); }

  std::vector<std::uint8_t> out;

 private:
  void le(std::uint64_t v, int bytes) {
    for (int i = 0; i < bytes; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
};

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> b) : b_(b) {}
  std::uint64_t le(std::size_t bytes) {
    need(bytes);
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < bytes; ++i) v |= static_cast<std::uint64_t>(b_[pos_ + i]) << (8 * i);
    pos_ += bytes;
    return v;
  }
  std::uint32_t u32() { return static_cast<std::uint32_t>(le(4)); }
  std::int32_t i32() { return static_cast<std::int32_t>(u32()); }
  std::int64_t i64() { return static_cast<std::int64_t>(le(8)); }
  u128 u128le(std::size_t bytes) {
    need(bytes);
    u128 v = 0;
    for (std::size_t i = 0; i < bytes; ++i) v |= static_cast<u128>(b_[pos_ + i]) << (8 * i);
    pos_ += bytes;
    return v;
  }
  void need(std::size_t n) const {
    if (n > b_.size() - pos_) throw FormatError("table file truncated at byte " + std::to_string(pos_));
  }
  std::size_t pos() const noexcept { return pos_; }

 private:
  std::span<const std::uint8_t> b_;
  std::size_t pos_ = 0;
};

void write_threshold(Writer& w, std::uint32_t tag, const ThresholdTable& t) {
  w.u32(tag);
  w.u32(4);
  w.i64(static_cast<std::int64_t>(t.direction));
  w.i64(static_cast<std::int64_t>(t.reduction));
  w.i64(t.first_exponent);
  w.i64(t.frac_bits);
  const std::size_t width = threshold_entry_bytes(t);
  w.u32(static_cast<std::uint32_t>(t.entries.size()));
  w.u32(static_cast<std::uint32_t>(width));
  for (const u128 v : t.entries) w.u128le(v, width);
}

void write_mulshift(Writer& w, const MulShiftConstant& c) {
  w.u32(kMulShift);
  w.u32(5);
  w.i64(static_cast<std::int64_t>(c.kind));
  w.i64(c.constant);
  w.i64(c.shift);
  w.i64(c.lo);
  w.i64(c.hi);
  w.u32(0);
  w.u32(0);
}

std::size_t mant_limbs(int w) { return static_cast<std::size_t>((w + 63) / 64); }

void write_pow5(Writer& w, const Pow5Table& p) {
  w.u32(kPow5);
  w.u32(static_cast<std::uint32_t>(5 + p.shifts.size()));
  w.i64(p.t);
  w.i64(p.w);
  w.i64(p.lambda);
  w.i64(p.offset_power);
  w.i64(static_cast<std::int64_t>(p.shifts.size()));
  for (const int s : p.shifts) w.i64(s);
  const std::size_t limbs = mant_limbs(p.w);
  w.u32(static_cast<std::uint32_t>(p.entries.size() + 1));
  w.u32(static_cast<std::uint32_t>(limbs * 8 + 8));
  auto put = [&](const ScaledInteger& x) {
    for (std::size_t i = 0; i < limbs; ++i) w.u64(x.mant().limb[i]);
    w.i64(x.exp2());
  };
  for (const ScaledInteger& e : p.entries) put(e);
  put(p.offset_constant);
}

std::vector<std::int64_t> read_meta(Reader& r) {
  const std::uint32_t n = r.u32();
  if (n > 64) throw FormatError("implausible section metadata count " + std::to_string(n));
  std::vector<std::int64_t> meta(n);
  for (auto& m : meta) m = r.i64();
  return meta;
}

ThresholdTable read_threshold(Reader& r, const FormatParams& fmt, ThresholdDirection expect) {
  const std::vector<std::int64_t> meta = read_meta(r);
  if (meta.size() != 4) throw FormatError("threshold section needs 4 metadata values");
  ThresholdTable t;
  if (meta[0] != static_cast<std::int64_t>(expect)) throw FormatError("threshold direction does not match its tag");
  t.direction = expect;
  if (meta[1] != 0 && meta[1] != 1) throw FormatError("unknown threshold reduction");
  t.reduction = static_cast<Reduction>(meta[1]);
  t.first_exponent = meta[2];
  t.frac_bits = static_cast<int>(meta[3]);

  std::int64_t want_first = 0, want_count = 0;
  int want_bits = 0;
  Reduction want_red = Reduction::Identity;
  if (expect == ThresholdDirection::BinToDec) {
    want_red = Reduction::ParityHalved;
    want_first = even_floor(bin2dec_lo(fmt));
    want_count = (even_floor(bin2dec_hi(fmt)) - want_first) / 2 + 1;
    want_bits = bin2dec_frac_bits(fmt.p2);
  } else {
    want_first = fmt.fmin;
    want_count = static_cast<std::int64_t>(fmt.fmax) - fmt.fmin + 1;
    want_bits = dec2bin_frac_bits(decimal_kappa(fmt.p10));
  }
  if (t.reduction != want_red || t.first_exponent != want_first || t.frac_bits != want_bits)
    throw FormatError("threshold section layout does not match the format parameters");

  const std::uint32_t count = r.u32();
  const std::uint32_t width = r.u32();
  if (count != want_count)
    throw FormatError("threshold entry count " + std::to_string(count) + ", expected " + std::to_string(want_count));
  if (width != threshold_entry_bytes(t)) throw FormatError("threshold entry width mismatch");
  r.need(static_cast<std::size_t>(count) * width);
  t.entries.reserve(count);
  for (std::uint32_t i = 0; i < count; ++i) {
    const u128 v = r.u128le(width);
    if (v > t.never()) throw FormatError("threshold entry above the never sentinel");
    t.entries.push_back(v);
  }
  return t;
}

MulShiftConstant read_mulshift(Reader& r) {
  const std::vector<std::int64_t> meta = read_meta(r);
  if (meta.size() != 5) throw FormatError("mul-shift section needs 5 metadata values");
  if (meta[0] != 0 && meta[0] != 1) throw FormatError("unknown mul-shift kind");
  if (meta[2] < 0 || meta[2] > 100 || meta[3] > meta[4]) throw FormatError("mul-shift parameters out of range");
  if (r.u32() != 0 || r.u32() != 0) throw FormatError("mul-shift section carries no entries");
  return {static_cast<LogKind>(meta[0]), meta[1], static_cast<int>(meta[2]), meta[3], meta[4]};
}

Pow5Table read_pow5(Reader& r, const FormatParams& fmt) {
  const std::vector<std::int64_t> meta = read_meta(r);
  if (meta.size() < 6 || meta[4] != static_cast<std::int64_t>(meta.size()) - 5)
    throw FormatError("pow5 section metadata malformed");
  Pow5Table p;
  p.t = static_cast<int>(meta[0]);
  p.w = static_cast<int>(meta[1]);
  p.lambda = static_cast<int>(meta[2]);
  p.offset_power = meta[3];
  for (std::size_t i = 5; i < meta.size(); ++i) p.shifts.push_back(static_cast<int>(meta[i]));
  if (p.w != fmt.w || p.lambda != fmt.lambda) throw FormatError("pow5 width does not match the format parameters");
  if (p.t < 1 || p.t > 16 || p.shifts.empty() || p.shifts[0] != p.t) throw FormatError("pow5 index bits malformed");
  try {
    if (p.offset_power < 0 || p.offset_power > max_natural_power(p.shifts))
      throw FormatError("pow5 offset out of range");
  } catch (const DomainError& e) {
    throw FormatError(std::string("pow5 shifts: ") + e.what());
  }

  const std::uint32_t count = r.u32();
  const std::uint32_t width = r.u32();
  const std::size_t limbs = mant_limbs(p.w);
  if (count != (std::uint32_t{1} << p.t) + 1) throw FormatError("pow5 entry count mismatch");
  if (width != limbs * 8 + 8) throw FormatError("pow5 entry width mismatch");
  r.need(static_cast<std::size_t>(count) * width);
  auto get = [&]() {
    Mant m;
    for (std::size_t i = 0; i < limbs; ++i) m.limb[i] = r.le(8);
    const std::int64_t e = r.i64();
    if (m.bit_length() != p.w) throw FormatError("pow5 entry not normalized");
    return ScaledInteger::assume_normalized(m, e, p.w);
  };
  for (std::uint32_t i = 0; i + 1 < count; ++i) p.entries.push_back(get());
  p.offset_constant = get();
  return p;
}

}  // namespace

std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (const std::uint8_t b : bytes) {
    h ^= b;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::size_t threshold_entry_bytes(const ThresholdTable& tbl) noexcept {
  const int bits = bit_length(tbl.never());
  return bits <= 32 ? 4 : bits <= 64 ? 8 : 16;
}

std::vector<std::uint8_t> serialize(const TableSet& t) {
  Writer w;
  w.raw(kMagic, sizeof kMagic);
  for (const int v : {t.fmt.p2, t.fmt.p10, t.fmt.emin, t.fmt.emax, t.fmt.fmin, t.fmt.fmax, t.fmt.w, t.fmt.lambda})
    w.i32(v);
  w.u32(5);
  write_threshold(w, kBin2Dec, t.exponent.bin2dec);
  write_threshold(w, kDec2Bin, t.exponent.dec2bin);
  write_mulshift(w, t.exponent.log10_2);
  write_mulshift(w, t.exponent.log2_10);
  write_pow5(w, t.pow5);
  w.u64(fnv1a64(w.out));
  return std::move(w.out);
}

TableSet deserialize(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < sizeof kMagic + 8) throw FormatError("table file truncated");
  if (!std::equal(std::begin(kMagic), std::end(kMagic), bytes.begin())) throw FormatError("bad table file magic");
  const std::span<const std::uint8_t> body = bytes.first(bytes.size() - 8);
  Reader tail(bytes.last(8));
  if (tail.le(8) != fnv1a64(body)) throw FormatError("table file checksum mismatch");

  Reader r(body);
  r.le(sizeof kMagic);
  TableSet t;
  t.fmt.p2 = r.i32();
  t.fmt.p10 = r.i32();
  t.fmt.emin = r.i32();
  t.fmt.emax = r.i32();
  t.fmt.fmin = r.i32();
  t.fmt.fmax = r.i32();
  t.fmt.w = r.i32();
  t.fmt.lambda = r.i32();
  try {
    t.fmt.validate();
  } catch (const Error& e) {
    throw FormatError(std::string("table file parameters invalid: ") + e.what());
  }

  const std::uint32_t sections = r.u32();
  bool have_b2d = false, have_d2b = false, have_log10 = false, have_log2 = false, have_pow5 = false;
  for (std::uint32_t i = 0; i < sections; ++i) {
    const std::uint32_t tag = r.u32();
    switch (tag) {
      case kBin2Dec:
        if (have_b2d) throw FormatError("duplicate bin2dec section");
        t.exponent.bin2dec = read_threshold(r, t.fmt, ThresholdDirection::BinToDec);
        have_b2d = true;
        break;
      case kDec2Bin:
        if (have_d2b) throw FormatError("duplicate dec2bin section");
        t.exponent.dec2bin = read_threshold(r, t.fmt, ThresholdDirection::DecToBin);
        have_d2b = true;
        break;
      case kMulShift: {
        const MulShiftConstant c = read_mulshift(r);
        bool& have = c.kind == LogKind::Log10Of2 ? have_log10 : have_log2;
        if (have) throw FormatError("duplicate mul-shift section");
        (c.kind == LogKind::Log10Of2 ? t.exponent.log10_2 : t.exponent.log2_10) = c;
        have = true;
        break;
      }
      case kPow5:
        if (have_pow5) throw FormatError("duplicate pow5 section");
        t.pow5 = read_pow5(r, t.fmt);
        have_pow5 = true;
        break;
      default: throw FormatError("unknown section tag " + std::to_string(tag));
    }
  }
  if (!(have_b2d && have_d2b && have_log10 && have_log2 && have_pow5)) throw FormatError("table file lacks a section");
  if (r.pos() != body.size()) throw FormatError("trailing bytes after the last section");
  return t;
}

void write_table_file(const std::string& path, const TableSet& t) {
  const std::vector<std::uint8_t> bytes = serialize(t);
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw Error("cannot open '" + path + "' for writing");
  os.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!os) throw Error("write to '" + path + "' failed");
}

TableSet read_table_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error("cannot open '" + path + "'");
  const std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
  return deserialize(bytes);
}

namespace {

std::string hex128(u128 v) {
  static const char* d = "0123456789abcdef";
  std::string s;
  do {
    s.insert(s.begin(), d[static_cast<int>(v & 15)]);
    v >>= 4;
  } while (v != 0);
  return "0x" + s;
}

void dump_thresholds(std::ostream& os, const char* name, const ThresholdTable& t) {
  os << name << ": " << t.entries.size() << " entries, first exponent " << t.first_exponent << ", step "
     << t.step() << ", " << t.frac_bits << " fractional bits\n";
  for (std::size_t i = 0; i < t.entries.size(); ++i) {
    const std::int64_t e = t.first_exponent + static_cast<std::int64_t>(i) * t.step();
    os << "  " << std::setw(7) << e << "  ";
    if (t.entries[i] == t.never())
      os << "never\n";
    else
      os << hex128(t.entries[i]) << '\n';
  }
}

void dump_mulshift(std::ostream& os, const MulShiftConstant& c) {
  os << (c.kind == LogKind::Log10Of2 ? "floor(x*log10(2))" : "floor(x*log2(10))") << " = (x * " << c.constant
     << ") >> " << c.shift << "  for x in [" << c.lo << ", " << c.hi << "]\n";
}

}  // namespace

void dump(std::ostream& os, const TableSet& t) {
  const FormatParams& f = t.fmt;
  os << "params: p2=" << f.p2 << " p10=" << f.p10 << " E=[" << f.emin << ", " << f.emax << "] F=[" << f.fmin << ", "
     << f.fmax << "] w=" << f.w << " lambda=" << f.lambda << '\n';
  dump_mulshift(os, t.exponent.log10_2);
  dump_mulshift(os, t.exponent.log2_10);
  dump_thresholds(os, "bin2dec", t.exponent.bin2dec);
  dump_thresholds(os, "dec2bin", t.exponent.dec2bin);
  os << "pow5: t=" << t.pow5.t << " w=" << t.pow5.w << " lambda=" << t.pow5.lambda << " offset=" << t.pow5.offset_power
     << " shifts=";
  for (std::size_t i = 0; i < t.pow5.shifts.size(); ++i) os << (i ? "," : "") << t.pow5.shifts[i];
  os << '\n';
  for (std::size_t q = 0; q < t.pow5.entries.size(); ++q)
    os << "  5^" << q << " = " << t.pow5.entries[q].mant().to_hex() << " * 2^" << t.pow5.entries[q].exp2() << '\n';
  os << "  5^-" << t.pow5.offset_power << " ~ " << t.pow5.offset_constant.mant().to_hex() << " * 2^"
     << t.pow5.offset_constant.exp2() << '\n';
}

SizeRow size_row(const FormatPreset& p, const TableSet& t) {
  const ThresholdTable& tbl = p.family == FormatFamily::Binary ? t.exponent.bin2dec : t.exponent.dec2bin;
  SizeRow r;
  r.format = std::string(p.name);
  r.entries = tbl.entries.size();
  r.entry_bytes = threshold_entry_bytes(tbl);
  r.table_bytes = r.entries * r.entry_bytes;
  r.file_bytes = serialize(t).size();
  r.published_bytes = p.published_table_bytes;
  return r;
}

std::vector<SizeRow> report_sizes() {
  std::vector<SizeRow> rows;
  for (const FormatPreset& p : presets()) rows.push_back(size_row(p, gen_tables(p)));
  return rows;
}

void print_size_report(std::ostream& os, const std::vector<SizeRow>& rows) {
  os << std::left << std::setw(12) << "format" << std::right << std::setw(9) << "entries" << std::setw(7) << "width"
     << std::setw(10) << "bytes" << std::setw(11) << "published" << std::setw(8) << "ratio" << std::setw(12)
     << "file bytes" << '\n';
  for (const SizeRow& r : rows) {
    const double ratio = r.published_bytes > 0 ? static_cast<double>(r.table_bytes) / r.published_bytes : 0.0;
    os << std::left << std::setw(12) << r.format << std::right << std::setw(9) << r.entries << std::setw(7)
       << r.entry_bytes << std::setw(10) << r.table_bytes << std::setw(11) << r.published_bytes << std::setw(8)
       << std::fixed << std::setprecision(3) << ratio << std::setw(12) << r.file_bytes << '\n';
  }
  os.unsetf(std::ios::fixed);
}

}  // namespace rdx
