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

#include "rdx/verify.hpp"

#include <array>
#include <ostream>
#include <random>
#include <sstream>

#include "rdx/oracle.hpp"

namespace rdx::verify {

void Report::merge(const Report& o) {
  checked += o.checked;
  mismatches += o.mismatches;
  uncertain += o.uncertain;
  errors += o.errors;
  for (const std::string& s : o.examples) note(s);
}

void Report::note(const std::string& s) {
  if (examples.size() < 8) examples.push_back(s);
}

void print(std::ostream& os, const Report& r) {
  os << r.suite << ": checked=" << r.checked << " mismatches=" << r.mismatches << " uncertain=" << r.uncertain
     << " errors=" << r.errors << (r.ok() ? " OK" : " FAIL") << '\n';
  for (const std::string& e : r.examples) os << "  " << e << '\n';
}

namespace {

// A run of positive binary32 values sharing one exponent: 2^e * m for m in
// [m_begin, m_end), together with the first bit pattern.
struct Binade {
  std::int64_t e;
  u128 m_begin, m_end;
  std::uint32_t first_bits;
};

// Normal binades per exponent field, subnormals per bit length.
std::vector<Binade> binary32_binades() {
  std::vector<Binade> out;
  for (int len = 1; len <= 23; ++len) {
    const std::uint32_t lo = 1u << (len - 1);
    out.push_back({-149, lo, u128{lo} << 1, lo});
  }
  for (std::uint32_t field = 1; field <= 254; ++field)
    out.push_back({static_cast<std::int64_t>(field) - 150, 1u << 23, 1u << 24, field << 23});
  return out;
}

constexpr std::uint64_t kBinary32Positive = 0x7f800000ull - 1;  // finite, nonzero

std::string hex(std::uint64_t v) {
  std::ostringstream s;
  s << "0x" << std::hex << v;
  return s.str();
}

std::string describe(const oracle::ExactResult& r) {
  std::string digits;
  u128 v = r.mantissa;
  do {
    digits.insert(digits.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  } while (v != 0);
  return "exp=" + std::to_string(r.exponent) + " mant=" + digits + (r.inexact ? " inexact" : " exact");
}

}  // namespace

Report exponent_binary32_exhaustive(const TableSet& tables, const Progress& progress) {
  Report rep;
  rep.suite = "exponent-binary32-exhaustive";
  const FormatParams& fmt = tables.fmt;
  const BatchExponentTable batch(fmt, tables.exponent);
  const kernels::ExponentKernelTable view = batch.view();

  constexpr std::size_t kChunk = 4096;
  std::vector<std::uint32_t> bits(kChunk);
  std::vector<std::int32_t> fast(kChunk);
  std::uint64_t done = 0;

  for (const Binade& b : binary32_binades()) {
    // Expected F steps up by one at each decade crossing.
    const std::vector<u128> cross = oracle::decade_crossings(b.e, b.m_begin, b.m_end);
    std::int64_t f = oracle::exact_floor_log(10, b.e, oracle::to_mpz(b.m_begin)) - fmt.p10 + 1;
    std::size_t next = 0;
    const int len = bit_length(b.m_begin);
    for (u128 m0 = b.m_begin; m0 < b.m_end; m0 += kChunk) {
      const std::size_t n = static_cast<std::size_t>(std::min<u128>(kChunk, b.m_end - m0));
      for (std::size_t i = 0; i < n; ++i)
        bits[i] = b.first_bits + static_cast<std::uint32_t>(m0 - b.m_begin) + static_cast<std::uint32_t>(i);
      kernels::decimal_exponents_binary32(view, std::span(bits.data(), n), std::span(fast.data(), n));
      for (std::size_t i = 0; i < n; ++i) {
        const u128 m = m0 + i;
        while (next < cross.size() && cross[next] <= m) {
          ++f;
          ++next;
        }
        const int sh = fmt.p2 - len;
        std::int64_t scalar = 0;
        try {
          scalar = decimal_exponent(b.e - sh, m << sh, fmt, tables.exponent);
        } catch (const Error& e) {
          ++rep.errors;
          rep.note(hex(bits[i]) + ": " + e.what());
          continue;
        }
        ++rep.checked;
        if (scalar != f || fast[i] != f) {
          ++rep.mismatches;
          rep.note(hex(bits[i]) + ": oracle F=" + std::to_string(f) + " scalar=" + std::to_string(scalar) +
                   " batch=" + std::to_string(fast[i]));
        }
      }
      done += n;
      if (progress) progress(done, kBinary32Positive);
    }
  }
  return rep;
}

Report bin_to_dec_binary32_exhaustive(const Converter& conv, const std::vector<RoundingMode>& modes,
                                      const Progress& progress) {
  Report rep;
  rep.suite = "bin2dec-binary32-exhaustive";
  const FormatParams& fmt = conv.format();
  std::uint64_t done = 0;
  for (const Binade& b : binary32_binades()) {
    oracle::BinadeWalker walk(b.e, b.m_begin, b.m_end, fmt.p10);
    for (; !walk.done(); walk.next()) {
      const BinaryFP x{false, b.e, walk.mantissa(), Special::None};
      for (const RoundingMode mode : modes) {
        const oracle::ExactResult want = walk.rounded(magnitude_mode(mode, false));
        ++rep.checked;
        try {
          const ConversionResult<DecimalFP> got = conv.bin_to_dec(x, mode);
          if (got.status == Status::Uncertain) {
            ++rep.uncertain;
            rep.note("uncertain " + hex(b.first_bits + static_cast<std::uint32_t>(walk.mantissa() - b.m_begin)) +
                     " mode " + std::string(to_string(mode)));
          }
          const bool inexact = got.status != Status::Exact;
          if (got.output.exponent != want.exponent || got.output.mantissa != want.mantissa ||
              (got.status != Status::Uncertain && inexact != want.inexact)) {
            ++rep.mismatches;
            rep.note(hex(b.first_bits + static_cast<std::uint32_t>(walk.mantissa() - b.m_begin)) + " mode " +
                     std::string(to_string(mode)) + ": want " + describe(want) + " got " +
                     format_decimal(got.output) + " " + std::string(to_string(got.status)));
          }
        } catch (const Error& e) {
          ++rep.errors;
          rep.note(std::string("exception: ") + e.what());
        }
      }
      if ((++done & 0xfffff) == 0 && progress) progress(done, kBinary32Positive);
    }
  }
  if (progress) progress(done, kBinary32Positive);
  return rep;
}

constexpr std::uint64_t kNegativeStride = 0x3f;

Report round_trip_binary32_exhaustive(const Converter& conv, const Progress& progress) {
  Report rep;
  rep.suite = "roundtrip-binary32-exhaustive";
  // Every positive finite pattern; the sign only travels through the
  // conversion, so negatives are spot-checked on a stride.
  for (std::uint64_t u = 1; u < 0x7f800000ull; ++u) {
    for (const std::uint32_t sign : {0u, 0x80000000u}) {
      if (sign != 0 && (u & kNegativeStride) != 0) continue;
      const std::uint32_t bits = static_cast<std::uint32_t>(u) | sign;
      ++rep.checked;
      try {
        const ConversionResult<DecimalFP> d = conv.bin_to_dec(decode_binary32(bits), RoundingMode::NearestEven);
        const ConversionResult<BinaryFP> back = conv.dec_to_bin(d.output, RoundingMode::NearestEven);
        if (d.status == Status::Uncertain || back.status == Status::Uncertain) ++rep.uncertain;
        const std::uint32_t again = encode_binary32(back.output);
        if (again != bits) {
          ++rep.mismatches;
          rep.note(hex(bits) + " -> " + format_decimal(d.output) + " -> " + hex(again));
        }
      } catch (const Error& e) {
        ++rep.errors;
        rep.note(hex(bits) + ": " + e.what());
      }
    }
    if ((u & 0xfffff) == 0 && progress) progress(u, kBinary32Positive);
  }
  return rep;
}

namespace {

std::uint64_t random_finite_binary64(std::mt19937_64& rng) {
  for (;;) {
    const std::uint64_t b = rng();
    const std::uint64_t field = (b >> 52) & 0x7ff;
    if (field == 0x7ff || (b & 0x7fffffffffffffffull) == 0) continue;
    return b;
  }
}

}  // namespace

Report bin_to_dec_binary64_sampled(const Converter& conv, RoundingMode mode, std::uint64_t samples,
                                   std::uint64_t seed) {
  Report rep;
  rep.suite = "bin2dec-binary64-sampled-" + std::string(to_string(mode));
  std::mt19937_64 rng(seed);
  for (std::uint64_t i = 0; i < samples; ++i) {
    const std::uint64_t bits = random_finite_binary64(rng);
    const BinaryFP x = decode_binary64(bits);
    ++rep.checked;
    try {
      const oracle::ExactResult want = oracle::exact_convert(oracle::Direction::BinToDec, x.negative, x.exponent,
                                                             oracle::to_mpz(x.mantissa), conv.format(), mode);
      const ConversionResult<DecimalFP> got = conv.bin_to_dec(x, mode);
      if (got.status == Status::Uncertain) {
        ++rep.uncertain;
        rep.note("uncertain " + hex(bits));
      }
      if (got.output.exponent != want.exponent || got.output.mantissa != want.mantissa ||
          (got.status != Status::Uncertain && (got.status != Status::Exact) != want.inexact)) {
        ++rep.mismatches;
        rep.note(hex(bits) + ": want " + describe(want) + " got " + format_decimal(got.output));
      }
    } catch (const Error& e) {
      ++rep.errors;
      rep.note(hex(bits) + ": " + e.what());
    }
  }
  return rep;
}

Report round_trip_binary64_sampled(const Converter& conv, std::uint64_t samples, std::uint64_t seed) {
  Report rep;
  rep.suite = "roundtrip-binary64-sampled";
  std::mt19937_64 rng(seed);
  for (std::uint64_t i = 0; i < samples; ++i) {
    const std::uint64_t bits = random_finite_binary64(rng);
    ++rep.checked;
    try {
      const ConversionResult<DecimalFP> d = conv.bin_to_dec(decode_binary64(bits), RoundingMode::NearestEven);
      const ConversionResult<BinaryFP> back = conv.dec_to_bin(d.output, RoundingMode::NearestEven);
      if (d.status == Status::Uncertain || back.status == Status::Uncertain) ++rep.uncertain;
      const std::uint64_t again = encode_binary64(back.output);
      if (again != bits) {
        ++rep.mismatches;
        rep.note(hex(bits) + " -> " + format_decimal(d.output) + " -> " + hex(again));
      }
    } catch (const Error& e) {
      ++rep.errors;
      rep.note(hex(bits) + ": " + e.what());
    }
  }
  return rep;
}

Report dec_to_bin_sampled(const Converter& conv, RoundingMode mode, std::uint64_t samples, std::uint64_t seed) {
  Report rep;
  rep.suite = "dec2bin-sampled-" + std::string(to_string(mode));
  const FormatParams& fmt = conv.format();
  std::mt19937_64 rng(seed);
  const u128 lo = pow_u128(10, fmt.p10 - 1), span = pow_u128(10, fmt.p10) - lo;
  std::uniform_int_distribution<std::int64_t> pick_f(fmt.fmin, fmt.fmax);
  for (std::uint64_t i = 0; i < samples; ++i) {
    const u128 r = (static_cast<u128>(rng()) << 64) | rng();
    const DecimalFP x{(rng() & 1) != 0, pick_f(rng), lo + r % span, Special::None};
    ++rep.checked;
    bool want_overflow = false;
    oracle::ExactResult want;
    try {
      want = oracle::exact_convert(oracle::Direction::DecToBin, x.negative, x.exponent, oracle::to_mpz(x.mantissa),
                                   fmt, mode);
    } catch (const OverflowError&) {
      want_overflow = true;
    }
    try {
      const ConversionResult<BinaryFP> got = conv.dec_to_bin(x, mode);
      if (want_overflow) {
        ++rep.mismatches;
        rep.note(format_decimal(x) + ": oracle overflows, converter returned " + format_binary(got.output));
        continue;
      }
      if (got.status == Status::Uncertain) ++rep.uncertain;
      const bool zero = got.output.special == Special::Zero;
      const bool same = zero ? want.mantissa == 0
                             : got.output.exponent == want.exponent && got.output.mantissa == want.mantissa;
      if (!same || (got.status != Status::Uncertain && (got.status != Status::Exact) != want.inexact)) {
        ++rep.mismatches;
        rep.note(format_decimal(x) + ": want " + describe(want) + " got " + format_binary(got.output));
      }
    } catch (const OverflowError& e) {
      if (!want_overflow) {
        ++rep.mismatches;
        rep.note(format_decimal(x) + ": unexpected overflow");
      }
    } catch (const Error& e) {
      ++rep.errors;
      rep.note(format_decimal(x) + ": " + e.what());
    }
  }
  return rep;
}

}  // namespace rdx::verify
