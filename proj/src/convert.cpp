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

#include "rdx/convert.hpp"

#include <cctype>
#include <limits>

namespace rdx {

std::string_view to_string(Status s) noexcept {
  switch (s) {
    case Status::Exact: return "exact";
    case Status::Inexact: return "inexact";
    case Status::Uncertain: return "uncertain";
  }
  return "?";
}

std::string_view to_string(Special s) noexcept {
  switch (s) {
    case Special::None: return "finite";
    case Special::Zero: return "zero";
    case Special::Inf: return "inf";
    case Special::NaN: return "nan";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// IEEE codecs.

namespace {

template <class Word, int P, int ExpBits>
struct Ieee {
  static constexpr int kBias = (1 << (ExpBits - 1)) - 1;
  static constexpr int kMaxField = (1 << ExpBits) - 1;
  static constexpr std::int64_t kEmin = 1 - kBias - (P - 1);         // subnormal exponent
  static constexpr std::int64_t kEmax = kMaxField - 1 - kBias - (P - 1);
  static constexpr Word kFracMask = (Word{1} << (P - 1)) - 1;
  static constexpr int kSignShift = sizeof(Word) * 8 - 1;

  static BinaryFP decode(Word bits) noexcept {
    const bool neg = (bits >> kSignShift) != 0;
    const auto field = static_cast<int>((bits >> (P - 1)) & static_cast<Word>(kMaxField));
    const Word frac = bits & kFracMask;
    if (field == kMaxField) return BinaryFP::special_value(frac == 0 ? Special::Inf : Special::NaN, neg);
    if (field == 0) {
      if (frac == 0) return BinaryFP::special_value(Special::Zero, neg);
      return {neg, kEmin, frac, Special::None};
    }
    return {neg, field - kBias - (P - 1), frac | (kFracMask + 1), Special::None};
  }

  static Word encode(const BinaryFP& x) {
    const Word sign = x.negative ? Word{1} << kSignShift : 0;
    switch (x.special) {
      case Special::Zero: return sign;
      case Special::Inf: return sign | (static_cast<Word>(kMaxField) << (P - 1));
      case Special::NaN: return sign | (static_cast<Word>(kMaxField) << (P - 1)) | (Word{1} << (P - 2));
      case Special::None: break;
    }
    u128 m = x.mantissa;
    std::int64_t e = x.exponent;
    if (m == 0) throw DomainError("finite value with zero mantissa");
    while (bit_length(m) > P) {
      if ((m & 1) != 0) throw DomainError("mantissa wider than the format");
      m >>= 1;
      ++e;
    }
    while (bit_length(m) < P && e > kEmin) {
      m <<= 1;
      --e;
    }
    while (e < kEmin) {
      if ((m & 1) != 0) throw DomainError("value below the subnormal grid");
      m >>= 1;
      ++e;
    }
    if (e > kEmax) throw OverflowError("exponent above the format's range");
    if (bit_length(m) < P) return sign | static_cast<Word>(m);  // subnormal, e == kEmin
    return sign | (static_cast<Word>(e + kBias + (P - 1)) << (P - 1)) | (static_cast<Word>(m) & kFracMask);
  }
};

using Binary32 = Ieee<std::uint32_t, 24, 8>;
using Binary64 = Ieee<std::uint64_t, 53, 11>;

int ctz128(u128 x) noexcept {
  const auto lo = static_cast<std::uint64_t>(x);
  return lo != 0 ? __builtin_ctzll(lo) : 64 + __builtin_ctzll(static_cast<std::uint64_t>(x >> 64));
}

// x = odd5 * 2^v2 * 5^v5 with odd5 coprime to 10.
struct Valuations {
  u128 rest;
  int v2;
  int v5;
};

Valuations valuations(u128 x) noexcept {
  Valuations v{x, 0, 0};
  v.v2 = ctz128(x);
  v.rest >>= v.v2;
  if ((v.rest >> 64) == 0) {
    auto r = static_cast<std::uint64_t>(v.rest);  // 64-bit division is much cheaper
    while (r % 5 == 0) {
      r /= 5;
      ++v.v5;
    }
    v.rest = r;
    return v;
  }
  while (v.rest % 5 == 0) {
    v.rest /= 5;
    ++v.v5;
  }
  return v;
}

}  // namespace

BinaryFP decode_binary32(std::uint32_t bits) noexcept { return Binary32::decode(bits); }
BinaryFP decode_binary64(std::uint64_t bits) noexcept { return Binary64::decode(bits); }
std::uint32_t encode_binary32(const BinaryFP& x) { return Binary32::encode(x); }
std::uint64_t encode_binary64(const BinaryFP& x) { return Binary64::encode(x); }

// ---------------------------------------------------------------------------
// Converter.

Converter::Converter(TableSet tables) : t_(std::move(tables)) {
  const FormatParams& f = t_.fmt;
  f.validate();
  if (f.w < f.p2 || f.w < decimal_kappa(f.p10))
    throw DomainError("working width below the mantissa widths of the format");
  if (t_.pow5.w != f.w || t_.pow5.lambda != f.lambda) throw DomainError("pow5 table built for another width");
  if (t_.pow5.offset_power < offset_power(f) || t_.pow5.max_power() - t_.pow5.offset_power < offset_power(f))
    throw DomainError("pow5 table does not cover the format's powers");
  // One more truncated product: the input mantissa times 5^B.
  budget_ = analysis::propagated_budget(t_.pow5, /*signed_offset=*/true, /*extra_products=*/1);
  budget_log2_ = budget_.total_log2();
  // The approximation never exceeds the exact value and trails it by less
  // than T/(1-T) of it, i.e. by less than 2T * 2^w ulps for T < 1/2.
  mpz_class ulps;
  if (budget_.total >= mpq_class(1, 2)) {
    ulps = mpz_class(1) << 300;
  } else {
    const mpq_class x = budget_.total * 2 * mpq_class(mpz_class(1) << static_cast<mp_bitcnt_t>(f.w));
    mpz_cdiv_q(ulps.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    ulps += 1;
  }
  if (mpz_sizeinbase(ulps.get_mpz_t(), 2) > static_cast<std::size_t>(Mant::kBits - 2)) {
    always_uncertain_ = true;
  } else {
    std::size_t count = 0;
    mpz_export(margin_.limb.data(), &count, -1, sizeof(std::uint64_t), 0, 0, ulps.get_mpz_t());
  }
}

namespace {

template <std::size_t N>
bool near_boundary(const WideUint<N>& frac, int f, RoundingMode mag, const WideUint<N>& margin) noexcept {
  using W = WideUint<N>;
  if (mag == RoundingMode::NearestEven) {
    const W half = W::power_of_two(f - 1);
    const W dist = frac >= half ? frac.sub(half) : half.sub(frac);
    return dist <= margin;
  }
  const W one = W::power_of_two(f);
  return frac <= margin || one.sub(frac) <= margin;
}

}  // namespace

Converter::Rounded Converter::round_exact(u128 twice, RoundingMode mag) const noexcept {
  Rounded r;
  const u128 q = twice >> 1;
  const bool half = (twice & 1) != 0;
  bool up = false;
  if (half) up = mag == RoundingMode::Up || (mag == RoundingMode::NearestEven && (q & 1) != 0);
  r.mant = q + (up ? 1 : 0);
  r.inexact = half;
  return r;
}

Converter::Rounded Converter::round_approx(const ScaledInteger& v, int precision, int radix,
                                           RoundingMode mag) const {
  const RoundedMantissa rm = round_scaled(v, precision, radix, mag);
  Rounded r;
  r.mant = rm.mant;
  r.carry = rm.carry;
  r.inexact = true;  // an exact n* would have taken the exact path

  // Distance of the truncated value from the nearest decision boundary, in
  // units of its last bit: halves for nearest, integers for directed modes.
  if (always_uncertain_ || v.exp2() >= 0) {
    r.uncertain = true;
    return r;
  }
  if (-v.exp2() > Wide::kBits - 2) {
    // Far below one half: only a directed mode can land near its boundary at zero.
    r.uncertain = mag != RoundingMode::NearestEven && v.mant() <= margin_;
    return r;
  }
  const int f = static_cast<int>(-v.exp2());
  if (f <= Mant::kBits - 1) {
    r.uncertain = near_boundary(v.mant().low_bits(f), f, mag, margin_);
  } else {
    // Deep subnormal results: the fraction outgrows w bits.
    r.uncertain = near_boundary(v.mant().resized<Wide::kLimbs>(), f, mag, margin_.resized<Wide::kLimbs>());
  }
  return r;
}

ConversionResult<DecimalFP> Converter::bin_to_dec(const BinaryFP& x, RoundingMode mode) const {
  ConversionResult<DecimalFP> out;
  out.error_budget_log2 = budget_log2_;
  if (x.special != Special::None) {
    out.output = DecimalFP::special_value(x.special, x.negative);
    return out;
  }
  const FormatParams& fmt = t_.fmt;
  u128 m = x.mantissa;
  std::int64_t e = x.exponent;
  const int len = bit_length(m);
  if (len == 0) throw DomainError("finite binary value with zero mantissa");
  if (len > fmt.p2) throw DomainError("binary mantissa wider than p2");
  m <<= fmt.p2 - len;
  e -= fmt.p2 - len;
  if (e < fmt.emin || e > fmt.emax) throw RangeError("binary exponent " + std::to_string(e) + " outside the format");

  std::int64_t f = decimal_exponent(e, m, fmt, t_.exponent);
  const RoundingMode mag = magnitude_mode(mode, x.negative);

  Rounded r;
  const Valuations v = valuations(m);
  const std::int64_t a = e - f + v.v2;  // n* = rest * 2^a * 5^b
  const std::int64_t b = -f + v.v5;
  if (a >= -1 && b >= 0) {
    // n* is a multiple of 1/2 and 2 n* < 2 * 10^p10 fits.
    r = round_exact((v.rest * pow_u128(5, static_cast<int>(b))) << (a + 1), mag);
  } else {
    const ScaledInteger p = pow5_signed(-f, t_.pow5);
    const ScaledInteger xm = normalize(m, 0, fmt.w);
    const ScaledInteger n = mul_trunc_norm(xm, p, fmt.lambda).value.scaled(e - f);
    r = round_approx(n, fmt.p10, 10, mag);
  }

  const u128 top = pow_u128(10, fmt.p10);
  if (r.carry || r.mant >= top) {
    r.mant = top / 10;
    ++f;
  } else if (r.mant < top / 10) {
    r.mant = top / 10;  // only reachable for results already flagged uncertain
  }
  if (f > fmt.fmax) throw OverflowError("decimal exponent " + std::to_string(f) + " above fmax");
  if (f < fmt.fmin) throw RangeError("decimal exponent " + std::to_string(f) + " below fmin");
  out.output = {x.negative, f, r.mant, Special::None};
  out.status = r.uncertain ? Status::Uncertain : r.inexact ? Status::Inexact : Status::Exact;
  return out;
}

ConversionResult<BinaryFP> Converter::dec_to_bin(const DecimalFP& x, RoundingMode mode) const {
  ConversionResult<BinaryFP> out;
  out.error_budget_log2 = budget_log2_;
  if (x.special != Special::None) {
    out.output = BinaryFP::special_value(x.special, x.negative);
    return out;
  }
  const FormatParams& fmt = t_.fmt;
  const u128 top = pow_u128(10, fmt.p10);
  u128 n = x.mantissa;
  std::int64_t f = x.exponent;
  if (n == 0) throw DomainError("finite decimal value with zero mantissa");
  if (n >= top) throw DomainError("decimal mantissa wider than p10 digits");
  while (n < top / 10) {
    n *= 10;
    --f;
  }
  if (f < fmt.fmin || f > fmt.fmax) throw RangeError("decimal exponent " + std::to_string(f) + " outside the format");

  const std::int64_t e_norm = binary_exponent(f, n, fmt, t_.exponent);
  std::int64_t e = std::max<std::int64_t>(e_norm, fmt.ieee_emin());
  const RoundingMode mag = magnitude_mode(mode, x.negative);

  Rounded r;
  const Valuations v = valuations(n);
  const std::int64_t a = f - e + v.v2;  // m* = rest * 2^a * 5^b
  const std::int64_t b = f + v.v5;
  if (a >= -1 && b >= 0) {
    r = round_exact((v.rest * pow_u128(5, static_cast<int>(b))) << (a + 1), mag);
  } else {
    const ScaledInteger p = pow5_signed(f, t_.pow5);
    const ScaledInteger xn = normalize(n, 0, fmt.w);
    const ScaledInteger m = mul_trunc_norm(xn, p, fmt.lambda).value.scaled(f - e);
    r = round_approx(m, fmt.p2, 2, mag);
  }

  const u128 limit = u128{1} << fmt.p2;
  if (r.carry || r.mant >= limit) {
    r.mant = limit >> 1;
    ++e;
  } else if (e == e_norm && r.mant < (limit >> 1)) {
    r.mant = limit >> 1;  // only reachable for results already flagged uncertain
  }
  if (e > fmt.emax) throw OverflowError("binary exponent " + std::to_string(e) + " above emax");
  out.status = r.uncertain ? Status::Uncertain : r.inexact ? Status::Inexact : Status::Exact;
  if (r.mant == 0) {
    out.output = BinaryFP::special_value(Special::Zero, x.negative);
    return out;
  }
  out.output = {x.negative, e, r.mant, Special::None};
  return out;
}

// ---------------------------------------------------------------------------
// Literals.

DecimalFP parse_decimal_literal(std::string_view s, int p10) {
  auto fail = [&](std::size_t pos, const std::string& what) -> FormatError {
    return FormatError("decimal literal '" + std::string(s) + "' at position " + std::to_string(pos) + ": " + what);
  };
  std::size_t i = 0;
  bool neg = false;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = s[i++] == '-';
  const std::string_view rest = s.substr(i);
  if (rest == "inf" || rest == "infinity") return DecimalFP::special_value(Special::Inf, neg);
  if (rest == "nan") return DecimalFP::special_value(Special::NaN, neg);

  std::string digits;
  std::int64_t exp10 = 0;
  bool any = false, point = false;
  for (; i < s.size(); ++i) {
    const char c = s[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      any = true;
      if (point) --exp10;
      if (!(digits.empty() && c == '0')) digits.push_back(c);
    } else if (c == '.' && !point) {
      point = true;
    } else {
      break;
    }
  }
  if (!any) throw fail(i, "expected a digit");
  if (i < s.size()) {
    if (s[i] != 'e' && s[i] != 'E') throw fail(i, "unexpected character");
    ++i;
    bool eneg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) eneg = s[i++] == '-';
    if (i >= s.size()) throw fail(i, "missing exponent digits");
    std::int64_t ev = 0;
    for (; i < s.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) throw fail(i, "unexpected character in exponent");
      if (ev > 100'000'000) throw fail(i, "exponent too large");
      ev = ev * 10 + (s[i] - '0');
    }
    exp10 += eneg ? -ev : ev;
  }
  if (digits.empty()) return DecimalFP::special_value(Special::Zero, neg);
  while (!digits.empty() && digits.back() == '0') {
    digits.pop_back();
    ++exp10;
  }
  const int count = static_cast<int>(digits.size());
  if (count > p10) throw fail(0, std::to_string(count) + " significant digits exceed p10 = " + std::to_string(p10));
  u128 n = 0;
  for (const char c : digits) n = n * 10 + static_cast<unsigned>(c - '0');
  n *= pow_u128(10, p10 - count);
  return {neg, exp10 - (p10 - count), n, Special::None};
}

namespace {

std::string u128_decimal(u128 v) {
  std::string s;
  do {
    s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  } while (v != 0);
  return s;
}

}  // namespace

std::string format_decimal(const DecimalFP& x) {
  const std::string sign = x.negative ? "-" : "+";
  if (x.special != Special::None) return sign + std::string(to_string(x.special));
  return sign + " F=" + std::to_string(x.exponent) + " n=" + u128_decimal(x.mantissa);
}

std::string format_binary(const BinaryFP& x) {
  const std::string sign = x.negative ? "-" : "+";
  if (x.special != Special::None) return sign + std::string(to_string(x.special));
  return sign + " E=" + std::to_string(x.exponent) + " m=" + u128_decimal(x.mantissa);
}

}  // namespace rdx
