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

#include "rdx/oracle.hpp"

#include <algorithm>
#include <string>

namespace rdx::oracle {
namespace {

mpz_class pow2(std::uint64_t k) {
  mpz_class r;
  mpz_setbit(r.get_mpz_t(), k);
  return r;
}

mpz_class pow10(std::uint64_t k) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, k);
  return r;
}

std::int64_t bitlen(const mpz_class& x) {
  return sgn(x) == 0 ? 0 : static_cast<std::int64_t>(mpz_sizeinbase(x.get_mpz_t(), 2));
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

Mant to_mant(const mpz_class& x) {
  Mant m;
  std::size_t count = 0;
  if (bitlen(x) > Mant::kBits) throw RangeError("value exceeds mantissa capacity");
  mpz_export(m.limb.data(), &count, -1, sizeof(std::uint64_t), 0, 0, x.get_mpz_t());
  return m;
}

// sign(2^e * m - 10^k)
int compare_pow2_with_pow10(std::int64_t e, const mpz_class& m, std::int64_t k) {
  mpz_class lhs = m;
  mpz_class rhs = 1;
  if (e >= 0) lhs <<= static_cast<mp_bitcnt_t>(e); else rhs <<= static_cast<mp_bitcnt_t>(-e);
  if (k >= 0) rhs *= pow10(static_cast<std::uint64_t>(k)); else lhs *= pow10(static_cast<std::uint64_t>(-k));
  return cmp(lhs, rhs);
}

Discarded classify_tail(const mpz_class& twice_tail, const mpz_class& unit) {
  if (sgn(twice_tail) == 0) return Discarded::None;
  const int c = cmp(twice_tail, unit);
  return c < 0 ? Discarded::BelowHalf : (c == 0 ? Discarded::Half : Discarded::AboveHalf);
}

}  // namespace

mpz_class pow5(std::uint64_t k) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 5, k);
  return r;
}

mpz_class pow5_by_repeated_multiplication(std::uint64_t k) {
  mpz_class r = 1;
  for (std::uint64_t i = 0; i < k; ++i) r *= 5;
  return r;
}

mpz_class to_mpz(u128 x) {
  mpz_class r = static_cast<unsigned long>(x >> 64);
  r <<= 64;
  r += static_cast<unsigned long>(static_cast<std::uint64_t>(x));
  return r;
}

u128 to_u128(const mpz_class& x) {
  if (sgn(x) < 0 || bitlen(x) > 128) throw RangeError("value does not fit 128 bits");
  const mpz_class hi = x >> 64;
  const mpz_class lo = x - (hi << 64);
  return (static_cast<u128>(hi.get_ui()) << 64) | lo.get_ui();
}

mpq_class to_rational(const ScaledInteger& x) {
  mpz_class m;
  mpz_import(m.get_mpz_t(), Mant::kLimbs, -1, sizeof(std::uint64_t), 0, 0, x.mant().limb.data());
  mpq_class r(m);
  if (x.exp2() >= 0) {
    r *= mpq_class(pow2(static_cast<std::uint64_t>(x.exp2())));
  } else {
    r /= mpq_class(pow2(static_cast<std::uint64_t>(-x.exp2())));
  }
  r.canonicalize();
  return r;
}

mpq_class to_rational(const BigPow& x) {
  mpq_class r(x.value);
  if (x.scale2 >= 0) r *= mpq_class(pow2(static_cast<std::uint64_t>(x.scale2)));
  else r /= mpq_class(pow2(static_cast<std::uint64_t>(-x.scale2)));
  r.canonicalize();
  return r;
}

mpq_class pow5_rational(std::int64_t b) {
  if (b >= 0) return mpq_class(pow5(static_cast<std::uint64_t>(b)));
  mpq_class r(mpz_class(1), pow5(static_cast<std::uint64_t>(-b)));
  r.canonicalize();
  return r;
}

ExactPow5 exact_pow5(std::int64_t b, int w) {
  if (b > kPow5Cap || b < -kPow5Cap) throw RangeError("|B| exceeds " + std::to_string(kPow5Cap));
  if (w < 1 || w > kMaxWidth) throw RangeError("width out of range");
  ExactPow5 r;
  if (b >= 0) {
    const mpz_class x = pow5(static_cast<std::uint64_t>(b));
    const std::int64_t len = bitlen(x);
    if (len > w) {
      const auto s = static_cast<mp_bitcnt_t>(len - w);
      const mpz_class kept = x >> s;
      const mpz_class tail = x - (kept << s);
      r.value = ScaledInteger::from_normalized(to_mant(kept), static_cast<std::int64_t>(s), w);
      r.truncated = sgn(tail) != 0;
      r.discarded = classify_tail(tail << 1, pow2(s));
    } else {
      const auto s = static_cast<mp_bitcnt_t>(w - len);
      r.value = ScaledInteger::from_normalized(to_mant(x << s), -static_cast<std::int64_t>(s), w);
    }
    return r;
  }
  const mpz_class d = pow5(static_cast<std::uint64_t>(-b));
  const std::int64_t s = w - 1 + bitlen(d);
  const mpz_class num = pow2(static_cast<std::uint64_t>(s));
  const mpz_class kept = num / d;
  const mpz_class tail = num - kept * d;
  r.value = ScaledInteger::from_normalized(to_mant(kept), -s, w);
  r.truncated = sgn(tail) != 0;
  r.discarded = classify_tail(tail << 1, d);
  return r;
}

std::int64_t exact_floor_log(int base, std::int64_t exponent, const mpz_class& mantissa) {
  if (sgn(mantissa) <= 0) throw DomainError("exact_floor_log needs a positive mantissa");
  if (base == 10) {
    // x = 2^exponent * mantissa lies in [2^t, 2^(t+1)).
    const std::int64_t t = exponent + bitlen(mantissa) - 1;
    std::int64_t k = floor_div(t * 1233, 4096);
    while (compare_pow2_with_pow10(exponent, mantissa, k) < 0) --k;
    while (compare_pow2_with_pow10(exponent, mantissa, k + 1) >= 0) ++k;
    return k;
  }
  if (base == 2) {
    mpz_class num = mantissa;
    mpz_class den = 1;
    if (exponent >= 0) num *= pow10(static_cast<std::uint64_t>(exponent));
    else den = pow10(static_cast<std::uint64_t>(-exponent));
    const std::int64_t k = bitlen(num) - bitlen(den);
    // x >= 2^k ?
    mpz_class lhs = num, rhs = den;
    if (k >= 0) rhs <<= static_cast<mp_bitcnt_t>(k); else lhs <<= static_cast<mp_bitcnt_t>(-k);
    return cmp(lhs, rhs) >= 0 ? k : k - 1;
  }
  throw RangeError("base must be 2 or 10");
}

u128 round_quotient(u128 q, int cmp_twice_r_den, bool r_nonzero, RoundingMode mode) noexcept {
  switch (mode) {
    case RoundingMode::NearestEven:
      return q + ((cmp_twice_r_den > 0 || (cmp_twice_r_den == 0 && (q & 1) != 0)) ? 1 : 0);
    case RoundingMode::Up: return q + (r_nonzero ? 1 : 0);
    case RoundingMode::Down:
    case RoundingMode::TowardZero: return q;
  }
  return q;
}

ExactResult exact_convert(Direction dir, bool negative, std::int64_t exponent, const mpz_class& mantissa,
                          const FormatParams& fmt, RoundingMode mode) {
  if (sgn(mantissa) <= 0) throw DomainError("exact_convert needs a positive mantissa");
  const RoundingMode mm = magnitude_mode(mode, negative);
  ExactResult out;
  mpz_class num = mantissa;
  mpz_class den = 1;

  if (dir == Direction::BinToDec) {
    const std::int64_t f = exact_floor_log(10, exponent, mantissa) - fmt.p10 + 1;
    // n* = m * 2^E / 10^F
    if (exponent >= 0) num <<= static_cast<mp_bitcnt_t>(exponent); else den <<= static_cast<mp_bitcnt_t>(-exponent);
    if (f >= 0) den *= pow10(static_cast<std::uint64_t>(f)); else num *= pow10(static_cast<std::uint64_t>(-f));
    out.exponent = f;
  } else {
    std::int64_t e = exact_floor_log(2, exponent, mantissa) - fmt.p2 + 1;
    e = std::max<std::int64_t>(e, fmt.ieee_emin());
    // m* = n * 10^F / 2^E
    if (exponent >= 0) num *= pow10(static_cast<std::uint64_t>(exponent)); else den *= pow10(static_cast<std::uint64_t>(-exponent));
    if (e >= 0) den <<= static_cast<mp_bitcnt_t>(e); else num <<= static_cast<mp_bitcnt_t>(-e);
    out.exponent = e;
  }

  mpz_class q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  const mpz_class twice_r = r << 1;
  out.inexact = sgn(r) != 0;
  out.mantissa = round_quotient(to_u128(q), cmp(twice_r, den), out.inexact, mm);

  if (dir == Direction::BinToDec) {
    const u128 top = pow_u128(10, fmt.p10);
    if (out.mantissa == top) {
      out.mantissa = top / 10;
      ++out.exponent;
    }
    if (out.exponent < fmt.fmin || out.exponent > fmt.fmax)
      throw OverflowError("decimal exponent " + std::to_string(out.exponent) + " outside [" +
                          std::to_string(fmt.fmin) + ", " + std::to_string(fmt.fmax) + "]");
  } else {
    const u128 top = u128{1} << fmt.p2;
    if (out.mantissa == top) {
      out.mantissa = top >> 1;
      ++out.exponent;
    }
    if (out.exponent > fmt.emax)
      throw OverflowError("binary exponent " + std::to_string(out.exponent) + " above " + std::to_string(fmt.emax));
    if (out.mantissa == 0) out.exponent = fmt.ieee_emin();
  }
  return out;
}

std::vector<u128> decade_crossings(std::int64_t e, u128 m_begin, u128 m_end) {
  std::vector<u128> out;
  if (m_begin == 0 || m_begin >= m_end) return out;
  std::int64_t k = exact_floor_log(10, e, to_mpz(m_begin));
  const mpz_class end = to_mpz(m_end);
  for (;;) {
    ++k;
    // smallest m with 2^e * m >= 10^k: ceil(10^k / 2^e)
    mpz_class num = 1, den = 1;
    if (k >= 0) num = pow10(static_cast<std::uint64_t>(k)); else den = pow10(static_cast<std::uint64_t>(-k));
    if (e >= 0) den <<= static_cast<mp_bitcnt_t>(e); else num <<= static_cast<mp_bitcnt_t>(-e);
    mpz_class c;
    mpz_cdiv_q(c.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    if (c >= end) break;
    out.push_back(to_u128(c));
  }
  return out;
}

BinadeWalker::BinadeWalker(std::int64_t e, u128 m_begin, u128 m_end, int p10)
    : e_(e), m_(m_begin), end_(m_end), p10_(p10), decade_top_(pow_u128(10, p10)) {
  if (m_begin == 0) throw DomainError("mantissa walk must start above zero");
  if (!done()) seed();
}

void BinadeWalker::seed() {
  const mpz_class m = to_mpz(m_);
  const std::int64_t k = exact_floor_log(10, e_, m);
  f_ = k - p10_ + 1;

  mpz_class num = 1, den = 1;
  if (e_ >= 0) num <<= static_cast<mp_bitcnt_t>(e_); else den <<= static_cast<mp_bitcnt_t>(-e_);
  if (f_ >= 0) den *= pow10(static_cast<std::uint64_t>(f_)); else num *= pow10(static_cast<std::uint64_t>(-f_));
  mpq_class ratio(num, den);
  ratio.canonicalize();
  if (bitlen(ratio.get_den()) > 125) throw RangeError("denominator too wide for the 128-bit walker");
  den_ = to_u128(ratio.get_den());

  mpz_class sq, sr;
  mpz_fdiv_qr(sq.get_mpz_t(), sr.get_mpz_t(), ratio.get_num().get_mpz_t(), ratio.get_den().get_mpz_t());
  step_q_ = to_u128(sq);
  step_r_ = to_u128(sr);

  mpz_class q, r;
  const mpz_class mn = m * ratio.get_num();
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), mn.get_mpz_t(), ratio.get_den().get_mpz_t());
  q_ = to_u128(q);
  r_ = to_u128(r);

  // First mantissa of the next decade.
  mpz_class cnum = 1, cden = 1;
  const std::int64_t top = k + 1;
  if (top >= 0) cnum = pow10(static_cast<std::uint64_t>(top)); else cden = pow10(static_cast<std::uint64_t>(-top));
  if (e_ >= 0) cden <<= static_cast<mp_bitcnt_t>(e_); else cnum <<= static_cast<mp_bitcnt_t>(-e_);
  mpz_class c;
  mpz_cdiv_q(c.get_mpz_t(), cnum.get_mpz_t(), cden.get_mpz_t());
  next_crossing_ = bitlen(c) > 127 ? ~u128{0} : to_u128(c);
}

void BinadeWalker::next() {
  ++m_;
  if (done()) return;
  if (m_ >= next_crossing_) {
    seed();
    return;
  }
  q_ += step_q_;
  r_ += step_r_;
  if (r_ >= den_) {
    r_ -= den_;
    ++q_;
  }
}

ExactResult BinadeWalker::rounded(RoundingMode mode) const noexcept {
  const u128 twice = r_ << 1;
  const int c = twice < den_ ? -1 : (twice == den_ ? 0 : 1);
  ExactResult out;
  out.exponent = f_;
  out.inexact = r_ != 0;
  out.mantissa = round_quotient(q_, c, out.inexact, mode);
  if (out.mantissa == decade_top_) {
    out.mantissa = decade_top_ / 10;
    ++out.exponent;
  }
  return out;
}

}  // namespace rdx::oracle
