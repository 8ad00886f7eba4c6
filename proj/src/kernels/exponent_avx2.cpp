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

// Compiled with -mavx2. Only reached after a runtime CPU check.

#include "rdx/kernels.hpp"

#if defined(__x86_64__) && defined(__AVX2__)
#include <immintrin.h>
#define RDX_HAVE_AVX2_KERNELS 1
#endif

namespace rdx::kernels {

#ifdef RDX_HAVE_AVX2_KERNELS

void decimal_exponents_binary32_avx2(const ExponentKernelTable& t, std::span<const std::uint32_t> bits,
                                     std::span<std::int32_t> out) noexcept {
  const std::size_t n = bits.size();
  const std::size_t full = n & ~std::size_t{7};
  // The 32-bit lane product e' * C needs |e'| * C < 2^31.
  if (t.log10_2_constant > (std::int64_t{1} << 31) / 256) {
    decimal_exponents_binary32_reference(t, bits, out);
    return;
  }
  const __m256i abs_mask = _mm256_set1_epi32(0x7fffffff);
  const __m256i frac_mask = _mm256_set1_epi32(0x7fffff);
  const __m256i hidden = _mm256_set1_epi32(0x800000);
  const __m256i one = _mm256_set1_epi32(1);
  const __m256i three = _mm256_set1_epi32(3);
  const __m256i zero = _mm256_setzero_si256();
  const __m256i ef_special = _mm256_set1_epi32(0xff);
  const __m256i first = _mm256_set1_epi32(t.first_exponent);
  const __m256i constant = _mm256_set1_epi32(static_cast<int>(t.log10_2_constant));
  const __m128i shift = _mm_cvtsi32_si128(t.log10_2_shift);
  const __m256i bias = _mm256_set1_epi32(1 - t.p10);
  const __m256i none = _mm256_set1_epi32(kNoExponent);
  const auto* thr = reinterpret_cast<const int*>(t.thresholds.data());

  for (std::size_t i = 0; i < full; i += 8) {
    const __m256i b = _mm256_and_si256(_mm256_loadu_si256(reinterpret_cast<const __m256i*>(bits.data() + i)), abs_mask);
    const __m256i ef = _mm256_srli_epi32(b, 23);
    const __m256i frac = _mm256_and_si256(b, frac_mask);
    const __m256i special = _mm256_or_si256(_mm256_cmpeq_epi32(b, zero), _mm256_cmpeq_epi32(ef, ef_special));
    const __m256i subnormal = _mm256_cmpeq_epi32(ef, zero);

    // Subnormal bit length from the float conversion's exponent (exact for frac < 2^24).
    const __m256i fexp = _mm256_srli_epi32(_mm256_castps_si256(_mm256_cvtepi32_ps(frac)), 23);
    const __m256i sub_shift = _mm256_sub_epi32(_mm256_set1_epi32(24 + 126), fexp);
    const __m256i m_sub = _mm256_sllv_epi32(frac, sub_shift);
    const __m256i e_sub = _mm256_sub_epi32(_mm256_set1_epi32(-149 + 23), sub_shift);
    const __m256i m_norm = _mm256_or_si256(frac, hidden);
    const __m256i e_norm = _mm256_add_epi32(ef, _mm256_set1_epi32(-150 + 23));
    const __m256i m = _mm256_blendv_epi8(m_norm, m_sub, subnormal);
    const __m256i e = _mm256_blendv_epi8(e_norm, e_sub, subnormal);

    const __m256i r = _mm256_and_si256(e, one);
    const __m256i reduced = _mm256_sub_epi32(e, r);
    const __m256i mfix = _mm256_sllv_epi32(m, _mm256_add_epi32(r, three));
    __m256i idx = _mm256_srai_epi32(_mm256_sub_epi32(reduced, first), 1);
    idx = _mm256_andnot_si256(special, idx);
    // Little-endian: the low dword of entry k sits at dword 2k; thresholds are < 2^28.
    const __m256i threshold = _mm256_i32gather_epi32(thr, idx, 8);
    const __m256i below = _mm256_cmpgt_epi32(threshold, mfix);  // -1 where gamma = 0
    const __m256i fl = _mm256_sra_epi32(_mm256_mullo_epi32(reduced, constant), shift);
    __m256i f = _mm256_add_epi32(_mm256_add_epi32(fl, one), _mm256_add_epi32(below, bias));
    f = _mm256_blendv_epi8(f, none, special);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out.data() + i), f);
  }
  decimal_exponents_binary32_reference(t, bits.subspan(full), out.subspan(full));
}

void decimal_exponents_binary64_avx2(const ExponentKernelTable& t, std::span<const std::uint64_t> bits,
                                     std::span<std::int32_t> out) noexcept {
  const std::size_t n = bits.size();
  const std::size_t full = n & ~std::size_t{3};
  // _mm256_mul_epi32 takes signed 32-bit operands; the flooring shift below
  // relies on a 2^32 bias fitting under 2^63 after scaling.
  if (t.log10_2_constant >= (std::int64_t{1} << 31) || t.log10_2_shift > 30) {
    decimal_exponents_binary64_reference(t, bits, out);
    return;
  }
  const __m256i abs_mask = _mm256_set1_epi64x(0x7fffffffffffffffll);
  const __m256i frac_mask = _mm256_set1_epi64x((1ll << 52) - 1);
  const __m256i hidden = _mm256_set1_epi64x(1ll << 52);
  const __m256i one = _mm256_set1_epi64x(1);
  const __m256i three = _mm256_set1_epi64x(3);
  const __m256i zero = _mm256_setzero_si256();
  const __m256i ef_special = _mm256_set1_epi64x(0x7ff);
  const __m256i first = _mm256_set1_epi64x(t.first_exponent);
  const __m256i constant = _mm256_set1_epi64x(t.log10_2_constant);
  const __m128i shift = _mm_cvtsi32_si128(t.log10_2_shift);
  const std::int64_t bias_hi = std::int64_t{1} << 32;
  const __m256i bias_in = _mm256_set1_epi64x(bias_hi << t.log10_2_shift);
  const __m256i bias_out = _mm256_set1_epi64x(bias_hi - 1 + t.p10);
  const __m256i magic = _mm256_set1_epi64x(0x4330000000000000ll);
  const __m256d two52 = _mm256_set1_pd(4503599627370496.0);
  const __m256i pack = _mm256_setr_epi32(0, 2, 4, 6, 0, 0, 0, 0);
  const __m128i none = _mm_set1_epi32(kNoExponent);
  const auto* thr = reinterpret_cast<const long long*>(t.thresholds.data());

  for (std::size_t i = 0; i < full; i += 4) {
    const __m256i b = _mm256_and_si256(_mm256_loadu_si256(reinterpret_cast<const __m256i*>(bits.data() + i)), abs_mask);
    const __m256i ef = _mm256_srli_epi64(b, 52);
    const __m256i frac = _mm256_and_si256(b, frac_mask);
    const __m256i special = _mm256_or_si256(_mm256_cmpeq_epi64(b, zero), _mm256_cmpeq_epi64(ef, ef_special));
    const __m256i subnormal = _mm256_cmpeq_epi64(ef, zero);

    // frac as a double, exactly: (2^52 + frac) - 2^52.
    const __m256d fd = _mm256_sub_pd(_mm256_castsi256_pd(_mm256_or_si256(frac, magic)), two52);
    const __m256i fexp = _mm256_srli_epi64(_mm256_castpd_si256(fd), 52);
    const __m256i sub_shift = _mm256_sub_epi64(_mm256_set1_epi64x(53 + 1022), fexp);
    const __m256i m_sub = _mm256_sllv_epi64(frac, sub_shift);
    const __m256i e_sub = _mm256_sub_epi64(_mm256_set1_epi64x(-1074 + 52), sub_shift);
    const __m256i m_norm = _mm256_or_si256(frac, hidden);
    const __m256i e_norm = _mm256_add_epi64(ef, _mm256_set1_epi64x(-1075 + 52));
    const __m256i m = _mm256_blendv_epi8(m_norm, m_sub, subnormal);
    const __m256i e = _mm256_blendv_epi8(e_norm, e_sub, subnormal);

    const __m256i r = _mm256_and_si256(e, one);
    const __m256i reduced = _mm256_sub_epi64(e, r);
    const __m256i mfix = _mm256_sllv_epi64(m, _mm256_add_epi64(r, three));
    __m256i idx = _mm256_srli_epi64(_mm256_sub_epi64(reduced, first), 1);
    idx = _mm256_andnot_si256(special, idx);
    const __m256i threshold = _mm256_i64gather_epi64(thr, idx, 8);
    const __m256i below = _mm256_cmpgt_epi64(threshold, mfix);  // -1 where gamma = 0

    // floor(x / 2^L) == ((x + 2^(32+L)) >> L) - 2^32 for |x| < 2^(32+L), logical shift.
    const __m256i prod = _mm256_mul_epi32(reduced, constant);
    const __m256i fl_biased = _mm256_srl_epi64(_mm256_add_epi64(prod, bias_in), shift);
    const __m256i f = _mm256_add_epi64(_mm256_sub_epi64(fl_biased, bias_out), _mm256_add_epi64(below, one));
    const __m128i packed = _mm256_castsi256_si128(_mm256_permutevar8x32_epi32(f, pack));
    const __m128i special32 = _mm256_castsi256_si128(_mm256_permutevar8x32_epi32(special, pack));
    const __m128i res = _mm_blendv_epi8(packed, none, special32);
    _mm_storeu_si128(reinterpret_cast<__m128i*>(out.data() + i), res);
  }
  decimal_exponents_binary64_reference(t, bits.subspan(full), out.subspan(full));
}

#else

void decimal_exponents_binary32_avx2(const ExponentKernelTable& t, std::span<const std::uint32_t> bits,
                                     std::span<std::int32_t> out) noexcept {
  decimal_exponents_binary32_reference(t, bits, out);
}

void decimal_exponents_binary64_avx2(const ExponentKernelTable& t, std::span<const std::uint64_t> bits,
                                     std::span<std::int32_t> out) noexcept {
  decimal_exponents_binary64_reference(t, bits, out);
}

#endif

}  // namespace rdx::kernels
