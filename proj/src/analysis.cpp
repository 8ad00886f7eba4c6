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

#include "rdx/analysis.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <random>

#include "rdx/oracle.hpp"
#include "rdx/tablegen.hpp"

namespace rdx::analysis {

namespace {

mpq_class pow2q(std::int64_t e) {
  mpz_class p = 1;
  mpq_class r;
  if (e >= 0) {
    p <<= static_cast<mp_bitcnt_t>(e);
    r = p;
  } else {
    p <<= static_cast<mp_bitcnt_t>(-e);
    r = mpq_class(1, p);
  }
  return r;
}

double log2_mpz(const mpz_class& z) {
  long exp = 0;
  const double d = mpz_get_d_2exp(&exp, z.get_mpz_t());
  return std::log2(d) + static_cast<double>(exp);
}

}  // namespace

double log2_abs(const mpq_class& x) {
  if (sgn(x) == 0) return -std::numeric_limits<double>::infinity();
  mpz_class num = abs(x.get_num());
  return log2_mpz(num) - log2_mpz(x.get_den());
}

double ErrorBudget::total_log2() const { return log2_abs(total); }

std::int64_t mult_count(const Decomposition& d, bool signed_offset) noexcept {
  return mult_count(std::span<const int>(d.shifts.data(), static_cast<std::size_t>(d.k)), signed_offset);
}

std::int64_t mult_count(std::span<const int> shifts, bool signed_offset) noexcept {
  return pow5_multiplications(shifts) + (signed_offset ? 1 : 0);
}

mpq_class eps_bar(int w, int lambda) {
  if (w < 1 || lambda < 0 || lambda > w) throw RangeError("eps_bar needs 0 <= lambda <= w");
  return pow2q(-2 * static_cast<std::int64_t>(w) + 2 + lambda);
}

mpq_class eps_step(int w, int lambda) { return eps_bar(w, std::max(lambda, w - 1)); }

mpq_class total_bound(std::int64_t n, const mpq_class& eps) {
  if (n < 0) throw RangeError("negative term count");
  if (sgn(eps) < 0 || eps >= 1) throw RangeError("eps must be in [0, 1)");
  const mpq_class base = 1 + eps;
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(n));
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(n));
  mpq_class r(num - den, den);
  r.canonicalize();
  return r;
}

ErrorBudget lemma_budget(int w, int lambda, std::span<const int> shifts, bool signed_offset) {
  ErrorBudget b;
  b.w = w;
  b.lambda = lambda;
  b.n = mult_count(shifts, signed_offset);
  b.eps_bar = eps_bar(w, lambda);
  b.total = total_bound(b.n, b.eps_bar);
  return b;
}

std::int64_t propagated_count(std::span<const int> shifts, bool signed_offset, int extra_products,
                              bool entries_exact) noexcept {
  std::int64_t n = static_cast<std::int64_t>(shifts.size());
  for (const int s : shifts) {
    n += (std::int64_t{1} << s) - 1;
    if (!entries_exact) n += std::int64_t{1} << s;
  }
  if (!entries_exact) n += 1;
  if (signed_offset) n += 2;
  return n + extra_products;
}

ErrorBudget propagated_budget(const Pow5Table& tbl, bool signed_offset, int extra_products) {
  ErrorBudget b;
  b.w = tbl.w;
  b.lambda = tbl.lambda;
  b.n = propagated_count(tbl.shifts, signed_offset, extra_products, tbl.entries_exact());
  b.eps_bar = eps_step(tbl.w, tbl.lambda);
  b.total = total_bound(b.n, b.eps_bar);
  return b;
}

mpq_class relative_error(const ScaledInteger& y, std::int64_t b) {
  mpq_class r = oracle::to_rational(y) / oracle::pow5_rational(b) - 1;
  return abs(r);
}

LemmaCheck lemma_statistical_check(int n_max, int eps_exp, std::int64_t trials, std::uint64_t seed) {
  if (n_max < 1 || eps_exp < 1 || eps_exp > 200) throw RangeError("lemma check parameters out of range");
  constexpr int kGrid = 32;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> pick(-(std::int64_t{1} << kGrid), std::int64_t{1} << kGrid);

  // Factor i is (2^(g+e) + j_i) / 2^(g+e).
  const mpz_class one = mpz_class(1) << static_cast<mp_bitcnt_t>(kGrid + eps_exp);
  const mpz_class unit = mpz_class(1) << static_cast<mp_bitcnt_t>(eps_exp);

  LemmaCheck out;
  for (std::int64_t trial = 0; trial < trials; ++trial) {
    const int n = 1 + static_cast<int>(trial % n_max);
    mpz_class prod = 1, den = 1;
    for (int i = 0; i < n; ++i) {
      std::int64_t j;
      if (trial < 2 * n_max)
        j = (trial / n_max == 0 ? 1 : -1) * (std::int64_t{1} << kGrid);
      else
        j = pick(rng);
      prod *= one + j;
      den *= one;
    }
    // |prod/den - 1| <= ((2^e + 1)^n - 2^(e n)) / 2^(e n)
    mpz_class bnum, bden;
    mpz_pow_ui(bnum.get_mpz_t(), mpz_class(unit + 1).get_mpz_t(), static_cast<unsigned long>(n));
    mpz_pow_ui(bden.get_mpz_t(), unit.get_mpz_t(), static_cast<unsigned long>(n));
    bnum -= bden;
    const mpz_class lhs = abs(prod - den) * bden;
    const mpz_class rhs = bnum * den;
    if (lhs > rhs) ++out.violations;
    if (sgn(rhs) != 0) {
      const double ratio = mpq_class(lhs, rhs).get_d();
      if (ratio > out.worst_ratio) out.worst_ratio = ratio;
    }
    ++out.trials;
  }
  return out;
}

std::vector<int> shifts_for(int t, std::int64_t b_max) {
  if (t < 1 || t > 16) throw RangeError("index bits must be in [1, 16]");
  std::vector<int> s{t};
  while ((std::int64_t{1} << (s.back() + t)) - 1 < b_max) {
    if (static_cast<int>(s.size()) == kMaxPow5Factors) throw RangeError("power range too large for the index bits");
    s.push_back(s.back() + t);
  }
  return s;
}

std::vector<SweepRow> sweep(const SweepConfig& cfg) {
  std::vector<SweepRow> rows;
  for (const int t : cfg.index_bits) {
    const std::vector<int> shifts = shifts_for(t, cfg.b_max);
    for (const int w : cfg.widths) {
      SweepRow row;
      row.w = w;
      row.t = t;
      row.lambda = cfg.lambda < 0 ? w / 2 : cfg.lambda;
      row.shifts = shifts;
      const Pow5Table tbl = gen_pow5_table(t, w, row.lambda, shifts, 0, /*require_exact=*/false);
      row.max_rel_err = 0;
      for (std::int64_t b = 0; b <= cfg.b_max; ++b) {
        const mpq_class e = relative_error(pow5_nat(b, tbl), b);
        if (e > row.max_rel_err) {
          row.max_rel_err = e;
          row.worst_b = b;
        }
      }
      row.bound = propagated_budget(tbl, false);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

void write_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << "w,t,lambda,max_rel_err_log2,bound_log2\n";
  const auto flags = os.flags();
  const auto prec = os.precision();
  os.setf(std::ios::fixed);
  os.precision(4);
  for (const SweepRow& r : rows)
    os << r.w << ',' << r.t << ',' << r.lambda << ',' << r.max_rel_err_log2() << ',' << r.bound.total_log2() << '\n';
  os.flags(flags);
  os.precision(prec);
}

double accuracy_slope(const std::vector<SweepRow>& rows, int t) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (const SweepRow& r : rows) {
    if (r.t != t || sgn(r.max_rel_err) == 0) continue;
    const double x = r.w, y = -r.max_rel_err_log2();
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  if (n < 2) return std::numeric_limits<double>::quiet_NaN();
  const double den = n * sxx - sx * sx;
  return den == 0 ? std::numeric_limits<double>::quiet_NaN() : (n * sxy - sx * sy) / den;
}

}  // namespace rdx::analysis
