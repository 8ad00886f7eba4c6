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

// Error model of the 5^B engine and the accuracy-versus-width experiment.
//
// Two budgets live here. The product-lemma budget (1 + eps_bar)^N - 1 with
// N = sum n_i + k counts one error term per multiplication. A squaring chain
// also squares the errors already present, so the error committed at step j
// of an n-step chain is raised to 2^(n-j); the propagated budget counts
// sum (2^n_i - 1) + k terms instead and is the one the converter relies on.

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "rdx/pow5.hpp"

namespace rdx::analysis {

struct ErrorBudget {
  int w = 0;
  int lambda = 0;
  std::int64_t n = 0;   // error terms
  mpq_class eps_bar;    // per-term bound
  mpq_class total;      // (1 + eps_bar)^n - 1, exact

  double total_log2() const;
};

/// sum n_i + k, plus one for the offset multiply of pow5_signed.
std::int64_t mult_count(const Decomposition& d, bool signed_offset) noexcept;
std::int64_t mult_count(std::span<const int> shifts, bool signed_offset) noexcept;

/// 2^(-2w + 2 + lambda), exactly. Throws RangeError unless 0 <= lambda <= w.
mpq_class eps_bar(int w, int lambda);

/// Per-product relative error of mul_trunc_norm: below 2^(1-w) whenever
/// lambda <= w - 1 (the renormalizing shift discards the rest), 2^(2-w) at
/// lambda = w. Equals eps_bar(w, max(lambda, w - 1)).
mpq_class eps_step(int w, int lambda);

/// (1 + eps)^n - 1 in exact rational arithmetic.
mpq_class total_bound(std::int64_t n, const mpq_class& eps);

/// The product-lemma budget with N = mult_count(shifts, signed_offset).
ErrorBudget lemma_budget(int w, int lambda, std::span<const int> shifts, bool signed_offset);

/// Error terms of pow5 with error compounding through the squarings:
/// sum (2^n_i - 1) + k, plus the offset multiply and the offset constant's
/// own truncation when signed, plus `extra_products` trailing multiplies.
/// Truncated table entries add 2^n_i per chain and one for 5^q_0.
std::int64_t propagated_count(std::span<const int> shifts, bool signed_offset, int extra_products = 0,
                              bool entries_exact = true) noexcept;

/// Rigorous budget: propagated_count terms of eps_step.
ErrorBudget propagated_budget(const Pow5Table& tbl, bool signed_offset, int extra_products = 0);

/// |y / 5^B - 1| exactly.
mpq_class relative_error(const ScaledInteger& y, std::int64_t b);

double log2_abs(const mpq_class& x);

// ---------------------------------------------------------------------------
// Statistical check of |prod(1 + e_i) - 1| <= (1 + eps)^N - 1.

struct LemmaCheck {
  std::int64_t trials = 0;
  std::int64_t violations = 0;
  double worst_ratio = 0.0;  // max |prod - 1| / bound seen
};

/// `trials` vectors e_1..e_N, N cycling through 1..n_max, each e_i drawn
/// uniformly from the dyadic grid {eps * j / 2^32 : |j| <= 2^32} with
/// eps = 2^-eps_exp. The first vectors are the all-(+eps) and all-(-eps)
/// corners. Evaluated exactly.
LemmaCheck lemma_statistical_check(int n_max, int eps_exp, std::int64_t trials, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Sweep.

struct SweepRow {
  int w = 0;
  int t = 0;
  int lambda = 0;
  std::vector<int> shifts;
  std::int64_t worst_b = 0;
  mpq_class max_rel_err;
  ErrorBudget bound;

  double max_rel_err_log2() const { return log2_abs(max_rel_err); }
};

struct SweepConfig {
  std::vector<int> widths{64, 96, 128, 160};
  std::vector<int> index_bits{3, 4, 5};
  std::int64_t b_max = 680;  // B in [0, b_max]
  int lambda = -1;           // -1: w / 2
};

/// Smallest chain n_1 = t, n_2 = 2t, ... whose range reaches b_max.
std::vector<int> shifts_for(int t, std::int64_t b_max);

std::vector<SweepRow> sweep(const SweepConfig& cfg);
/// Header `w,t,lambda,max_rel_err_log2,bound_log2`, LF line endings.
void write_csv(std::ostream& os, const std::vector<SweepRow>& rows);

/// Least-squares slope of -log2(max_rel_err) against w over the rows with
/// index bits t.
double accuracy_slope(const std::vector<SweepRow>& rows, int t);

}  // namespace rdx::analysis
