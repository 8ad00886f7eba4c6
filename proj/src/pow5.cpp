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

#include "rdx/pow5.hpp"

#include <string>

namespace rdx {

std::int64_t Decomposition::reconstruct() const noexcept {
  std::int64_t b = q[0];
  for (int i = 0; i < k; ++i) b += static_cast<std::int64_t>(q[i + 1]) << shifts[i];
  return b;
}

namespace {

void check_shifts(std::span<const int> shifts) {
  if (shifts.empty() || shifts.size() > kMaxPow5Factors) throw DomainError("pow5 needs 1 to 8 shifts");
  if (shifts[0] < 1 || shifts[0] > 16) throw DomainError("first shift must be in [1, 16]");
  for (std::size_t i = 1; i < shifts.size(); ++i) {
    const int gap = shifts[i] - shifts[i - 1];
    if (gap < 1 || gap > shifts[0]) throw DomainError("shifts must increase by at most the first shift");
  }
  if (shifts.back() + shifts[0] > 62) throw DomainError("shifts too large");
}

}  // namespace

std::int64_t max_natural_power(std::span<const int> shifts) {
  check_shifts(shifts);
  return (std::int64_t{1} << (shifts.back() + shifts[0])) - 1;
}

Decomposition decompose(std::int64_t b, std::span<const int> shifts) {
  check_shifts(shifts);
  if (b < 0) throw RangeError("negative power for decompose");
  Decomposition d;
  d.k = static_cast<int>(shifts.size());
  const int t = shifts[0];
  d.q[0] = static_cast<std::uint32_t>(b & ((std::int64_t{1} << t) - 1));
  for (int i = 0; i < d.k; ++i) {
    d.shifts[i] = shifts[i];
    const std::int64_t part = b >> shifts[i];
    if (i + 1 < d.k) {
      d.q[i + 1] = static_cast<std::uint32_t>(part & ((std::int64_t{1} << (shifts[i + 1] - shifts[i])) - 1));
    } else {
      if (part >= (std::int64_t{1} << t))
        throw RangeError("power " + std::to_string(b) + " too large for the configured shifts");
      d.q[i + 1] = static_cast<std::uint32_t>(part);
    }
  }
  return d;
}

bool Pow5Table::entries_exact() const noexcept {
  // 5^q is odd, so its leading w bits are exact iff it has at most w bits;
  // then the normalized scale is non-positive.
  for (const ScaledInteger& e : entries)
    if (e.exp2() > 0) return false;
  return true;
}

std::int64_t Pow5Table::max_power() const noexcept {
  if (shifts.empty()) return -1;
  return (std::int64_t{1} << (shifts.back() + shifts[0])) - 1;
}

SquareChainResult square_chain(const ScaledInteger& v0, int n, int lambda) {
  if (n < 0 || n > 62) throw RangeError("square chain length out of range");
  SquareChainResult r;
  r.v = v0;
  for (int i = 0; i < n; ++i) {
    const NormalizedProduct p = mul_trunc_norm(r.v, r.v, lambda);
    r.v = p.value;
    r.sigma = 2 * r.sigma + (p.shift < 0 ? -p.shift : 0);
    r.rho = 2 * r.rho + (p.shift > 0 ? p.shift : 0);
  }
  r.consumed_scale = ((std::int64_t{1} << n) - 1) * lambda;
  return r;
}

int pow5_multiplications(std::span<const int> shifts) noexcept {
  int n = 0;
  for (const int s : shifts) n += s;
  return n + static_cast<int>(shifts.size());
}

ScaledInteger pow5_nat(std::int64_t b, const Pow5Table& tbl, Pow5Trace* trace) {
  if (b > tbl.max_power()) throw RangeError("power " + std::to_string(b) + " above table range");
  const Decomposition d = decompose(b, tbl.shifts);
  if (trace != nullptr) {
    *trace = Pow5Trace{};
    trace->decomposition = d;
  }

  // Factors with q_i = 0 still run their chain: squaring 1 is exact, and
  // a fixed schedule keeps the multiplication count independent of B.
  std::array<ScaledInteger, kMaxPow5Factors> factor;
  for (int i = d.k; i >= 1; --i) {
    const SquareChainResult c = square_chain(tbl.entries[d.q[i]], d.shifts[i - 1], tbl.lambda);
    factor[i - 1] = c.v;
    if (trace != nullptr) {
      trace->chains[i - 1] = c;
      trace->multiplications += d.shifts[i - 1];
    }
  }

  ScaledInteger m = factor[d.k - 1];
  auto step = [&](const ScaledInteger& x) {
    const NormalizedProduct p = mul_trunc_norm(m, x, tbl.lambda);
    m = p.value;
    if (trace != nullptr) {
      trace->final_shifts[trace->final_count++] = p.shift;
      ++trace->multiplications;
    }
  };
  for (int i = d.k - 1; i >= 1; --i) step(factor[i - 1]);
  step(tbl.entries[d.q[0]]);
  return m;
}

ScaledInteger pow5_signed(std::int64_t b, const Pow5Table& tbl, Pow5Trace* trace) {
  if (b < tbl.min_power() || b > tbl.max_power() - tbl.offset_power)
    throw RangeError("power " + std::to_string(b) + " outside the signed table range");
  const ScaledInteger y = pow5_nat(b + tbl.offset_power, tbl, trace);
  const NormalizedProduct p = mul_trunc_norm(y, tbl.offset_constant, tbl.lambda);
  if (trace != nullptr) {
    trace->final_shifts[trace->final_count++] = p.shift;
    ++trace->multiplications;
  }
  return p.value;
}

std::int64_t closed_form_exp2(const Pow5Trace& trace, const Pow5Table& tbl) {
  const Decomposition& d = trace.decomposition;
  std::int64_t s = 0;
  for (int i = 1; i <= d.k; ++i) {
    const SquareChainResult& c = trace.chains[i - 1];
    const std::int64_t e = tbl.entries[d.q[i]].exp2();
    s += (e << d.shifts[i - 1]) + c.consumed_scale - c.sigma + c.rho;
  }
  s += tbl.entries[d.q[0]].exp2() + static_cast<std::int64_t>(d.k) * tbl.lambda;
  for (int j = 0; j < d.k; ++j) s += trace.final_shifts[j];
  return s;
}

}  // namespace rdx
