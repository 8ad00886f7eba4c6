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

// Shared fixtures: cached preset tables and exact rational helpers.

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <string>

#include "rdx/convert.hpp"
#include "rdx/formats.hpp"
#include "rdx/oracle.hpp"
#include "rdx/tablegen.hpp"

namespace rdx::test {

inline const TableSet& tables(const std::string& name) {
  static std::map<std::string, TableSet> cache;
  auto it = cache.find(name);
  if (it == cache.end()) it = cache.emplace(name, gen_tables(preset(name))).first;
  return it->second;
}

inline const Converter& converter(const std::string& name) {
  static std::map<std::string, Converter> cache;
  auto it = cache.find(name);
  if (it == cache.end()) it = cache.emplace(name, Converter(tables(name))).first;
  return it->second;
}

inline mpq_class value(const ScaledInteger& x) { return oracle::to_rational(x); }

inline mpq_class pow2q(std::int64_t e) {
  mpz_class p = 1;
  p <<= static_cast<mp_bitcnt_t>(e < 0 ? -e : e);
  return e < 0 ? mpq_class(mpz_class(1), p) : mpq_class(p);
}

inline mpq_class pow10q(std::int64_t e) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(e < 0 ? -e : e));
  return e < 0 ? mpq_class(mpz_class(1), p) : mpq_class(p);
}

inline mpq_class decimal_value(const DecimalFP& d) {
  mpq_class v = mpq_class(oracle::to_mpz(d.mantissa)) * pow10q(d.exponent);
  v.canonicalize();
  return d.negative ? mpq_class(-v) : v;
}

inline mpq_class binary_value(const BinaryFP& b) {
  mpq_class v = mpq_class(oracle::to_mpz(b.mantissa)) * pow2q(b.exponent);
  v.canonicalize();
  return b.negative ? mpq_class(-v) : v;
}

inline ScaledInteger scaled(u128 m, std::int64_t e, int w) { return normalize(m, e, w); }

}  // namespace rdx::test
