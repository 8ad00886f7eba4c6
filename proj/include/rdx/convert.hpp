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

// Binary <-> decimal conversion in two steps: the output exponent from the
// exponent tables, then the output mantissa
//
//   n* = m * 2^(E - F) * 5^(-F)        (binary -> decimal)
//   m* = n * 2^(F - E) * 5^F           (decimal -> binary)
//
// rounded in the requested mode. When n* is a multiple of 1/2 it is formed
// exactly from the valuations of the input and rounded exactly; otherwise
// the 5^B engine supplies it and a result whose truncated n* sits inside the
// error budget of a rounding boundary is reported as uncertain.

#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "rdx/analysis.hpp"
#include "rdx/tablegen.hpp"

namespace rdx {

enum class Special : std::uint8_t { None, Zero, Inf, NaN };

/// (-1)^negative * 2^exponent * mantissa. Finite values keep mantissa in
/// [2^(p2-1), 2^p2), except IEEE subnormals, which sit at the format's
/// minimum exponent with a shorter mantissa.
struct BinaryFP {
  bool negative = false;
  std::int64_t exponent = 0;
  u128 mantissa = 0;
  Special special = Special::None;

  static BinaryFP special_value(Special s, bool negative = false) { return {negative, 0, 0, s}; }
  friend bool operator==(const BinaryFP&, const BinaryFP&) = default;
};

/// (-1)^negative * 10^exponent * mantissa, mantissa in [10^(p10-1), 10^p10).
struct DecimalFP {
  bool negative = false;
  std::int64_t exponent = 0;
  u128 mantissa = 0;
  Special special = Special::None;

  static DecimalFP special_value(Special s, bool negative = false) { return {negative, 0, 0, s}; }
  friend bool operator==(const DecimalFP&, const DecimalFP&) = default;
};

enum class Status : std::uint8_t { Exact, Inexact, Uncertain };
std::string_view to_string(Status s) noexcept;
std::string_view to_string(Special s) noexcept;

template <class T>
struct ConversionResult {
  T output;
  Status status = Status::Exact;
  double error_budget_log2 = 0.0;  // log2 of the relative bound behind the uncertainty test
};

// IEEE interchange codecs. NaN payloads decode to a plain NaN and encode
// as the canonical quiet NaN with the sign kept.
BinaryFP decode_binary32(std::uint32_t bits) noexcept;
BinaryFP decode_binary64(std::uint64_t bits) noexcept;
/// Throws DomainError when the value is not representable exactly,
/// OverflowError above the largest finite exponent.
std::uint32_t encode_binary32(const BinaryFP& x);
std::uint64_t encode_binary64(const BinaryFP& x);

class Converter {
 public:
  /// Throws DomainError when the working width cannot hold both mantissas.
  explicit Converter(TableSet tables);

  const TableSet& tables() const noexcept { return t_; }
  const FormatParams& format() const noexcept { return t_.fmt; }
  /// Relative bound on the approximated n* / m* (both directions).
  const analysis::ErrorBudget& budget() const noexcept { return budget_; }

  /// Throws RangeError outside the format's exponent range, OverflowError
  /// when the decimal exponent exceeds fmax.
  ConversionResult<DecimalFP> bin_to_dec(const BinaryFP& x, RoundingMode mode) const;
  /// Throws RangeError when F lies outside [fmin, fmax], OverflowError above
  /// emax. Underflow rounds to a subnormal or to zero.
  ConversionResult<BinaryFP> dec_to_bin(const DecimalFP& x, RoundingMode mode) const;

 private:
  struct Rounded {
    u128 mant = 0;
    bool carry = false;
    bool inexact = false;
    bool uncertain = false;
  };
  Rounded round_exact(u128 twice, RoundingMode mag) const noexcept;
  Rounded round_approx(const ScaledInteger& v, int precision, int radix, RoundingMode mag) const;

  TableSet t_;
  analysis::ErrorBudget budget_;
  double budget_log2_ = 0.0;
  Mant margin_;  // ulps of the approximated mantissa treated as unsafe
  bool always_uncertain_ = false;
};

/// Parses "[+-]digits[.digits][e[+-]digits]" into an exact decimal rounded to
/// p10 digits only if no nonzero digit is lost; throws FormatError (with
/// position) otherwise. "inf", "nan" and signed zero are accepted.
DecimalFP parse_decimal_literal(std::string_view s, int p10);

std::string format_decimal(const DecimalFP& x);
std::string format_binary(const BinaryFP& x);

}  // namespace rdx
