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

#pragma once

#include <stdexcept>
#include <string>

namespace rdx {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the range a constant, table or decomposition was built for.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// Result exponent does not fit the destination format.
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// Operation undefined for the given value (e.g. normalizing zero).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Malformed table file or literal.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// A generated table failed certification against the oracle.
class GenerationError : public Error {
 public:
  using Error::Error;
};

}  // namespace rdx
