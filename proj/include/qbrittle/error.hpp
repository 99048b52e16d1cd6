// Copyright 2026 The qbrittle Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace qbrittle {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller-supplied argument violates a precondition (odd qubit count,
/// kappa that removes nothing, out-of-range gate index, ...).
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// A circuit document could not be parsed or fails validation.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// The requested simulation exceeds the configured qubit cap.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// A statistic is mathematically undefined for the given input
/// (zero variance, all-zero importance, too few samples).
class UndefinedStatistic : public Error {
 public:
  using Error::Error;
};

/// A kappa sweep found no grid point with both classes populated.
class NoTransition : public Error {
 public:
  using Error::Error;
};

}  // namespace qbrittle
