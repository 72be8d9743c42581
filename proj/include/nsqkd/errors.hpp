// Copyright 2026 The nsqkd Authors
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

namespace nsqkd {

/// Invalid parameter or data that the model cannot accept (CLI exit code 1).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Correlation table with missing or duplicated setting pairs.
class MalformedTableError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// The 24-variable elimination needs pairwise-symmetric marginals.
class ReductionInapplicableError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// JSON input that does not match the documented schema.
class SchemaError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Raised when the simplex iteration cap is hit. With Bland's rule this
/// indicates a bug, not a hard instance.
class IterationLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace nsqkd
