// Copyright 2026 The nullvalue Authors
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

#ifndef NULLVALUE_ERRORS_H_
#define NULLVALUE_ERRORS_H_

#include <stdexcept>
#include <string>

namespace nullvalue {

/// Raised for out-of-range or non-finite arguments.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a quantity is mathematically undefined for the given inputs
/// (zero denominators, fully absorbed reference states, empty estimators).
class NumericalDegeneracy : public std::domain_error {
 public:
  enum class Kind {
    kUndefinedConditional,
    kUndefinedSnr,
    kDegenerateReference,
    kConclusiveProbabilityZero,
    kInsufficientData,
  };

  NumericalDegeneracy(Kind kind, const std::string& what)
      : std::domain_error(what), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

}  // namespace nullvalue

#endif  // NULLVALUE_ERRORS_H_
