// Copyright 2026 The nnsieve Authors.
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

#ifndef NNSIEVE_ERRORS_HPP_
#define NNSIEVE_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace nnsieve {

// Malformed arguments: empty data, dimension mismatch, bad bounds.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Argument outside the mathematical domain of a formula (e.g. V <= 4 in the
// covering bound).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Valid input the routine does not support (e.g. total variation for d > 1).
class Unsupported : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Sample with zero spread handed to a statistic that divides by it.
class DegenerateSample : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A post-condition that the library guarantees failed to hold.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace nnsieve

#endif  // NNSIEVE_ERRORS_HPP_
