// Copyright 2026 The polarcover Authors.
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

#ifndef POLARCOVER_ERROR_HPP_
#define POLARCOVER_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace polarcover {

// Violated precondition or invalid input (bad descriptor, wrong ambient
// dimension, non-square q for a Hermitian space, ...).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed text input. `line` is 1-based, 0 when not tied to a line.
class ParseError : public DomainError {
 public:
  ParseError(const std::string& what, int line = 0)
      : DomainError(line > 0 ? "line " + std::to_string(line) + ": " + what
                             : what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// An enumeration or search would exceed its configured budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace polarcover

#endif  // POLARCOVER_ERROR_HPP_
