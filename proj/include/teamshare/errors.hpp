// Copyright 2026 The Authors.
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

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace teamshare {

// Absolute slack used for equality and ordering guards on shares and
// objective values of order one.
inline constexpr double kTol = 1e-9;

// Slack for comparing values whose magnitude can be large (symmetric
// closed-form families reach 1e12 and beyond).
inline double scaled_tol(double a, double b) {
  return kTol * std::max({1.0, std::abs(a), std::abs(b)});
}

inline bool approx_leq(double a, double b) { return a <= b + scaled_tol(a, b); }

// Bad arguments or malformed instance data. `pointer` is a JSON pointer to
// the offending field when the error comes from instance parsing.
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what, std::string pointer = {})
      : std::invalid_argument(what), pointer_(std::move(pointer)) {}

  const std::string& pointer() const noexcept { return pointer_; }

 private:
  std::string pointer_;
};

// The request is well formed but exceeds a hard capability limit
// (enumeration caps, table size caps).
class CapabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An algorithm could not complete (iteration caps, rejection caps).
class AlgorithmError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace teamshare
