// Copyright 2026 The cvcond Authors
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

namespace cvcond {

/// Source parameters at or above the oscillation threshold.
class ThresholdError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A measurement outcome whose probability vanishes for the given state.
class ImpossibleOutcome : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Covariance matrix violating the uncertainty relation V + iΩ ⪰ 0.
class UnphysicalState : public std::runtime_error {
 public:
  UnphysicalState(const std::string& what, double min_eigenvalue)
      : std::runtime_error(what), min_eigenvalue_(min_eigenvalue) {}
  double min_eigenvalue() const { return min_eigenvalue_; }

 private:
  double min_eigenvalue_;
};

/// Adaptive quadrature ran out of panels before reaching its tolerance.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double estimate, double error_bound)
      : std::runtime_error(what), estimate_(estimate), error_bound_(error_bound) {}
  double estimate() const { return estimate_; }
  double error_bound() const { return error_bound_; }

 private:
  double estimate_;
  double error_bound_;
};

/// Malformed or inconsistent experiment description.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cvcond
