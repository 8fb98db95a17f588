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

#include <iosfwd>
#include <vector>

#include "cvcond/experiment.hpp"

namespace cvcond {

struct ScanPoint {
  double alpha = 0.0;
  double objective = 0.0;
};

struct ScanResult {
  Objective objective = Objective::origin_value;
  std::vector<ScanPoint> table;
  double best_alpha = 0.0;
  double best_value = 0.0;
};

/// Objective for the click-conditioned (or configured) output state with
/// envelope exp(−α|t−tc|). Errors are rethrown with α in the message.
double evaluate_objective(const ExperimentConfig& cfg, double alpha, Objective objective);

/// Uniform scan of α over [lo, hi] followed by golden-section refinement of
/// the best bracket to a width of `alpha_tol`. The origin value is minimized
/// and the Fock-1 fidelity maximized. Samples run on worker threads.
ScanResult scan_alpha(const ExperimentConfig& cfg, double lo, double hi, Objective objective, int samples,
                      double alpha_tol = 1e-3);

/// "alpha,objective" rows.
void write_scan_csv(std::ostream& out, const ScanResult& r);

}  // namespace cvcond
