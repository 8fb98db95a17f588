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

#include <Eigen/Core>

#include "cvcond/source_models.hpp"

namespace cvcond {

struct CoherenceGridSpec {
  double half_width = 10.0;  ///< in units of 1/gamma1
  int points = 201;
};

/// G(t, t') = <a^dag(tc) a^dag(t) a(t') a(tc)> sampled on a uniform grid.
struct CoherenceKernel {
  std::vector<double> times;
  Eigen::MatrixXd g;
};

/// Zero-mean Gaussian fourth moment for a real stationary kernel:
///   G = c_aa(t−tc) c_aa(t'−tc) + c_ada(t'−tc) c_ada(t−tc) + c_ada(0) c_ada(t−t').
CoherenceKernel conditional_coherence(const CorrelationKernel& k, double tc, const CoherenceGridSpec& grid = {});

struct DominantMode {
  std::vector<double> samples;  ///< unit L² norm on the grid, positive at its peak
  double eigenvalue = 0.0;
  double dominance_ratio = 0.0;  ///< leading eigenvalue / trace
};

/// Leading eigenvector of G. Throws std::invalid_argument on a zero kernel.
DominantMode dominant_mode(const CoherenceKernel& ck);

/// Least-squares slope of −log|u| against |t − tc| over samples above
/// `floor` times the peak magnitude.
double fit_decay_rate(const std::vector<double>& times, const std::vector<double>& u, double tc,
                      double floor = 1e-3);

/// "t,t_prime,g" rows.
void write_coherence_csv(std::ostream& out, const CoherenceKernel& ck);
/// "t,u" rows.
void write_mode_csv(std::ostream& out, const std::vector<double>& times, const DominantMode& mode);

}  // namespace cvcond
