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

#include <functional>

#include "cvcond/covariance.hpp"

namespace cvcond {

/// Single-resonance degenerate OPO below threshold. Rates are in units of the
/// output-mirror leakage rate gamma1, which is conventionally 1.
struct OpoParams {
  double gamma1 = 1.0;
  double gamma2 = 0.0;
  double epsilon = 0.0;

  double lambda() const { return 0.5 * (gamma1 + gamma2) + epsilon; }
  double mu() const { return 0.5 * (gamma1 + gamma2) - epsilon; }
};

/// Stationary two-time correlations of a real Gaussian cw field, normalized to
/// delta-correlated commutators. Both kernels depend on tau = t' - t only.
struct CorrelationKernel {
  std::function<double(double)> c_aa;   ///< <a(t) a(t+tau)>
  std::function<double(double)> c_ada;  ///< <a^dag(t) a(t+tau)>
  double decay_rate = 0.0;              ///< slowest exponential rate
  double fastest_rate = 0.0;            ///< fastest exponential rate (window rule)
};

/// Validates `p` and returns the OPO output kernel. Throws ThresholdError
/// when mu <= 0 and std::invalid_argument on negative rates.
CorrelationKernel opo_kernel(const OpoParams& p);

/// Two-mode covariance supplied directly, bypassing the mode quadrature.
struct DirectTwoModeSource {
  CovarianceMatrix4 v;
};

/// Two-mode squeezed vacuum with squeezing parameter r.
DirectTwoModeSource tmsv_covariance(double r);

/// Wraps an arbitrary covariance after a physicality check.
DirectTwoModeSource direct_source(const CovarianceMatrix4& v);

}  // namespace cvcond
