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

#include "cvcond/source_models.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "cvcond/errors.hpp"

namespace cvcond {

CorrelationKernel opo_kernel(const OpoParams& p) {
  if (!(p.gamma1 > 0.0) || !(p.gamma2 >= 0.0) || !(p.epsilon >= 0.0) || !std::isfinite(p.gamma1) ||
      !std::isfinite(p.gamma2) || !std::isfinite(p.epsilon)) {
    std::ostringstream os;
    os << "invalid OPO parameters: gamma1=" << p.gamma1 << " gamma2=" << p.gamma2
       << " epsilon=" << p.epsilon << " (need gamma1>0, gamma2>=0, epsilon>=0)";
    throw std::invalid_argument(os.str());
  }
  const double lam = p.lambda();
  const double mu = p.mu();
  if (!(mu > 0.0)) {
    std::ostringstream os;
    os << "OPO at or above threshold: mu = (gamma1+gamma2)/2 - epsilon = " << mu
       << " with gamma1=" << p.gamma1 << " gamma2=" << p.gamma2 << " epsilon=" << p.epsilon;
    throw ThresholdError(os.str());
  }
  const double k = p.gamma1 / (p.gamma1 + p.gamma2) * (lam * lam - mu * mu) / 4.0;
  const double cm = k / (2.0 * mu);
  const double cl = k / (2.0 * lam);
  CorrelationKernel out;
  out.c_aa = [=](double tau) {
    const double a = std::abs(tau);
    return cm * std::exp(-mu * a) + cl * std::exp(-lam * a);
  };
  out.c_ada = [=](double tau) {
    const double a = std::abs(tau);
    return cm * std::exp(-mu * a) - cl * std::exp(-lam * a);
  };
  out.decay_rate = mu;
  out.fastest_rate = lam;
  return out;
}

DirectTwoModeSource tmsv_covariance(double r) {
  const double c = std::cosh(2.0 * r);
  const double s = std::sinh(2.0 * r);
  Eigen::Matrix4d v;
  v << c, 0, s, 0,
       0, c, 0, -s,
       s, 0, c, 0,
       0, -s, 0, c;
  return {CovarianceMatrix4(v)};
}

DirectTwoModeSource direct_source(const CovarianceMatrix4& v) {
  require_physical(v);
  return {v};
}

}  // namespace cvcond
