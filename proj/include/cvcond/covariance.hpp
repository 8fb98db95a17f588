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

#include <array>
#include <iosfwd>
#include <string>

#include <Eigen/Core>

#include "cvcond/second_moments.hpp"

namespace cvcond {

/// Covariance of (x1, p1, x2, p2) with V_ij = <y_i y_j + y_j y_i>, so the
/// vacuum is the identity. Symmetric by construction.
class CovarianceMatrix4 {
 public:
  CovarianceMatrix4() : v_(Eigen::Matrix4d::Identity()) {}
  /// Throws std::invalid_argument unless `v` is finite and symmetric to 1e-12
  /// (relative to its largest entry); the stored matrix is exactly symmetric.
  explicit CovarianceMatrix4(const Eigen::Matrix4d& v);

  static CovarianceMatrix4 identity() { return {}; }

  const Eigen::Matrix4d& matrix() const { return v_; }
  double operator()(int i, int j) const { return v_(i, j); }

  Eigen::Matrix2d trigger_block() const { return v_.topLeftCorner<2, 2>(); }
  Eigen::Matrix2d output_block() const { return v_.bottomRightCorner<2, 2>(); }
  Eigen::Matrix2d cross_block() const { return v_.topRightCorner<2, 2>(); }

 private:
  Eigen::Matrix4d v_;
};

struct PhysicalityReport {
  double min_eigenvalue = 0.0;              ///< smallest eigenvalue of V + iΩ
  std::array<double, 2> symplectic{};       ///< ascending
  double purity = 0.0;                      ///< 1/sqrt(det V)
  bool physical = false;                    ///< min_eigenvalue >= -kPhysicalityTolerance
};

inline constexpr double kPhysicalityTolerance = 1e-9;

PhysicalityReport physicality_check(const CovarianceMatrix4& v);

/// Throws UnphysicalState naming the smallest symplectic eigenvalue.
void require_physical(const CovarianceMatrix4& v);

/// V_xx = δ + 2(A + B), V_pp = δ + 2(B − A), x–p blocks zero.
CovarianceMatrix4 assemble(const SecondMoments& m);

/// Loss fractions eta in [0, 1] and extra noise xi >= 0 per mode.
struct LossParams {
  double eta1 = 0.0;
  double eta2 = 0.0;
  double xi1 = 0.0;
  double xi2 = 0.0;
};

/// V → L V L + N.
CovarianceMatrix4 apply_loss(const CovarianceMatrix4& v, const LossParams& p);

/// Four lines of four %.17g numbers.
std::string format_covariance(const CovarianceMatrix4& v);
CovarianceMatrix4 parse_covariance(std::istream& in);

}  // namespace cvcond
