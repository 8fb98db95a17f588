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
#include <string>
#include <vector>

#include <Eigen/Core>

#include "cvcond/covariance.hpp"
#include "cvcond/polynomial.hpp"

namespace cvcond {

/// Normalized single-mode Gaussian core exp(−yᵀσ⁻¹y)/(π sqrt det σ); as a
/// probability density it has covariance σ/2.
double gaussian_core(const Eigen::Matrix2d& sigma, double x, double p);

/// poly(x, p) · gaussian_core(sigma, x, p)
struct GaussPolyTerm {
  Eigen::Matrix2d sigma = Eigen::Matrix2d::Identity();
  Polynomial2 poly = Polynomial2::constant(1.0);
};

/// Single-mode Wigner function W = norm · Σ_k poly_k · G_{σ_k}. Number and
/// click conditioning produce one term; on/off conditioning produces the
/// difference of two Gaussians.
class GaussPolyState {
 public:
  GaussPolyState() = default;
  explicit GaussPolyState(std::vector<GaussPolyTerm> terms, double norm = 1.0);

  static GaussPolyState gaussian(const Eigen::Matrix2d& sigma);

  const std::vector<GaussPolyTerm>& terms() const { return terms_; }
  double norm() const { return norm_; }

  /// ∫ W dx dp, evaluated analytically from Gaussian moments.
  double integral() const;
  /// Copy rescaled so that integral() == 1. Throws ImpossibleOutcome on zero mass.
  GaussPolyState normalized() const;

  double operator()(double x, double p) const;

  /// Single term whose polynomial is constant.
  bool is_gaussian() const;

 private:
  std::vector<GaussPolyTerm> terms_;
  double norm_ = 1.0;
};

/// Linear combination of states, term lists concatenated (norms folded in).
GaussPolyState combine(double wa, const GaussPolyState& a, double wb, const GaussPolyState& b);

/// W_V(y) = exp(−yᵀV⁻¹y) / (π² sqrt det V).
class TwoModeGaussianWigner {
 public:
  explicit TwoModeGaussianWigner(const CovarianceMatrix4& v);
  double operator()(const Eigen::Vector4d& y) const;
  const CovarianceMatrix4& covariance() const { return v_; }
  const Eigen::Matrix4d& inverse() const { return inv_; }

 private:
  CovarianceMatrix4 v_;
  Eigen::Matrix4d inv_;
  double prefactor_;
};

inline constexpr int kMaxFockNumber = 2;

/// Polynomial part of the Fock Wigner function: W_n = poly · exp(−x²−p²)/π.
Polynomial2 fock_polynomial(int n);

/// Wigner function of |n><n| for n in {0, 1, 2}; throws std::invalid_argument otherwise.
GaussPolyState fock_wigner(int n);

struct PartialIntegral {
  GaussPolyState state;  ///< unnormalized; state.integral() == mass
  double mass = 0.0;
};

/// ∫ dx1 dp1 weight(x1, p1) W_V(x1, p1, x2, p2) in closed form. Uses the
/// conditional law of (x1, p1) given (x2, p2): mean C V2⁻¹ y2 and covariance
/// S/2 with S = V1 − C V2⁻¹ Cᵀ, then takes the Gaussian moments of the
/// shifted weight. `weight` must have total degree <= 4.
PartialIntegral integrate_out_trigger(const TwoModeGaussianWigner& w, const Polynomial2& weight);

/// Tr(ρσ) = 2π ∬ W_ρ W_σ dx dp, closed form.
double overlap(const GaussPolyState& a, const GaussPolyState& b);
/// Overlap with the Fock state |n>, n in {0, 1, 2}.
double overlap(const GaussPolyState& s, int n);
/// Tr ρ².
double purity(const GaussPolyState& s);

struct GridSpec {
  double x_min = -5.0;
  double x_max = 5.0;
  double p_min = -5.0;
  double p_max = 5.0;
  int nx = 201;
  int np = 201;

  double dx() const { return (x_max - x_min) / (nx - 1); }
  double dp() const { return (p_max - p_min) / (np - 1); }
  double x(int i) const;
  double p(int j) const;
  void validate() const;
};

/// Parses "xmin,xmax,pmin,pmax,nx,np".
GridSpec parse_grid_spec(const std::string& text);

/// values(j, i) = W(x_i, p_j): rows indexed by p, columns by x.
struct WignerGrid {
  GridSpec spec;
  Eigen::MatrixXd values;
};

WignerGrid evaluate_grid(const GaussPolyState& s, const GridSpec& spec = {});

/// CSV with header "x,p,w", p-major rows, 9 significant digits.
void write_grid_csv(std::ostream& out, const WignerGrid& grid);

}  // namespace cvcond
