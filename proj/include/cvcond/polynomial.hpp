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

#include <vector>

#include <Eigen/Core>

namespace cvcond {

/// Dense bivariate polynomial Σ c(i,j) x^i p^j with i + j <= degree().
class Polynomial2 {
 public:
  explicit Polynomial2(int degree = 0);

  static Polynomial2 constant(double c);
  /// cx·x + cp·p
  static Polynomial2 linear(double cx, double cp);

  int degree() const { return deg_; }
  /// Highest total degree carrying a nonzero coefficient (0 for the zero polynomial).
  int total_degree() const;

  double coeff(int i, int j) const;
  double& coeff(int i, int j);

  double operator()(double x, double p) const;

  Polynomial2& operator+=(const Polynomial2& o);
  Polynomial2& operator-=(const Polynomial2& o);
  Polynomial2& operator*=(double s);

  friend Polynomial2 operator+(Polynomial2 a, const Polynomial2& b) { return a += b; }
  friend Polynomial2 operator-(Polynomial2 a, const Polynomial2& b) { return a -= b; }
  friend Polynomial2 operator*(Polynomial2 a, double s) { return a *= s; }
  friend Polynomial2 operator*(double s, Polynomial2 a) { return a *= s; }
  friend Polynomial2 operator*(const Polynomial2& a, const Polynomial2& b);

  /// p^n by repeated multiplication.
  Polynomial2 pow(int n) const;

  /// True when every monomial of odd total degree vanishes.
  bool is_even(double tol = 0.0) const;

 private:
  Polynomial2 widened(int degree) const;

  int deg_;
  std::vector<double> c_;  // (deg_+1)^2, row i = power of x
};

/// E[x^i p^j] for a zero-mean normal vector with covariance `cov`, by
/// Isserlis' theorem in its recursive (Stein) form.
double gaussian_moment(int i, int j, const Eigen::Matrix2d& cov);

/// E[poly(x, p)] for a zero-mean normal vector with covariance `cov`.
double gaussian_expectation(const Polynomial2& poly, const Eigen::Matrix2d& cov);

}  // namespace cvcond
