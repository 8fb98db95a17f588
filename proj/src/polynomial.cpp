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

#include "cvcond/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cvcond {

Polynomial2::Polynomial2(int degree) : deg_(degree) {
  if (degree < 0) throw std::invalid_argument("polynomial degree must be >= 0");
  c_.assign(static_cast<std::size_t>(deg_ + 1) * (deg_ + 1), 0.0);
}

Polynomial2 Polynomial2::constant(double c) {
  Polynomial2 p(0);
  p.coeff(0, 0) = c;
  return p;
}

Polynomial2 Polynomial2::linear(double cx, double cp) {
  Polynomial2 p(1);
  p.coeff(1, 0) = cx;
  p.coeff(0, 1) = cp;
  return p;
}

int Polynomial2::total_degree() const {
  int best = 0;
  for (int i = 0; i <= deg_; ++i)
    for (int j = 0; i + j <= deg_; ++j)
      if (coeff(i, j) != 0.0) best = std::max(best, i + j);
  return best;
}

double Polynomial2::coeff(int i, int j) const {
  if (i < 0 || j < 0 || i + j > deg_) return 0.0;
  return c_[static_cast<std::size_t>(i) * (deg_ + 1) + j];
}

double& Polynomial2::coeff(int i, int j) {
  if (i < 0 || j < 0 || i + j > deg_) throw std::out_of_range("monomial exceeds polynomial degree");
  return c_[static_cast<std::size_t>(i) * (deg_ + 1) + j];
}

double Polynomial2::operator()(double x, double p) const {
  // Horner in p for each power of x, then Horner in x.
  double acc = 0.0;
  for (int i = deg_; i >= 0; --i) {
    double row = 0.0;
    for (int j = deg_ - i; j >= 0; --j) row = row * p + coeff(i, j);
    acc = acc * x + row;
  }
  return acc;
}

Polynomial2 Polynomial2::widened(int degree) const {
  if (degree <= deg_) return *this;
  Polynomial2 out(degree);
  for (int i = 0; i <= deg_; ++i)
    for (int j = 0; i + j <= deg_; ++j) out.coeff(i, j) = coeff(i, j);
  return out;
}

Polynomial2& Polynomial2::operator+=(const Polynomial2& o) {
  if (o.deg_ > deg_) *this = widened(o.deg_);
  for (int i = 0; i <= o.deg_; ++i)
    for (int j = 0; i + j <= o.deg_; ++j) coeff(i, j) += o.coeff(i, j);
  return *this;
}

Polynomial2& Polynomial2::operator-=(const Polynomial2& o) {
  if (o.deg_ > deg_) *this = widened(o.deg_);
  for (int i = 0; i <= o.deg_; ++i)
    for (int j = 0; i + j <= o.deg_; ++j) coeff(i, j) -= o.coeff(i, j);
  return *this;
}

Polynomial2& Polynomial2::operator*=(double s) {
  for (double& v : c_) v *= s;
  return *this;
}

Polynomial2 operator*(const Polynomial2& a, const Polynomial2& b) {
  Polynomial2 out(a.deg_ + b.deg_);
  for (int i = 0; i <= a.deg_; ++i)
    for (int j = 0; i + j <= a.deg_; ++j) {
      const double ca = a.coeff(i, j);
      if (ca == 0.0) continue;
      for (int k = 0; k <= b.deg_; ++k)
        for (int l = 0; k + l <= b.deg_; ++l) out.coeff(i + k, j + l) += ca * b.coeff(k, l);
    }
  return out;
}

Polynomial2 Polynomial2::pow(int n) const {
  if (n < 0) throw std::invalid_argument("negative polynomial power");
  Polynomial2 out = constant(1.0);
  for (int k = 0; k < n; ++k) out = out * *this;
  return out;
}

bool Polynomial2::is_even(double tol) const {
  for (int i = 0; i <= deg_; ++i)
    for (int j = 0; i + j <= deg_; ++j)
      if ((i + j) % 2 == 1 && std::abs(coeff(i, j)) > tol) return false;
  return true;
}

double gaussian_moment(int i, int j, const Eigen::Matrix2d& cov) {
  if (i < 0 || j < 0) return 0.0;
  if ((i + j) % 2 == 1) return 0.0;
  if (i == 0 && j == 0) return 1.0;
  // Stein: E[x g] = Cxx E[∂x g] + Cxp E[∂p g] with g = x^{i-1} p^j.
  if (i > 0) {
    double v = 0.0;
    if (i >= 2) v += (i - 1) * cov(0, 0) * gaussian_moment(i - 2, j, cov);
    if (j >= 1) v += j * cov(0, 1) * gaussian_moment(i - 1, j - 1, cov);
    return v;
  }
  return (j - 1) * cov(1, 1) * gaussian_moment(0, j - 2, cov);
}

double gaussian_expectation(const Polynomial2& poly, const Eigen::Matrix2d& cov) {
  const int d = poly.degree();
  // Memo table keeps the recursion linear in the number of monomials.
  std::vector<double> m(static_cast<std::size_t>(d + 1) * (d + 1), 0.0);
  auto at = [&](int i, int j) -> double& { return m[static_cast<std::size_t>(i) * (d + 1) + j]; };
  for (int n = 0; n <= d; ++n) {
    for (int i = 0; i <= n; ++i) {
      const int j = n - i;
      double v = 0.0;
      if (n == 0) {
        v = 1.0;
      } else if (n % 2 == 0) {
        if (i > 0) {
          if (i >= 2) v += (i - 1) * cov(0, 0) * at(i - 2, j);
          if (j >= 1) v += j * cov(0, 1) * at(i - 1, j - 1);
        } else {
          v = (j - 1) * cov(1, 1) * at(0, j - 2);
        }
      }
      at(i, j) = v;
    }
  }
  double sum = 0.0;
  for (int i = 0; i <= d; ++i)
    for (int j = 0; i + j <= d; ++j) sum += poly.coeff(i, j) * at(i, j);
  return sum;
}

}  // namespace cvcond
