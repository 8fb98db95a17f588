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

#include "cvcond/gauss_poly_wigner.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>

#include "cvcond/errors.hpp"

namespace cvcond {

namespace {

constexpr double kPi = std::numbers::pi;

bool positive_definite(const Eigen::Matrix2d& m) {
  return m(0, 0) > 0.0 && m.determinant() > 0.0;
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

double term_mass(const GaussPolyTerm& t) { return gaussian_expectation(t.poly, 0.5 * t.sigma); }

}  // namespace

double gaussian_core(const Eigen::Matrix2d& sigma, double x, double p) {
  const double det = sigma.determinant();
  // σ⁻¹ for a 2×2 symmetric matrix.
  const double q = (sigma(1, 1) * x * x - 2.0 * sigma(0, 1) * x * p + sigma(0, 0) * p * p) / det;
  return std::exp(-q) / (kPi * std::sqrt(det));
}

GaussPolyState::GaussPolyState(std::vector<GaussPolyTerm> terms, double norm)
    : terms_(std::move(terms)), norm_(norm) {
  for (const auto& t : terms_) {
    if (!positive_definite(t.sigma)) throw std::invalid_argument("Gaussian core covariance must be positive definite");
  }
}

GaussPolyState GaussPolyState::gaussian(const Eigen::Matrix2d& sigma) {
  return GaussPolyState({GaussPolyTerm{sigma, Polynomial2::constant(1.0)}});
}

double GaussPolyState::integral() const {
  double m = 0.0;
  for (const auto& t : terms_) m += term_mass(t);
  return norm_ * m;
}

GaussPolyState GaussPolyState::normalized() const {
  const double m = integral();
  if (!(std::abs(m) > 0.0) || !std::isfinite(m)) throw ImpossibleOutcome("cannot normalize a state of zero mass");
  GaussPolyState out = *this;
  out.norm_ = norm_ / m;
  return out;
}

double GaussPolyState::operator()(double x, double p) const {
  double v = 0.0;
  for (const auto& t : terms_) v += t.poly(x, p) * gaussian_core(t.sigma, x, p);
  return norm_ * v;
}

bool GaussPolyState::is_gaussian() const { return terms_.size() == 1 && terms_[0].poly.total_degree() == 0; }

GaussPolyState combine(double wa, const GaussPolyState& a, double wb, const GaussPolyState& b) {
  std::vector<GaussPolyTerm> terms;
  for (const auto& t : a.terms()) terms.push_back({t.sigma, t.poly * (wa * a.norm())});
  for (const auto& t : b.terms()) terms.push_back({t.sigma, t.poly * (wb * b.norm())});
  return GaussPolyState(std::move(terms));
}

TwoModeGaussianWigner::TwoModeGaussianWigner(const CovarianceMatrix4& v) : v_(v) {
  const double det = v.matrix().determinant();
  if (!(det > 0.0)) throw std::invalid_argument("two-mode covariance must have positive determinant");
  inv_ = v.matrix().inverse();
  prefactor_ = 1.0 / (kPi * kPi * std::sqrt(det));
}

double TwoModeGaussianWigner::operator()(const Eigen::Vector4d& y) const {
  return prefactor_ * std::exp(-y.dot(inv_ * y));
}

Polynomial2 fock_polynomial(int n) {
  Polynomial2 p(2 * std::max(n, 0));
  switch (n) {
    case 0:
      p.coeff(0, 0) = 1.0;
      break;
    case 1:
      p.coeff(0, 0) = -1.0;
      p.coeff(2, 0) = 2.0;
      p.coeff(0, 2) = 2.0;
      break;
    case 2:
      // L_2(2r²) = 1 − 4r² + 2r⁴
      p.coeff(0, 0) = 1.0;
      p.coeff(2, 0) = -4.0;
      p.coeff(0, 2) = -4.0;
      p.coeff(4, 0) = 2.0;
      p.coeff(2, 2) = 4.0;
      p.coeff(0, 4) = 2.0;
      break;
    default:
      throw std::invalid_argument("Fock Wigner functions are provided for n in {0,1,2}, got n=" +
                                  std::to_string(n));
  }
  return p;
}

GaussPolyState fock_wigner(int n) {
  return GaussPolyState({GaussPolyTerm{Eigen::Matrix2d::Identity(), fock_polynomial(n)}});
}

PartialIntegral integrate_out_trigger(const TwoModeGaussianWigner& w, const Polynomial2& weight) {
  if (weight.total_degree() > 4) throw std::invalid_argument("trigger weight must have total degree <= 4");
  const CovarianceMatrix4& v = w.covariance();
  const Eigen::Matrix2d v1 = v.trigger_block();
  const Eigen::Matrix2d v2 = v.output_block();
  const Eigen::Matrix2d c = v.cross_block();
  if (!positive_definite(v1)) throw std::invalid_argument("singular trigger block in covariance matrix");
  if (!positive_definite(v2)) throw std::invalid_argument("singular output block in covariance matrix");

  const Eigen::Matrix2d v2inv = v2.inverse();
  const Eigen::Matrix2d gain = c * v2inv;
  Eigen::Matrix2d schur = v1 - gain * c.transpose();
  schur = 0.5 * (schur + schur.transpose());
  const Eigen::Matrix2d zcov = 0.5 * schur;

  const Polynomial2 m1 = Polynomial2::linear(gain(0, 0), gain(0, 1));
  const Polynomial2 m2 = Polynomial2::linear(gain(1, 0), gain(1, 1));

  Polynomial2 out(weight.degree());
  const int d = weight.degree();
  for (int a = 0; a <= d; ++a) {
    for (int b = 0; a + b <= d; ++b) {
      const double wab = weight.coeff(a, b);
      if (wab == 0.0) continue;
      // E[(m1 + z1)^a (m2 + z2)^b]
      for (int k = 0; k <= a; ++k) {
        for (int l = 0; l <= b; ++l) {
          const double zm = gaussian_moment(k, l, zcov);
          if (zm == 0.0) continue;
          const double coef = wab * binomial(a, k) * binomial(b, l) * zm;
          out += (m1.pow(a - k) * m2.pow(b - l)) * coef;
        }
      }
    }
  }
  PartialIntegral res;
  res.state = GaussPolyState({GaussPolyTerm{v2, std::move(out)}});
  res.mass = res.state.integral();
  return res;
}

double overlap(const GaussPolyState& a, const GaussPolyState& b) {
  double sum = 0.0;
  for (const auto& ta : a.terms()) {
    const Eigen::Matrix2d ia = ta.sigma.inverse();
    for (const auto& tb : b.terms()) {
      const Eigen::Matrix2d sig = (ia + tb.sigma.inverse()).inverse();
      const double pref = std::sqrt(sig.determinant() / (ta.sigma.determinant() * tb.sigma.determinant())) / kPi;
      sum += pref * gaussian_expectation(ta.poly * tb.poly, 0.5 * sig);
    }
  }
  return 2.0 * kPi * a.norm() * b.norm() * sum;
}

double overlap(const GaussPolyState& s, int n) { return overlap(s, fock_wigner(n)); }

double purity(const GaussPolyState& s) { return overlap(s, s); }

double GridSpec::x(int i) const {
  if (2 * i == nx - 1) return 0.5 * (x_min + x_max);
  return x_min + (x_max - x_min) * static_cast<double>(i) / (nx - 1);
}

double GridSpec::p(int j) const {
  if (2 * j == np - 1) return 0.5 * (p_min + p_max);
  return p_min + (p_max - p_min) * static_cast<double>(j) / (np - 1);
}

void GridSpec::validate() const {
  for (double v : {x_min, x_max, p_min, p_max})
    if (!std::isfinite(v)) throw std::invalid_argument("grid ranges must be finite");
  if (nx < 2 || np < 2) throw std::invalid_argument("grid needs at least 2 points per axis");
  if (!(x_max > x_min) || !(p_max > p_min)) throw std::invalid_argument("grid ranges must be increasing");
}

GridSpec parse_grid_spec(const std::string& text) {
  std::string s = text;
  for (char& ch : s)
    if (ch == ',') ch = ' ';
  std::istringstream in(s);
  GridSpec g;
  if (!(in >> g.x_min >> g.x_max >> g.p_min >> g.p_max >> g.nx >> g.np))
    throw std::invalid_argument("grid spec must be \"xmin,xmax,pmin,pmax,nx,np\", got \"" + text + "\"");
  std::string rest;
  if (in >> rest) throw std::invalid_argument("trailing text in grid spec \"" + text + "\"");
  g.validate();
  return g;
}

WignerGrid evaluate_grid(const GaussPolyState& s, const GridSpec& spec) {
  spec.validate();
  WignerGrid g{spec, Eigen::MatrixXd(spec.np, spec.nx)};
  for (int j = 0; j < spec.np; ++j)
    for (int i = 0; i < spec.nx; ++i) g.values(j, i) = s(spec.x(i), spec.p(j));
  return g;
}

void write_grid_csv(std::ostream& out, const WignerGrid& grid) {
  out << "x,p,w\n";
  char buf[128];
  for (int j = 0; j < grid.spec.np; ++j) {
    for (int i = 0; i < grid.spec.nx; ++i) {
      std::snprintf(buf, sizeof buf, "%.9g,%.9g,%.9g\n", grid.spec.x(i), grid.spec.p(j), grid.values(j, i));
      out << buf;
    }
  }
}

}  // namespace cvcond
