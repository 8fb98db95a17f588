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

#include "cvcond/covariance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "cvcond/errors.hpp"

namespace cvcond {

namespace {

Eigen::Matrix4d symplectic_form() {
  Eigen::Matrix4d om = Eigen::Matrix4d::Zero();
  om(0, 1) = 1.0;
  om(1, 0) = -1.0;
  om(2, 3) = 1.0;
  om(3, 2) = -1.0;
  return om;
}

}  // namespace

CovarianceMatrix4::CovarianceMatrix4(const Eigen::Matrix4d& v) {
  if (!v.allFinite()) throw std::invalid_argument("covariance matrix has non-finite entries");
  const double scale = std::max(1.0, v.cwiseAbs().maxCoeff());
  const double asym = (v - v.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12 * scale) {
    std::ostringstream os;
    os << "covariance matrix is not symmetric (max |V - V^T| = " << asym << ")";
    throw std::invalid_argument(os.str());
  }
  v_ = 0.5 * (v + v.transpose());
}

PhysicalityReport physicality_check(const CovarianceMatrix4& v) {
  PhysicalityReport rep;
  const Eigen::Matrix4d om = symplectic_form();
  Eigen::Matrix4cd h = v.matrix().cast<std::complex<double>>();
  h += std::complex<double>(0.0, 1.0) * om.cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> herm(h, Eigen::EigenvaluesOnly);
  rep.min_eigenvalue = herm.eigenvalues().minCoeff();

  Eigen::EigenSolver<Eigen::Matrix4d> es(om * v.matrix(), false);
  std::array<double, 4> nu{};
  for (int i = 0; i < 4; ++i) nu[i] = std::abs(es.eigenvalues()[i].imag());
  std::sort(nu.begin(), nu.end());
  rep.symplectic = {0.5 * (nu[0] + nu[1]), 0.5 * (nu[2] + nu[3])};

  const double det = v.matrix().determinant();
  rep.purity = det > 0.0 ? 1.0 / std::sqrt(det) : 0.0;
  rep.physical = det > 0.0 && rep.min_eigenvalue >= -kPhysicalityTolerance;
  return rep;
}

void require_physical(const CovarianceMatrix4& v) {
  const PhysicalityReport rep = physicality_check(v);
  if (!rep.physical) {
    std::ostringstream os;
    os << "unphysical covariance matrix: smallest symplectic eigenvalue " << rep.symplectic[0]
       << " (< 1), min eig(V + i Omega) = " << rep.min_eigenvalue;
    throw UnphysicalState(os.str(), rep.min_eigenvalue);
  }
}

CovarianceMatrix4 assemble(const SecondMoments& m) {
  Eigen::Matrix4d v = Eigen::Matrix4d::Zero();
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const double delta = i == j ? 1.0 : 0.0;
      // Symmetrize the cross moments: <a_1 a_2> and <a_2 a_1> coincide for
      // commuting modes, and b is symmetric for real mode functions.
      const double a = 0.5 * (m.a(i, j) + m.a(j, i));
      const double b = 0.5 * (m.b(i, j) + m.b(j, i));
      v(2 * i, 2 * j) = delta + 2.0 * (a + b);
      v(2 * i + 1, 2 * j + 1) = delta + 2.0 * (b - a);
    }
  }
  CovarianceMatrix4 out(v);
  require_physical(out);
  return out;
}

CovarianceMatrix4 apply_loss(const CovarianceMatrix4& v, const LossParams& p) {
  auto in_unit = [](double e) { return e >= 0.0 && e <= 1.0; };
  if (!in_unit(p.eta1) || !in_unit(p.eta2)) {
    std::ostringstream os;
    os << "loss fractions must lie in [0,1]: eta1=" << p.eta1 << " eta2=" << p.eta2;
    throw std::invalid_argument(os.str());
  }
  if (!(p.xi1 >= 0.0) || !(p.xi2 >= 0.0)) {
    std::ostringstream os;
    os << "added noise must be >= 0: xi1=" << p.xi1 << " xi2=" << p.xi2;
    throw std::invalid_argument(os.str());
  }
  const double t1 = std::sqrt(1.0 - p.eta1);
  const double t2 = std::sqrt(1.0 - p.eta2);
  const Eigen::Vector4d l(t1, t1, t2, t2);
  const Eigen::Vector4d eta(p.eta1, p.eta1, p.eta2, p.eta2);
  const Eigen::Vector4d xi(p.xi1, p.xi1, p.xi2, p.xi2);
  Eigen::Matrix4d out = l.asDiagonal() * v.matrix() * l.asDiagonal();
  // (1 − η)V_ii + η written as V_ii − η(V_ii − 1): exact on vacuum and for η = 0.
  for (int i = 0; i < 4; ++i) out(i, i) = v(i, i) - eta(i) * (v(i, i) - 1.0) + xi(i);
  return CovarianceMatrix4(out);
}

std::string format_covariance(const CovarianceMatrix4& v) {
  std::string s;
  char buf[64];
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", v(i, j));
      s += buf;
      s += j == 3 ? '\n' : ' ';
    }
  }
  return s;
}

CovarianceMatrix4 parse_covariance(std::istream& in) {
  std::vector<double> vals;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string tok;
    int count = 0;
    while (ls >> tok) {
      char* end = nullptr;
      const double x = std::strtod(tok.c_str(), &end);
      if (end == tok.c_str() || *end != '\0')
        throw std::invalid_argument("covariance file line " + std::to_string(lineno) +
                                    ": not a number: '" + tok + "'");
      vals.push_back(x);
      ++count;
    }
    if (count != 0 && count != 4)
      throw std::invalid_argument("covariance file line " + std::to_string(lineno) +
                                  ": expected 4 columns, got " + std::to_string(count));
  }
  if (vals.size() != 16)
    throw std::invalid_argument("covariance file: expected 16 entries, got " +
                                std::to_string(vals.size()));
  Eigen::Matrix4d m;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = vals[4 * i + j];
  return CovarianceMatrix4(m);
}

}  // namespace cvcond
