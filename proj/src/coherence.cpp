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

#include "cvcond/coherence.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace cvcond {

CoherenceKernel conditional_coherence(const CorrelationKernel& k, double tc, const CoherenceGridSpec& grid) {
  if (grid.points < 2 || !(grid.half_width > 0.0)) throw std::invalid_argument("coherence grid needs >= 2 points and a positive half width");
  CoherenceKernel ck;
  const int n = grid.points;
  ck.times.resize(n);
  for (int i = 0; i < n; ++i) ck.times[i] = tc - grid.half_width + 2.0 * grid.half_width * i / (n - 1);
  std::vector<double> aa(n), ada(n);
  for (int i = 0; i < n; ++i) {
    aa[i] = k.c_aa(ck.times[i] - tc);
    ada[i] = k.c_ada(ck.times[i] - tc);
  }
  const double flux = k.c_ada(0.0);
  ck.g.resize(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      const double v = aa[i] * aa[j] + ada[j] * ada[i] + flux * k.c_ada(ck.times[i] - ck.times[j]);
      ck.g(i, j) = v;
      ck.g(j, i) = v;
    }
  }
  return ck;
}

DominantMode dominant_mode(const CoherenceKernel& ck) {
  const double trace = ck.g.trace();
  if (!(ck.g.cwiseAbs().maxCoeff() > 0.0) || !(trace > 0.0)) throw std::invalid_argument("dominant_mode: coherence kernel is zero");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(ck.g);
  const int n = static_cast<int>(ck.g.rows());
  const double lead = es.eigenvalues()(n - 1);
  Eigen::VectorXd u = es.eigenvectors().col(n - 1);
  Eigen::Index peak = 0;
  u.cwiseAbs().maxCoeff(&peak);
  if (u(peak) < 0.0) u = -u;
  const double dt = ck.times.size() > 1 ? ck.times[1] - ck.times[0] : 1.0;
  u /= std::sqrt(u.squaredNorm() * dt);

  DominantMode out;
  out.samples.assign(u.data(), u.data() + u.size());
  out.eigenvalue = lead;
  out.dominance_ratio = lead / trace;
  return out;
}

double fit_decay_rate(const std::vector<double>& times, const std::vector<double>& u, double tc, double floor) {
  if (times.size() != u.size() || times.empty()) throw std::invalid_argument("fit_decay_rate: size mismatch");
  double peak = 0.0;
  for (double v : u) peak = std::max(peak, std::abs(v));
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (std::abs(u[i]) <= floor * peak) continue;
    const double x = std::abs(times[i] - tc);
    const double y = std::log(std::abs(u[i]));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  const double den = n * sxx - sx * sx;
  if (n < 2 || !(den > 0.0)) throw std::invalid_argument("fit_decay_rate: not enough samples above floor");
  return -(n * sxy - sx * sy) / den;
}

void write_coherence_csv(std::ostream& out, const CoherenceKernel& ck) {
  out << "t,t_prime,g\n";
  char buf[128];
  for (std::size_t i = 0; i < ck.times.size(); ++i)
    for (std::size_t j = 0; j < ck.times.size(); ++j) {
      std::snprintf(buf, sizeof buf, "%.9g,%.9g,%.9g\n", ck.times[i], ck.times[j], ck.g(i, j));
      out << buf;
    }
}

void write_mode_csv(std::ostream& out, const std::vector<double>& times, const DominantMode& mode) {
  out << "t,u\n";
  char buf[96];
  for (std::size_t i = 0; i < times.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.9g,%.9g\n", times[i], mode.samples[i]);
    out << buf;
  }
}

}  // namespace cvcond
