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

#include "cvcond/conditioning.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>

#include "cvcond/errors.hpp"
#include "cvcond/quadrature.hpp"

namespace cvcond {

namespace {

void require_possible(double p, const std::string& what) {
  if (!(p > kImpossibleProbability) || !std::isfinite(p)) {
    std::ostringstream os;
    os << "impossible outcome: " << what << " has probability " << p;
    throw ImpossibleOutcome(os.str());
  }
}

}  // namespace

std::string to_string(Measurement m) {
  switch (m) {
    case Measurement::number:
      return "number";
    case Measurement::on:
      return "on";
    case Measurement::click:
      return "click";
    case Measurement::vacuum:
      return "vacuum";
  }
  return "?";
}

Measurement parse_measurement(const std::string& name) {
  if (name == "number") return Measurement::number;
  if (name == "on") return Measurement::on;
  if (name == "click") return Measurement::click;
  if (name == "vacuum") return Measurement::vacuum;
  throw std::invalid_argument("unknown measurement '" + name + "' (expected number|on|click|vacuum)");
}

GaussPolyState output_marginal(const CovarianceMatrix4& v) { return GaussPolyState::gaussian(v.output_block()); }

ConditionResult condition_on_number(const CovarianceMatrix4& v, int n) {
  const Polynomial2 poly = fock_polynomial(n);
  // W_V · exp(−x1² − p1²) = sqrt(det V' / det V) · W_V' with V'⁻¹ = V⁻¹ + diag(1,1,0,0).
  Eigen::Matrix4d prec = v.matrix().inverse();
  prec(0, 0) += 1.0;
  prec(1, 1) += 1.0;
  Eigen::Matrix4d vp = prec.inverse();
  vp = 0.5 * (vp + vp.transpose());
  const double factor = std::sqrt(vp.determinant() / v.matrix().determinant());
  const PartialIntegral part = integrate_out_trigger(TwoModeGaussianWigner(CovarianceMatrix4(vp)), poly);
  // Tr(ρ |n><n|) = 2π ∫ W_V W_n, and W_n carries 1/π.
  const double prob = 2.0 * factor * part.mass;
  require_possible(prob, "trigger photon number n=" + std::to_string(n));
  return {part.state.normalized(), prob};
}

ConditionResult vacuum_projection(const CovarianceMatrix4& v) { return condition_on_number(v, 0); }

ConditionResult condition_on_on(const CovarianceMatrix4& v) {
  const ConditionResult vac = condition_on_number(v, 0);
  const double p_on = 1.0 - vac.probability;
  require_possible(p_on, "on/off detector 'on'");
  const GaussPolyState mixed = combine(1.0 / p_on, output_marginal(v), -vac.probability / p_on, vac.state);
  return {mixed, p_on};
}

double click_probability(const CovarianceMatrix4& v) { return 0.25 * (v(0, 0) + v(1, 1) - 2.0); }

ConditionResult condition_on_click(const CovarianceMatrix4& v) {
  const double prob = click_probability(v);
  require_possible(prob, "click (trigger occupation)");
  Polynomial2 weight(2);
  weight.coeff(0, 0) = -0.5;
  weight.coeff(2, 0) = 0.5;
  weight.coeff(0, 2) = 0.5;
  const PartialIntegral part = integrate_out_trigger(TwoModeGaussianWigner(v), weight);
  return {part.state.normalized(), prob};
}

ConditionResult condition(const CovarianceMatrix4& v, Measurement m, int n) {
  switch (m) {
    case Measurement::number:
      return condition_on_number(v, n);
    case Measurement::on:
      return condition_on_on(v);
    case Measurement::click:
      return condition_on_click(v);
    case Measurement::vacuum:
      return vacuum_projection(v);
  }
  throw std::invalid_argument("unknown measurement");
}

double click_wigner_operator_form(const CovarianceMatrix4& v, double x2, double p2, const ClickOperatorOptions& opt) {
  const double prob = click_probability(v);
  require_possible(prob, "click (trigger occupation)");
  const TwoModeGaussianWigner w(v);
  const Eigen::Matrix4d& q = w.inverse();

  // Box around the maximum of W_V over (x1, p1) at fixed (x2, p2):
  // ∂/∂y1 of yᵀQy vanishes at y1 = −Q11⁻¹ Q12 y2.
  const Eigen::Matrix2d q11 = q.topLeftCorner<2, 2>();
  const Eigen::Vector2d y2(x2, p2);
  const Eigen::Vector2d center = -q11.inverse() * (q.topRightCorner<2, 2>() * y2);
  // Conditional covariance is (2 Q11)⁻¹.
  const Eigen::Matrix2d ccov = (2.0 * q11).inverse();
  const double sx = std::sqrt(ccov(0, 0)) * opt.half_width_sigmas;
  const double sp = std::sqrt(ccov(1, 1)) * opt.half_width_sigmas;

  const GaussLegendreRule& rule = gauss_legendre(opt.order);
  auto nodes = [&](double c, double half) {
    std::vector<std::pair<double, double>> out;
    const double h = 2.0 * half / opt.panels;
    for (int k = 0; k < opt.panels; ++k) {
      const double a = c - half + k * h;
      for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        out.emplace_back(a + 0.5 * h * (rule.nodes[i] + 1.0), 0.5 * h * rule.weights[i]);
    }
    return out;
  };
  const auto xs = nodes(center(0), sx);
  const auto ps = nodes(center(1), sp);

  double sum = 0.0;
  for (const auto& [x1, wx] : xs) {
    for (const auto& [p1, wp] : ps) {
      const Eigen::Vector4d y(x1, p1, x2, p2);
      const double wv = w(y);
      const Eigen::Vector4d g = q * y;
      // ∂_k W = −2 g_k W,  ∂²_k W = (4 g_k² − 2 Q_kk) W
      const double lap = 4.0 * (g(0) * g(0) + g(1) * g(1)) - 2.0 * (q(0, 0) + q(1, 1));
      const double euler = -2.0 * (x1 * g(0) + p1 * g(1));
      const double op = 0.5 * (x1 * x1 + p1 * p1 + 0.25 * lap + euler + 1.0);
      sum += wx * wp * op * wv;
    }
  }
  return sum / prob;
}

}  // namespace cvcond
