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

#include "cvcond/mode_calculus.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>

namespace cvcond {

namespace {

double l2_norm_squared(const ModeFunction& f) {
  const std::vector<double> br = merge_breakpoints(f.t_lo, f.t_hi, f.breakpoints);
  QuadratureOptions opt;
  opt.rel_tol = 1e-13;
  opt.abs_tol = 1e-300;
  return integrate_piecewise<1>([&](double t) { return std::array<double, 1>{f(t) * f(t)}; }, br, opt)[0];
}

void check_finite(double x, const char* name) {
  if (!std::isfinite(x)) throw std::invalid_argument(std::string(name) + " must be finite");
}

}  // namespace

double TriggerModeSpec::effective_tap() const { return tap_amplitude * std::sqrt(detector_efficiency); }

bool window_is_collapsed(const TriggerModeSpec& spec, double source_rate, WindowTreatment window) {
  if (!spec.filter_width) return false;
  switch (window) {
    case WindowTreatment::collapsed:
      return true;
    case WindowTreatment::explicit_:
      return false;
    case WindowTreatment::automatic:
      break;
  }
  return spec.window_width * std::max(source_rate, *spec.filter_width) < 0.1;
}

ModeFunction build_trigger_mode(const TriggerModeSpec& spec, double source_rate, WindowTreatment window) {
  check_finite(spec.tap_amplitude, "tap_amplitude");
  check_finite(spec.window_center, "window_center");
  check_finite(spec.window_width, "window_width");
  if (std::abs(spec.tap_amplitude) > 1.0)
    throw std::invalid_argument("tap_amplitude must satisfy |tau| <= 1");
  if (!(spec.window_width > 0.0)) throw std::invalid_argument("window_width dt must be > 0");
  if (!(spec.detector_efficiency >= 0.0 && spec.detector_efficiency <= 1.0))
    throw std::invalid_argument("detector_efficiency must lie in [0,1]");
  if (spec.filter_width && !(*spec.filter_width > 0.0 && std::isfinite(*spec.filter_width)))
    throw std::invalid_argument("filter_width must be > 0 when a filter is present");

  const double tau = spec.effective_tap();
  const double tc = spec.window_center;
  const double dt = spec.window_width;
  ModeFunction f;

  if (!spec.filter_width) {
    const double h = tau / std::sqrt(dt);
    f.amplitude = [h](double) { return h; };
    f.t_lo = tc - 0.5 * dt;
    f.t_hi = tc + 0.5 * dt;
  } else if (window_is_collapsed(spec, source_rate, window)) {
    const double g = *spec.filter_width;
    const double c = tau * std::sqrt(dt) * g;
    f.amplitude = [=](double s) { return s > tc ? 0.0 : c * std::exp(-g * (tc - s)); };
    f.t_lo = tc - kTruncationDecayLengths / g;
    f.t_hi = tc;
  } else {
    // ∫ h(t) τγ e^{−γ(t−s)} θ(t−s) dt over the window, h = 1/sqrt(dt).
    const double g = *spec.filter_width;
    const double c = tau / std::sqrt(dt);
    const double w_lo = tc - 0.5 * dt;
    const double w_hi = tc + 0.5 * dt;
    f.amplitude = [=](double s) {
      if (s > w_hi) return 0.0;
      const double lo = std::max(s, w_lo);
      return c * (std::exp(-g * (lo - s)) - std::exp(-g * (w_hi - s)));
    };
    f.t_lo = w_lo - kTruncationDecayLengths / g;
    f.t_hi = w_hi;
    f.breakpoints = {w_lo};
  }
  f.source_weight = l2_norm_squared(f);
  return f;
}

ModeFunction build_output_mode(const OutputModeSpec& spec) {
  check_finite(spec.center, "output center");
  check_finite(spec.reflect_amplitude, "reflect_amplitude");
  if (std::abs(spec.reflect_amplitude) > 1.0)
    throw std::invalid_argument("reflect_amplitude must satisfy |r| <= 1");
  const double tc = spec.center;
  const double r = spec.reflect_amplitude;
  ModeFunction f;

  if (const auto* e = std::get_if<ExponentialEnvelope>(&spec.envelope)) {
    const double a = e->alpha;
    if (!(a > 0.0) || !std::isfinite(a)) throw std::invalid_argument("envelope decay alpha must be > 0");
    const double c = r * std::sqrt(a);
    f.amplitude = [=](double t) { return c * std::exp(-a * std::abs(t - tc)); };
    f.t_lo = tc - kTruncationDecayLengths / a;
    f.t_hi = tc + kTruncationDecayLengths / a;
    f.breakpoints = {tc};
    f.source_weight = l2_norm_squared(f);
    return f;
  }

  const auto& tab = std::get<TabulatedEnvelope>(spec.envelope);
  if (tab.times.size() != tab.values.size() || tab.times.size() < 2)
    throw std::invalid_argument("tabulated envelope needs at least two (t, u) samples");
  for (std::size_t i = 0; i < tab.times.size(); ++i) {
    if (!std::isfinite(tab.times[i]) || !std::isfinite(tab.values[i]))
      throw std::invalid_argument("tabulated envelope has non-finite values at row " + std::to_string(i + 1));
    if (i > 0 && !(tab.times[i] > tab.times[i - 1]))
      throw std::invalid_argument("tabulated envelope times must be strictly increasing");
  }
  // Exact L² norm of the piecewise-linear interpolant.
  double norm2 = 0.0;
  for (std::size_t i = 0; i + 1 < tab.times.size(); ++i) {
    const double u0 = tab.values[i], u1 = tab.values[i + 1];
    norm2 += (tab.times[i + 1] - tab.times[i]) * (u0 * u0 + u0 * u1 + u1 * u1) / 3.0;
  }
  if (!(norm2 > 0.0)) throw std::invalid_argument("tabulated envelope is identically zero");
  const double scale = r / std::sqrt(norm2);
  auto times = std::make_shared<std::vector<double>>(tab.times);
  auto values = std::make_shared<std::vector<double>>(tab.values);
  f.amplitude = [=](double t) {
    const double x = t - tc;
    const auto& ts = *times;
    if (x < ts.front() || x > ts.back()) return 0.0;
    auto it = std::upper_bound(ts.begin(), ts.end(), x);
    std::size_t i = it == ts.end() ? ts.size() - 2 : static_cast<std::size_t>(it - ts.begin()) - 1;
    const double w = (x - ts[i]) / (ts[i + 1] - ts[i]);
    return scale * ((1.0 - w) * (*values)[i] + w * (*values)[i + 1]);
  };
  f.t_lo = tc + tab.times.front();
  f.t_hi = tc + tab.times.back();
  // Sample kinks are handled by adaptive refinement; listing every sample
  // as a breakpoint makes the double integral quadratic in the table size.
  f.source_weight = r * r;
  return f;
}

TabulatedEnvelope read_envelope_table(std::istream& in) {
  TabulatedEnvelope tab;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    for (char& ch : line)
      if (ch == ',') ch = ' ';
    std::istringstream ls(line);
    double t = 0.0, u = 0.0;
    if (!(ls >> t)) continue;
    if (!(ls >> u)) throw std::invalid_argument("envelope table line " + std::to_string(lineno) + ": expected two columns");
    tab.times.push_back(t);
    tab.values.push_back(u);
  }
  return tab;
}

std::array<double, 2> moment_pair(const ModeFunction& fi, const ModeFunction& fj, const CorrelationKernel& k,
                                  const QuadratureOptions& opt) {
  if (!(fi.t_hi > fi.t_lo) || !(fj.t_hi > fj.t_lo)) return {0.0, 0.0};

  std::vector<double> extra = fi.breakpoints;
  extra.insert(extra.end(), fj.breakpoints.begin(), fj.breakpoints.end());
  extra.push_back(fj.t_lo);
  extra.push_back(fj.t_hi);
  const std::vector<double> outer = merge_breakpoints(fi.t_lo, fi.t_hi, extra);

  QuadratureOptions inner_opt = opt;
  inner_opt.rel_tol = opt.rel_tol * 1e-2;
  inner_opt.abs_tol = opt.abs_tol * 1e-2;

  auto inner = [&](double t) {
    std::vector<double> br_extra = fj.breakpoints;
    br_extra.push_back(t);
    const std::vector<double> br = merge_breakpoints(fj.t_lo, fj.t_hi, br_extra);
    return integrate_piecewise<2>(
        [&](double s) {
          const double w = fj(s);
          return std::array<double, 2>{w * k.c_aa(t - s), w * k.c_ada(t - s)};
        },
        br, inner_opt);
  };
  return integrate_piecewise<2>(
      [&](double t) {
        const double w = fi(t);
        if (w == 0.0) return std::array<double, 2>{0.0, 0.0};
        const auto in = inner(t);
        return std::array<double, 2>{w * in[0], w * in[1]};
      },
      outer, opt);
}

SecondMoments second_moments(const ModeFunction& f1, const ModeFunction& f2, const CorrelationKernel& k,
                             const QuadratureOptions& opt) {
  if (!(k.decay_rate > 0.0)) throw std::invalid_argument("kernel decay_rate must be > 0");
  SecondMoments m;
  const auto m11 = moment_pair(f1, f1, k, opt);
  const auto m12 = moment_pair(f1, f2, k, opt);
  const auto m22 = moment_pair(f2, f2, k, opt);
  m.a << m11[0], m12[0], m12[0], m22[0];
  m.b << m11[1], m12[1], m12[1], m22[1];
  return m;
}

}  // namespace cvcond
