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

#include <cmath>
#include <sstream>

#include "gtest/gtest.h"

#include "test_support.hpp"

using namespace cvcond;

namespace {

// Closed-form double integrals against exp(-kappa |t - s|):
//   trigger e^{gamma s} on s <= 0, output e^{-alpha |t|}, window 1 on [-dt/2, dt/2].
double j_trig_trig(double g, double k) { return 1.0 / (g * (g + k)); }
double j_out_out(double a, double k) { return 2.0 * (2.0 * a + k) / (a * (a + k) * (a + k)); }
double j_trig_out(double g, double a, double k) {
  return 2.0 * (a + g + k) / ((a + g) * (a + k) * (g + k));
}
double j_rect_rect(double dt, double k) { return 2.0 * (k * dt - 1.0 + std::exp(-k * dt)) / (k * k); }

struct KernelTerms {
  double k_mu, k_lam, w_mu, w_lam;
};

KernelTerms terms(const OpoParams& p) {
  const double lam = p.lambda(), mu = p.mu();
  const double kk = p.gamma1 / (p.gamma1 + p.gamma2) * (lam * lam - mu * mu) / 4.0;
  return {mu, lam, kk / (2.0 * mu), kk / (2.0 * lam)};
}

TriggerModeSpec trigger(double tau, std::optional<double> gamma, double dt = 0.02) {
  TriggerModeSpec s;
  s.tap_amplitude = tau;
  s.filter_width = gamma;
  s.window_width = dt;
  return s;
}

void expect_rel(double got, double want, double rel, const char* what) {
  EXPECT_NEAR(got, want, rel * std::abs(want)) << what;
}

}  // namespace

TEST(build_trigger_mode, collapsed_filter_value) {
  const ModeFunction f = build_trigger_mode(trigger(0.1, 5.0), 0.0, WindowTreatment::collapsed);
  EXPECT_NEAR(f(-0.2), 0.1 * std::sqrt(0.02) * 5.0 * std::exp(-1.0), 1e-15);
  EXPECT_NEAR(f(-0.2), 0.0260130, 5e-8);
  EXPECT_EQ(f(0.01), 0.0);
  EXPECT_NEAR(f.source_weight, 0.01 * 0.02 * 5.0 / 2.0, 1e-14);
}

TEST(build_trigger_mode, zero_tap_is_vacuum) {
  const ModeFunction f = build_trigger_mode(trigger(0.0, 5.0));
  EXPECT_EQ(f(-0.1), 0.0);
  EXPECT_EQ(f.source_weight, 0.0);
}

TEST(build_trigger_mode, unfiltered_window_has_unit_norm) {
  const ModeFunction f = build_trigger_mode(trigger(1.0, std::nullopt));
  EXPECT_NEAR(f.source_weight, 1.0, 1e-13);
  EXPECT_NEAR(f(0.0), 1.0 / std::sqrt(0.02), 1e-12);
  EXPECT_EQ(f(0.011), 0.0);
}

TEST(build_trigger_mode, detector_efficiency_folds_into_tap) {
  TriggerModeSpec s = trigger(0.5, std::nullopt);
  s.detector_efficiency = 0.64;
  EXPECT_NEAR(s.effective_tap(), 0.4, 1e-15);
  EXPECT_NEAR(build_trigger_mode(s).source_weight, 0.16, 1e-13);
}

TEST(build_trigger_mode, explicit_window_is_filtered_rectangle) {
  const double g = 8.0, dt = 0.1, tau = 0.3;
  const ModeFunction f = build_trigger_mode(trigger(tau, g, dt), 0.0, WindowTreatment::explicit_);
  for (double s : {-0.4, -0.06, -0.05, -0.01, 0.0, 0.03, 0.05}) {
    // (tau / sqrt(dt)) ∫_window g e^{-g(t-s)} [t >= s] dt, by the trapezoid rule.
    const double lo = std::max(s, -0.5 * dt), hi = 0.5 * dt;
    const double want = hi > lo ? tau / std::sqrt(dt) *
                                      testkit::trapezoid([&](double t) { return g * std::exp(-g * (t - s)); }, lo, hi, 20000)
                                : 0.0;
    EXPECT_NEAR(f(s), want, 1e-9) << s;
  }
  EXPECT_EQ(f(0.06), 0.0);
}

TEST(build_trigger_mode, automatic_window_rule) {
  const TriggerModeSpec narrow = trigger(0.1, 4.0, 0.02);
  EXPECT_TRUE(window_is_collapsed(narrow, 0.5, WindowTreatment::automatic));
  EXPECT_FALSE(window_is_collapsed(narrow, 5.0, WindowTreatment::automatic));
  EXPECT_FALSE(window_is_collapsed(trigger(0.1, 31.4, 0.02), 0.5, WindowTreatment::automatic));
  EXPECT_TRUE(window_is_collapsed(trigger(0.1, 31.4, 0.02), 0.5, WindowTreatment::collapsed));
  EXPECT_FALSE(window_is_collapsed(trigger(0.1, std::nullopt), 0.5, WindowTreatment::collapsed));
}

TEST(build_trigger_mode, invalid_inputs) {
  EXPECT_THROW(build_trigger_mode(trigger(0.1, 5.0, 0.0)), std::invalid_argument);
  EXPECT_THROW(build_trigger_mode(trigger(0.1, 5.0, -1.0)), std::invalid_argument);
  EXPECT_THROW(build_trigger_mode(trigger(0.1, 0.0)), std::invalid_argument);
  EXPECT_THROW(build_trigger_mode(trigger(0.1, -2.0)), std::invalid_argument);
  EXPECT_THROW(build_trigger_mode(trigger(1.5, 5.0)), std::invalid_argument);
}

TEST(build_output_mode, exponential_normalization) {
  OutputModeSpec s;
  s.envelope = ExponentialEnvelope{0.5};
  const ModeFunction f = build_output_mode(s);
  EXPECT_NEAR(f.source_weight, 1.0, 1e-12);
  EXPECT_NEAR(f(0.0), 0.7071067811865476, 1e-15);
  s.reflect_amplitude = std::sqrt(0.99);
  s.center = 2.0;
  const ModeFunction g = build_output_mode(s);
  EXPECT_NEAR(g.source_weight, 0.99, 1e-12);
  EXPECT_NEAR(g(2.0), std::sqrt(0.99 * 0.5), 1e-15);
  s.envelope = ExponentialEnvelope{0.0};
  EXPECT_THROW(build_output_mode(s), std::invalid_argument);
}

TEST(build_output_mode, tabulated_gaussian_renormalized) {
  TabulatedEnvelope tab;
  for (int i = -400; i <= 400; ++i) {
    const double t = 0.02 * i;
    tab.times.push_back(t);
    tab.values.push_back(3.0 * std::exp(-t * t));
  }
  OutputModeSpec s;
  s.envelope = tab;
  const ModeFunction f = build_output_mode(s);
  const double norm = testkit::trapezoid([&](double t) { return f(t) * f(t); }, -8.0, 8.0, 8000);
  EXPECT_NEAR(norm, 1.0, 1e-6);
  EXPECT_NEAR(f(0.0), std::pow(2.0 / M_PI, 0.25), 1e-4);
  tab.values[3] = std::nan("");
  s.envelope = tab;
  EXPECT_THROW(build_output_mode(s), std::invalid_argument);
}

TEST(read_envelope_table, comma_or_space) {
  std::istringstream in("# t u\n-1, 0.5\n0 1\n\n1,0.5  # tail\n");
  const TabulatedEnvelope t = read_envelope_table(in);
  EXPECT_EQ(t.times, (std::vector<double>{-1.0, 0.0, 1.0}));
  EXPECT_EQ(t.values, (std::vector<double>{0.5, 1.0, 0.5}));
  std::istringstream bad("0 1\n2\n");
  EXPECT_THROW(read_envelope_table(bad), std::invalid_argument);
}

TEST(second_moments, zero_kernel_gives_zero) {
  const CorrelationKernel k = opo_kernel({1.0, 0.0, 0.0});
  OutputModeSpec o;
  const SecondMoments m = second_moments(build_trigger_mode(trigger(0.1, 5.0)), build_output_mode(o), k);
  EXPECT_EQ(m.a.norm(), 0.0);
  EXPECT_EQ(m.b.norm(), 0.0);
}

TEST(second_moments, analytic_oracle_exponential_modes) {
  for (const OpoParams p : {OpoParams{1.0, 0.0, 0.01}, OpoParams{1.0, 0.0, 0.2}, OpoParams{1.0, 0.3, 0.4}}) {
    for (const double alpha : {0.2, 0.5, 1.3}) {
      const double g = 5.0, tau = 0.1, dt = 0.02, r = std::sqrt(0.99);
      const CorrelationKernel k = opo_kernel(p);
      const ModeFunction f1 = build_trigger_mode(trigger(tau, g, dt), 0.0, WindowTreatment::collapsed);
      OutputModeSpec o;
      o.envelope = ExponentialEnvelope{alpha};
      o.reflect_amplitude = r;
      const ModeFunction f2 = build_output_mode(o);
      const SecondMoments m = second_moments(f1, f2, k);

      const KernelTerms kt = terms(p);
      const double c1 = tau * std::sqrt(dt) * g, c2 = r * std::sqrt(alpha);
      auto mix = [&](double sign, auto&& j) { return kt.w_mu * j(kt.k_mu) + sign * kt.w_lam * j(kt.k_lam); };
      auto j11 = [&](double kk) { return c1 * c1 * j_trig_trig(g, kk); };
      auto j22 = [&](double kk) { return c2 * c2 * j_out_out(alpha, kk); };
      auto j12 = [&](double kk) { return c1 * c2 * j_trig_out(g, alpha, kk); };
      expect_rel(m.a(0, 0), mix(1.0, j11), 1e-8, "a11");
      expect_rel(m.b(0, 0), mix(-1.0, j11), 1e-8, "b11");
      expect_rel(m.a(1, 1), mix(1.0, j22), 1e-8, "a22");
      expect_rel(m.b(1, 1), mix(-1.0, j22), 1e-8, "b22");
      expect_rel(m.a(0, 1), mix(1.0, j12), 1e-8, "a12");
      expect_rel(m.b(0, 1), mix(-1.0, j12), 1e-8, "b12");
      EXPECT_EQ(m.a(0, 1), m.a(1, 0));
      EXPECT_EQ(m.b(0, 1), m.b(1, 0));
    }
  }
}

TEST(second_moments, analytic_oracle_rectangular_window) {
  const OpoParams p{1.0, 0.0, 0.2};
  const double dt = 0.05, tau = 0.7;
  const ModeFunction f1 = build_trigger_mode(trigger(tau, std::nullopt, dt));
  const auto pair = moment_pair(f1, f1, opo_kernel(p));
  const KernelTerms kt = terms(p);
  const double c = tau * tau / dt;
  expect_rel(pair[0], c * (kt.w_mu * j_rect_rect(dt, kt.k_mu) + kt.w_lam * j_rect_rect(dt, kt.k_lam)), 1e-8, "a11");
  expect_rel(pair[1], c * (kt.w_mu * j_rect_rect(dt, kt.k_mu) - kt.w_lam * j_rect_rect(dt, kt.k_lam)), 1e-8, "b11");
}

TEST(second_moments, scaling_and_cauchy_schwarz) {
  const CorrelationKernel k = opo_kernel({1.0, 0.0, 0.15});
  const ModeFunction f1 = build_trigger_mode(trigger(0.3, 31.4), k.fastest_rate);
  OutputModeSpec o;
  o.envelope = ExponentialEnvelope{0.7};
  const ModeFunction f2 = build_output_mode(o);
  const SecondMoments m = second_moments(f1, f2, k);
  ModeFunction g1 = f1;
  const double s = 0.37;
  g1.amplitude = [f1, s](double t) { return s * f1.amplitude(t); };
  const SecondMoments ms = second_moments(g1, f2, k);
  expect_rel(ms.a(0, 0), s * s * m.a(0, 0), 1e-9, "a11");
  expect_rel(ms.b(0, 0), s * s * m.b(0, 0), 1e-9, "b11");
  expect_rel(ms.a(0, 1), s * m.a(0, 1), 1e-9, "a12");
  expect_rel(ms.b(0, 1), s * m.b(0, 1), 1e-9, "b12");
  EXPECT_LE(m.b(0, 1) * m.b(0, 1), m.b(0, 0) * m.b(1, 1) + 1e-15);
  EXPECT_GE(m.b(0, 0), 0.0);
  EXPECT_GE(m.b(1, 1), 0.0);
}

TEST(second_moments, converged_under_refinement) {
  const CorrelationKernel k = opo_kernel({1.0, 0.0, 0.2});
  const ModeFunction f1 = build_trigger_mode(trigger(0.1, 31.4), k.fastest_rate);
  OutputModeSpec o;
  o.envelope = ExponentialEnvelope{0.5};
  const ModeFunction f2 = build_output_mode(o);
  QuadratureOptions fine;
  fine.rel_tol = 3e-12;
  fine.order = 32;
  const SecondMoments a = second_moments(f1, f2, k);
  const SecondMoments b = second_moments(f1, f2, k, fine);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      EXPECT_NEAR(a.a(i, j), b.a(i, j), 1e-8 * std::abs(b.a(i, j)) + 1e-12);
      EXPECT_NEAR(a.b(i, j), b.b(i, j), 1e-8 * std::abs(b.b(i, j)) + 1e-12);
    }
}

TEST(second_moments, requires_decaying_kernel) {
  CorrelationKernel k;
  k.c_aa = [](double) { return 1.0; };
  k.c_ada = [](double) { return 1.0; };
  OutputModeSpec o;
  EXPECT_THROW(second_moments(build_output_mode(o), build_output_mode(o), k), std::invalid_argument);
}
