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

#include <cmath>
#include <random>
#include <sstream>

#include "gtest/gtest.h"

#include "cvcond/errors.hpp"
#include "cvcond/mode_calculus.hpp"
#include "cvcond/source_models.hpp"
#include "test_support.hpp"

using namespace cvcond;

TEST(covariance_matrix, rejects_asymmetric_and_nonfinite) {
  Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
  m(0, 1) = 0.1;
  EXPECT_THROW(CovarianceMatrix4{m}, std::invalid_argument);
  m(0, 1) = m(1, 0) = 0.1;
  EXPECT_NO_THROW(CovarianceMatrix4{m});
  m(2, 2) = std::nan("");
  EXPECT_THROW(CovarianceMatrix4{m}, std::invalid_argument);
}

TEST(assemble, zero_moments_give_vacuum) {
  EXPECT_TRUE(assemble(SecondMoments{}).matrix().isIdentity(0.0));
}

TEST(assemble, quadrature_formulas) {
  SecondMoments m;
  m.a << 0.05, 0.02, 0.02, 0.01;
  m.b << 0.03, 0.004, 0.004, 0.002;
  const Eigen::Matrix4d v = assemble(m).matrix();
  EXPECT_DOUBLE_EQ(v(0, 0), 1.0 + 2.0 * (0.05 + 0.03));
  EXPECT_DOUBLE_EQ(v(1, 1), 1.0 + 2.0 * (0.03 - 0.05));
  EXPECT_DOUBLE_EQ(v(0, 2), 2.0 * (0.02 + 0.004));
  EXPECT_DOUBLE_EQ(v(1, 3), 2.0 * (0.004 - 0.02));
  EXPECT_EQ(v(0, 1), 0.0);
  EXPECT_EQ(v(0, 3), 0.0);
  EXPECT_GE(v(1, 1), 1.0 - 2.0 * std::abs(m.a(0, 0)));
}

TEST(assemble, unphysical_moments_rejected) {
  SecondMoments m;
  m.a << 0.3, 0.0, 0.0, 0.0;  // squeezing without the matching occupation
  try {
    assemble(m);
    FAIL();
  } catch (const UnphysicalState& e) {
    EXPECT_LT(e.min_eigenvalue(), -1e-9);
  }
}

TEST(assemble, opo_pipeline_output_variance) {
  const CorrelationKernel k = opo_kernel({1.0, 0.0, 0.01});
  OutputModeSpec o;
  o.envelope = ExponentialEnvelope{0.5};
  const ModeFunction f2 = build_output_mode(o);
  TriggerModeSpec t;
  t.tap_amplitude = 0.1;
  t.filter_width = 5.0;
  const SecondMoments m = second_moments(build_trigger_mode(t, k.fastest_rate), f2, k);
  // A22, B22 from the closed-form exponential double integral.
  const double lam = 0.51, mu = 0.49, kk = (lam * lam - mu * mu) / 4.0, a = 0.5;
  auto j22 = [&](double x) { return a * 2.0 * (2.0 * a + x) / (a * (a + x) * (a + x)); };
  const double a22 = kk * (j22(mu) / (2 * mu) + j22(lam) / (2 * lam));
  const double b22 = kk * (j22(mu) / (2 * mu) - j22(lam) / (2 * lam));
  const CovarianceMatrix4 v = assemble(m);
  EXPECT_NEAR(v(2, 2), 1.0 + 2.0 * (a22 + b22), 1e-10);
  EXPECT_NEAR(v(3, 3), 1.0 + 2.0 * (b22 - a22), 1e-10);
}

TEST(physicality_check, identity_and_tmsv) {
  const PhysicalityReport id = physicality_check(CovarianceMatrix4::identity());
  EXPECT_TRUE(id.physical);
  EXPECT_NEAR(id.symplectic[0], 1.0, 1e-12);
  EXPECT_NEAR(id.symplectic[1], 1.0, 1e-12);
  EXPECT_NEAR(id.purity, 1.0, 1e-15);
  EXPECT_NEAR(id.min_eigenvalue, 0.0, 1e-12);

  LossParams loss;
  loss.eta2 = 0.3;
  const PhysicalityReport lossy = physicality_check(apply_loss(tmsv_covariance(0.5).v, loss));
  EXPECT_TRUE(lossy.physical);
  const double det = apply_loss(tmsv_covariance(0.5).v, loss).matrix().determinant();
  EXPECT_NEAR(lossy.purity, 1.0 / std::sqrt(det), 1e-12);
  EXPECT_LT(lossy.purity, 1.0);
}

TEST(apply_loss, identity_channel_and_full_loss) {
  const CovarianceMatrix4 v = tmsv_covariance(0.7).v;
  EXPECT_TRUE(apply_loss(v, {}).matrix().isApprox(v.matrix(), 0.0));
  LossParams full;
  full.eta1 = full.eta2 = 1.0;
  EXPECT_TRUE(apply_loss(v, full).matrix().isIdentity(1e-15));
}

TEST(apply_loss, vacuum_fixed_point) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    LossParams p;
    p.eta1 = u(rng);
    p.eta2 = u(rng);
    EXPECT_EQ(apply_loss(CovarianceMatrix4::identity(), p).matrix(), Eigen::Matrix4d::Identity());
  }
}

TEST(apply_loss, composes_multiplicatively) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    const CovarianceMatrix4 v = testkit::random_physical(rng);
    LossParams a, b, ab;
    a.eta1 = u(rng), a.eta2 = u(rng), b.eta1 = u(rng), b.eta2 = u(rng);
    ab.eta1 = 1.0 - (1.0 - a.eta1) * (1.0 - b.eta1);
    ab.eta2 = 1.0 - (1.0 - a.eta2) * (1.0 - b.eta2);
    const Eigen::Matrix4d twice = apply_loss(apply_loss(v, a), b).matrix();
    EXPECT_LT((twice - apply_loss(v, ab).matrix()).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(apply_loss, purity_never_increases_for_pure_inputs) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    const CovarianceMatrix4 v = testkit::random_physical(rng, 0.8, 0.0);
    LossParams p;
    p.eta1 = u(rng), p.eta2 = u(rng);
    EXPECT_LE(physicality_check(apply_loss(v, p)).purity, physicality_check(v).purity + 1e-12);
  }
}

TEST(apply_loss, noise_added_verbatim) {
  LossParams p;
  p.eta2 = 0.25;
  p.xi2 = 0.1;
  p.xi1 = 0.2;
  const Eigen::Matrix4d v = apply_loss(CovarianceMatrix4::identity(), p).matrix();
  EXPECT_DOUBLE_EQ(v(0, 0), 1.2);
  EXPECT_DOUBLE_EQ(v(3, 3), 1.1);
}

TEST(apply_loss, invalid_ranges) {
  LossParams p;
  p.eta1 = 1.1;
  EXPECT_THROW(apply_loss(CovarianceMatrix4::identity(), p), std::invalid_argument);
  p.eta1 = 0.0;
  p.xi2 = -0.1;
  EXPECT_THROW(apply_loss(CovarianceMatrix4::identity(), p), std::invalid_argument);
}

TEST(covariance_text, round_trip_exact) {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 20; ++i) {
    const CovarianceMatrix4 v = testkit::random_physical(rng);
    std::istringstream in(format_covariance(v));
    EXPECT_EQ(parse_covariance(in).matrix(), v.matrix());
  }
  std::istringstream bad("1 0 0\n0 1 0 0\n");
  EXPECT_THROW(parse_covariance(bad), std::invalid_argument);
}
