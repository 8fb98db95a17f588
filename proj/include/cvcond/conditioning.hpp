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

#include <string>

#include "cvcond/covariance.hpp"
#include "cvcond/gauss_poly_wigner.hpp"

namespace cvcond {

enum class Measurement { number, on, click, vacuum };

std::string to_string(Measurement m);
Measurement parse_measurement(const std::string& name);

/// Normalized output-mode state after a trigger outcome. `probability` is the
/// outcome probability for number and on/off detection, and the trigger-mode
/// occupation <a1^dag a1> for click detection.
struct ConditionResult {
  GaussPolyState state;
  double probability = 0.0;
};

/// Outcomes at or below this probability are reported as impossible.
inline constexpr double kImpossibleProbability = 1e-300;

/// Unconditioned output-mode Wigner function.
GaussPolyState output_marginal(const CovarianceMatrix4& v);

/// Projection of the trigger on |n>, n in {0, 1, 2}.
ConditionResult condition_on_number(const CovarianceMatrix4& v, int n);

/// "On" outcome of a binary detector: the vacuum component removed.
ConditionResult condition_on_on(const CovarianceMatrix4& v);

/// Photodetection back-action rho -> a1 rho a1^dag / Tr(a1^dag a1 rho),
/// reduced to the weight (x1² + p1² − 1)/2 on the trigger phase plane.
ConditionResult condition_on_click(const CovarianceMatrix4& v);

/// No-click event: alias of condition_on_number(v, 0).
ConditionResult vacuum_projection(const CovarianceMatrix4& v);

/// Dispatch on the measurement kind; `n` is used only for Measurement::number.
ConditionResult condition(const CovarianceMatrix4& v, Measurement m, int n = 1);

/// Trigger-mode occupation (V11 + V22 − 2)/4.
double click_probability(const CovarianceMatrix4& v);

struct ClickOperatorOptions {
  int panels = 16;
  int order = 30;
  double half_width_sigmas = 12.0;
};

/// Normalized click-conditioned W(x2, p2) from the full differential form
///   ½(x1² + p1² + ¼(∂²x1 + ∂²p1) + x1∂x1 + p1∂p1 + 1) W_V
/// integrated numerically over (x1, p1). Derivatives of W_V are analytic.
/// Cross-check for condition_on_click; far slower.
double click_wigner_operator_form(const CovarianceMatrix4& v, double x2, double p2,
                                  const ClickOperatorOptions& opt = {});

}  // namespace cvcond
