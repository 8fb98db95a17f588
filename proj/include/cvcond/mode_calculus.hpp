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

#include <array>
#include <functional>
#include <iosfwd>
#include <optional>
#include <variant>
#include <vector>

#include "cvcond/quadrature.hpp"
#include "cvcond/second_moments.hpp"
#include "cvcond/source_models.hpp"

namespace cvcond {

/// Source part f(t) of a discrete mode a_i = ∫ f(t) a(t) dt + (vacuum fill).
/// `amplitude` is treated as zero outside [t_lo, t_hi]; `breakpoints` lists
/// the interior points where f or its derivative jumps.
struct ModeFunction {
  std::function<double(double)> amplitude;
  double t_lo = 0.0;
  double t_hi = 0.0;
  std::vector<double> breakpoints;
  double source_weight = 0.0;  ///< ∫ f² dt, at most 1

  double operator()(double t) const { return (t < t_lo || t > t_hi) ? 0.0 : amplitude(t); }
};

/// Decay lengths kept on each side of an exponential mode function.
inline constexpr double kTruncationDecayLengths = 30.0;

enum class WindowTreatment {
  automatic,  ///< collapsed when dt·max(source rate, filter rate) < 0.1
  collapsed,  ///< detection window replaced by a point sample at its center
  explicit_,  ///< rectangular window integrated against the filter response
};

struct TriggerModeSpec {
  double tap_amplitude = 0.0;          ///< field transmission τ of the tap
  std::optional<double> filter_width;  ///< exponential filter rate γ; none = unfiltered
  double window_center = 0.0;
  double window_width = 0.02;
  double detector_efficiency = 1.0;

  /// τ folded with the detector efficiency.
  double effective_tap() const;
};

/// Trigger mode: tap, optional exponential filter, rectangular detection
/// window of width dt normalized as 1/sqrt(dt). `source_rate` is the fastest
/// source correlation rate, used only by WindowTreatment::automatic.
ModeFunction build_trigger_mode(const TriggerModeSpec& spec, double source_rate = 0.0,
                                WindowTreatment window = WindowTreatment::automatic);

/// Whether build_trigger_mode collapses the window for these inputs.
bool window_is_collapsed(const TriggerModeSpec& spec, double source_rate, WindowTreatment window);

struct ExponentialEnvelope {
  double alpha = 0.5;
};

/// Samples (t, u) with t measured from the output-mode center; linearly
/// interpolated and zero outside the table.
struct TabulatedEnvelope {
  std::vector<double> times;
  std::vector<double> values;
};

struct OutputModeSpec {
  std::variant<ExponentialEnvelope, TabulatedEnvelope> envelope = ExponentialEnvelope{};
  double center = 0.0;
  double reflect_amplitude = 1.0;
};

/// Envelope normalized to unit L² norm, then scaled by reflect_amplitude.
ModeFunction build_output_mode(const OutputModeSpec& spec);

/// Reads a two-column (t, u) table; '#' starts a comment.
TabulatedEnvelope read_envelope_table(std::istream& in);

/// Returns {∬ fi(t) fj(s) c_aa(t−s), ∬ fi(t) fj(s) c_ada(t−s)}. The double
/// integral is split at the breakpoints of both modes and at the kernel kink
/// t = s.
std::array<double, 2> moment_pair(const ModeFunction& fi, const ModeFunction& fj,
                                  const CorrelationKernel& k, const QuadratureOptions& opt = {});

SecondMoments second_moments(const ModeFunction& f1, const ModeFunction& f2, const CorrelationKernel& k,
                             const QuadratureOptions& opt = {});

}  // namespace cvcond
