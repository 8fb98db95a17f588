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

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "cvcond/coherence.hpp"
#include "cvcond/conditioning.hpp"
#include "cvcond/covariance.hpp"
#include "cvcond/gauss_poly_wigner.hpp"
#include "cvcond/mode_calculus.hpp"
#include "cvcond/source_models.hpp"

namespace cvcond {

struct OpoSource {
  OpoParams params;
};
struct TmsvSource {
  double r = 0.0;
};
struct CovarianceSource {
  CovarianceMatrix4 v;
};
using SourceConfig = std::variant<OpoSource, TmsvSource, CovarianceSource>;

enum class Objective { origin_value, fock1_fidelity };
std::string to_string(Objective o);
Objective parse_objective(const std::string& name);

struct ScanConfig {
  double alpha_min = 0.1;
  double alpha_max = 1.0;
  int samples = 50;
  Objective objective = Objective::origin_value;
};

struct ExperimentConfig {
  SourceConfig source = OpoSource{};
  TriggerModeSpec trigger;
  WindowTreatment window = WindowTreatment::automatic;
  OutputModeSpec output;
  /// Output-mode tap reflection; unset means sqrt(1 − tap_amplitude²).
  std::optional<double> reflect_amplitude;
  LossParams losses;
  Measurement measurement = Measurement::click;
  int fock_n = 1;
  GridSpec grid;
  std::optional<ScanConfig> scan;
  /// Present when the [coherence] section is given; `run` then writes the kernel.
  std::optional<CoherenceGridSpec> coherence;
  /// Flattened "section.key" → value pairs as read, echoed into summaries.
  std::vector<std::pair<std::string, std::string>> echo;
};

/// Trigger and output mode functions for an OPO configuration.
std::pair<ModeFunction, ModeFunction> build_modes(const ExperimentConfig& cfg, const CorrelationKernel& k);

/// Two-mode covariance before the loss channel.
CovarianceMatrix4 source_covariance(const ExperimentConfig& cfg);

/// Two-mode covariance after V → LVL + N; the input of conditioning.
CovarianceMatrix4 experiment_covariance(const ExperimentConfig& cfg);

ConditionResult condition_experiment(const ExperimentConfig& cfg, const CovarianceMatrix4& v);

struct Summary {
  double probability = 0.0;
  std::optional<double> click_rate;  ///< probability / dt for click detection on a cw source
  double wigner_origin = 0.0;
  double fidelity_fock0 = 0.0;
  double fidelity_fock1 = 0.0;
  double fidelity_fock2 = 0.0;
  double purity = 0.0;
};

Summary summarize(const ConditionResult& r);

/// summarize() plus the per-time click rate when the source is cw and the
/// measurement is a click.
Summary summarize(const ConditionResult& r, const ExperimentConfig& cfg);

/// Full pipeline: covariance, conditioning, metrics.
struct ExperimentResult {
  CovarianceMatrix4 covariance;
  ConditionResult conditioned;
  Summary summary;
};
ExperimentResult run_experiment(const ExperimentConfig& cfg);

/// key=value lines with 9 significant digits, followed by the config echo.
std::string format_summary(const Summary& s, const ExperimentConfig& cfg);

/// The same configuration with the output envelope replaced by exp(−α|t−tc|).
ExperimentConfig with_alpha(const ExperimentConfig& cfg, double alpha);

}  // namespace cvcond
