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

#include "cvcond/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "cvcond/metrics.hpp"

namespace cvcond {

std::string to_string(Objective o) { return o == Objective::origin_value ? "origin_value" : "fock1_fidelity"; }

Objective parse_objective(const std::string& name) {
  if (name == "origin_value") return Objective::origin_value;
  if (name == "fock1_fidelity") return Objective::fock1_fidelity;
  throw std::invalid_argument("unknown objective '" + name + "' (expected origin_value|fock1_fidelity)");
}

std::pair<ModeFunction, ModeFunction> build_modes(const ExperimentConfig& cfg, const CorrelationKernel& k) {
  ModeFunction f1 = build_trigger_mode(cfg.trigger, k.fastest_rate, cfg.window);
  OutputModeSpec out = cfg.output;
  const double tau = cfg.trigger.tap_amplitude;
  out.reflect_amplitude = cfg.reflect_amplitude.value_or(std::sqrt(std::max(0.0, 1.0 - tau * tau)));
  ModeFunction f2 = build_output_mode(out);
  return {std::move(f1), std::move(f2)};
}

CovarianceMatrix4 source_covariance(const ExperimentConfig& cfg) {
  if (const auto* opo = std::get_if<OpoSource>(&cfg.source)) {
    const CorrelationKernel k = opo_kernel(opo->params);
    const auto [f1, f2] = build_modes(cfg, k);
    return assemble(second_moments(f1, f2, k));
  }
  if (const auto* t = std::get_if<TmsvSource>(&cfg.source)) return tmsv_covariance(t->r).v;
  return direct_source(std::get<CovarianceSource>(cfg.source).v).v;
}

CovarianceMatrix4 experiment_covariance(const ExperimentConfig& cfg) {
  return apply_loss(source_covariance(cfg), cfg.losses);
}

ConditionResult condition_experiment(const ExperimentConfig& cfg, const CovarianceMatrix4& v) {
  return condition(v, cfg.measurement, cfg.fock_n);
}

Summary summarize(const ConditionResult& r) {
  Summary s;
  s.probability = r.probability;
  s.wigner_origin = wigner_at_origin(r.state);
  s.fidelity_fock0 = fock_fidelity(r.state, 0);
  s.fidelity_fock1 = fock_fidelity(r.state, 1);
  s.fidelity_fock2 = fock_fidelity(r.state, 2);
  s.purity = purity(r.state);
  return s;
}

Summary summarize(const ConditionResult& r, const ExperimentConfig& cfg) {
  Summary s = summarize(r);
  if (cfg.measurement == Measurement::click && std::holds_alternative<OpoSource>(cfg.source))
    s.click_rate = s.probability / cfg.trigger.window_width;
  return s;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  ExperimentResult res{experiment_covariance(cfg), {}, {}};
  res.conditioned = condition_experiment(cfg, res.covariance);
  res.summary = summarize(res.conditioned, cfg);
  return res;
}

std::string format_summary(const Summary& s, const ExperimentConfig& cfg) {
  std::string out;
  char buf[160];
  auto line = [&](const char* key, double v) {
    std::snprintf(buf, sizeof buf, "%s=%.9g\n", key, v);
    out += buf;
  };
  line("probability", s.probability);
  if (s.click_rate) line("click_rate", *s.click_rate);
  line("wigner_origin", s.wigner_origin);
  line("fidelity_fock0", s.fidelity_fock0);
  line("fidelity_fock1", s.fidelity_fock1);
  line("fidelity_fock2", s.fidelity_fock2);
  line("purity", s.purity);
  for (const auto& [k, v] : cfg.echo) out += "config." + k + "=" + v + "\n";
  return out;
}

ExperimentConfig with_alpha(const ExperimentConfig& cfg, double alpha) {
  ExperimentConfig c = cfg;
  c.output.envelope = ExponentialEnvelope{alpha};
  return c;
}

}  // namespace cvcond
