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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "cvcond/coherence.hpp"
#include "cvcond/config.hpp"
#include "cvcond/errors.hpp"
#include "cvcond/experiment.hpp"
#include "cvcond/optimizer.hpp"
#include "cvcond/serialization.hpp"

namespace fs = std::filesystem;
using namespace cvcond;

namespace {

struct StageFailure {
  std::string stage;
  std::string message;
  int code;
};

template <class F>
auto stage(const std::string& name, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ConfigError& e) {
    throw StageFailure{name, e.what(), 2};
  } catch (const std::exception& e) {
    throw StageFailure{name, e.what(), 1};
  }
}

void write_file(const fs::path& dir, const std::string& name, const std::function<void(std::ostream&)>& body) {
  stage("output", [&] {
    fs::create_directories(dir);
    const fs::path p = dir / name;
    std::ofstream out(p, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + p.string() + "'");
    body(out);
    out.flush();
    if (!out) throw std::runtime_error("write to '" + p.string() + "' failed");
    return 0;
  });
}

ExperimentConfig read_config(const std::string& path, const std::string& grid) {
  return stage("config", [&] {
    ExperimentConfig cfg = load_config(path);
    if (!grid.empty()) cfg.grid = parse_grid_spec(grid);
    return cfg;
  });
}

std::string key_values(std::initializer_list<std::pair<const char*, double>> items) {
  std::string out;
  char buf[160];
  for (const auto& [k, v] : items) {
    std::snprintf(buf, sizeof buf, "%s=%.9g\n", k, v);
    out += buf;
  }
  return out;
}

const CorrelationKernel opo_kernel_of(const ExperimentConfig& cfg, const std::string& stage_name) {
  return stage(stage_name, [&] {
    const auto* opo = std::get_if<OpoSource>(&cfg.source);
    if (!opo) throw ConfigError("this stage needs an OPO source ([source] kind = opo)");
    return opo_kernel(opo->params);
  });
}

void emit_metrics(const ConditionResult& r, const ExperimentConfig* cfg, const GridSpec& grid, const fs::path& out,
                  bool quiet) {
  const std::string text = stage("metrics", [&] {
    static const ExperimentConfig empty_cfg = [] {
      ExperimentConfig c;
      c.source = CovarianceSource{};
      return c;
    }();
    const ExperimentConfig& c = cfg ? *cfg : empty_cfg;
    return format_summary(summarize(r, c), c);
  });
  const WignerGrid g = stage("metrics", [&] { return evaluate_grid(r.state, grid); });
  write_file(out, "summary.txt", [&](std::ostream& o) { o << text; });
  write_file(out, "wigner.csv", [&](std::ostream& o) { write_grid_csv(o, g); });
  if (!quiet) std::cout << text;
}

void run_coherence(const ExperimentConfig& cfg, const CoherenceGridSpec& spec, const fs::path& out, bool quiet) {
  const CorrelationKernel k = opo_kernel_of(cfg, "coherence");
  const double tc = cfg.trigger.window_center;
  const auto [ck, mode, rate] = stage("coherence", [&] {
    CoherenceKernel c = conditional_coherence(k, tc, spec);
    DominantMode m = dominant_mode(c);
    const double fit = fit_decay_rate(c.times, m.samples, tc);
    return std::make_tuple(std::move(c), std::move(m), fit);
  });
  const std::string text =
      key_values({{"dominance_ratio", mode.dominance_ratio}, {"leading_eigenvalue", mode.eigenvalue}, {"decay_rate", rate}});
  write_file(out, "coherence.csv", [&](std::ostream& o) { write_coherence_csv(o, ck); });
  write_file(out, "mode.csv", [&](std::ostream& o) { write_mode_csv(o, ck.times, mode); });
  write_file(out, "coherence.txt", [&](std::ostream& o) { o << text; });
  if (!quiet) std::cout << text;
}

void run_scan(const ExperimentConfig& cfg, const ScanConfig& sc, const fs::path& out, bool quiet) {
  const ScanResult r = stage("scan", [&] { return scan_alpha(cfg, sc.alpha_min, sc.alpha_max, sc.objective, sc.samples); });
  const std::string text = "objective=" + to_string(r.objective) + "\n" +
                           key_values({{"best_alpha", r.best_alpha}, {"best_value", r.best_value}});
  write_file(out, "scan.csv", [&](std::ostream& o) { write_scan_csv(o, r); });
  write_file(out, "scan.txt", [&](std::ostream& o) { o << text; });
  if (!quiet) std::cout << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Conditional states of Gaussian light after photodetection of a trigger mode."};
  app.require_subcommand(1);

  std::string config_path, out_dir = ".", grid, cov_path, state_path, measurement_name;
  bool quiet = false;
  int fock_n = -1;
  std::optional<double> alpha_min, alpha_max;
  std::optional<int> samples;
  std::string objective_name;

  auto common = [&](CLI::App* sub, bool config_required) {
    auto* opt = sub->add_option("--config", config_path, "experiment description");
    if (config_required) opt->required();
    opt->check(CLI::ExistingFile);
    sub->add_option("--out", out_dir, "output directory")->capture_default_str();
    sub->add_flag("--quiet", quiet, "do not echo results to stdout");
  };

  auto* run = app.add_subcommand("run", "full pipeline: covariance, conditioning, metrics, optional coherence and scan");
  common(run, true);
  run->add_option("--grid", grid, "Wigner grid \"xmin,xmax,pmin,pmax,nx,np\"");

  auto* cov = app.add_subcommand("covariance", "write the two-mode covariance after losses");
  common(cov, true);

  auto* cond = app.add_subcommand("condition", "condition the output mode on a trigger outcome");
  common(cond, false);
  cond->add_option("--covariance", cov_path, "covariance file (instead of computing it from --config)")
      ->check(CLI::ExistingFile);
  cond->add_option("--measurement", measurement_name, "number|on|click|vacuum (overrides the config)");
  cond->add_option("--n", fock_n, "photon number for --measurement number");

  auto* met = app.add_subcommand("metrics", "summary and Wigner grid of a stored state");
  common(met, false);
  met->add_option("--state", state_path, "state file written by 'condition'")->required()->check(CLI::ExistingFile);
  met->add_option("--grid", grid, "Wigner grid \"xmin,xmax,pmin,pmax,nx,np\"");

  auto* coh = app.add_subcommand("coherence", "click-conditioned coherence kernel and its dominant mode");
  common(coh, true);

  auto* scan = app.add_subcommand("scan-alpha", "scan the output envelope rate alpha");
  common(scan, true);
  scan->add_option("--alpha-min", alpha_min, "lower end of the scan");
  scan->add_option("--alpha-max", alpha_max, "upper end of the scan");
  scan->add_option("--samples", samples, "number of uniform samples");
  scan->add_option("--objective", objective_name, "origin_value|fock1_fidelity");

  CLI11_PARSE(app, argc, argv);

  const fs::path out(out_dir);
  try {
    if (run->parsed()) {
      const ExperimentConfig cfg = read_config(config_path, grid);
      const CovarianceMatrix4 v = stage("covariance", [&] { return experiment_covariance(cfg); });
      const ConditionResult r = stage("condition", [&] { return condition_experiment(cfg, v); });
      write_file(out, "covariance.txt", [&](std::ostream& o) { o << format_covariance(v); });
      write_file(out, "state.json", [&](std::ostream& o) {
        write_state_json(o, StoredState{r, cfg.measurement, cfg.fock_n});
      });
      emit_metrics(r, &cfg, cfg.grid, out, quiet);
      if (cfg.coherence) run_coherence(cfg, *cfg.coherence, out, quiet);
      if (cfg.scan) run_scan(cfg, *cfg.scan, out, quiet);
    } else if (cov->parsed()) {
      const ExperimentConfig cfg = read_config(config_path, "");
      const CovarianceMatrix4 v = stage("covariance", [&] { return experiment_covariance(cfg); });
      const std::string text = format_covariance(v);
      write_file(out, "covariance.txt", [&](std::ostream& o) { o << text; });
      if (!quiet) std::cout << text;
    } else if (cond->parsed()) {
      std::optional<ExperimentConfig> cfg;
      if (!config_path.empty()) cfg = read_config(config_path, "");
      Measurement m = cfg ? cfg->measurement : Measurement::click;
      int n = cfg ? cfg->fock_n : 1;
      if (!measurement_name.empty()) m = stage("config", [&] { return parse_measurement(measurement_name); });
      else if (!cfg) throw StageFailure{"config", "condition needs --config or --measurement", 2};
      if (fock_n >= 0) n = fock_n;
      const CovarianceMatrix4 v = stage("covariance", [&] {
        if (cov_path.empty()) {
          if (!cfg) throw ConfigError("condition needs --covariance or --config");
          return experiment_covariance(*cfg);
        }
        std::ifstream in(cov_path);
        return direct_source(parse_covariance(in)).v;
      });
      const ConditionResult r = stage("condition", [&] { return condition(v, m, n); });
      write_file(out, "state.json", [&](std::ostream& o) { write_state_json(o, StoredState{r, m, n}); });
      if (!quiet) {
        std::printf("probability=%.9g\nwigner_origin=%.9g\n", r.probability, r.state(0.0, 0.0));
      }
    } else if (met->parsed()) {
      std::optional<ExperimentConfig> cfg;
      if (!config_path.empty()) cfg = read_config(config_path, grid);
      const GridSpec g = cfg ? cfg->grid : stage("config", [&] { return grid.empty() ? GridSpec{} : parse_grid_spec(grid); });
      const StoredState s = stage("metrics", [&] {
        std::ifstream in(state_path);
        return read_state_json(in);
      });
      emit_metrics(s.result, cfg ? &*cfg : nullptr, g, out, quiet);
    } else if (coh->parsed()) {
      const ExperimentConfig cfg = read_config(config_path, "");
      run_coherence(cfg, cfg.coherence.value_or(CoherenceGridSpec{}), out, quiet);
    } else if (scan->parsed()) {
      const ExperimentConfig cfg = read_config(config_path, "");
      ScanConfig sc = cfg.scan.value_or(ScanConfig{});
      if (alpha_min) sc.alpha_min = *alpha_min;
      if (alpha_max) sc.alpha_max = *alpha_max;
      if (samples) sc.samples = *samples;
      if (!objective_name.empty()) sc.objective = stage("config", [&] { return parse_objective(objective_name); });
      run_scan(cfg, sc, out, quiet);
    }
  } catch (const StageFailure& f) {
    std::cerr << "cvcond: stage '" << f.stage << "' failed: " << f.message << '\n';
    return f.code;
  }
  return 0;
}
