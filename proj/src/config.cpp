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

#include "cvcond/config.hpp"

#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <string>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "cvcond/errors.hpp"

namespace cvcond {

namespace {

namespace pt = boost::property_tree;

const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> s = {
      {"source", {"kind", "gamma1", "gamma2", "epsilon", "r", "file"}},
      {"trigger", {"tap_amplitude", "filter_width", "window_center", "window_width", "detector_efficiency", "window"}},
      {"output", {"envelope", "alpha", "file", "center", "reflect_amplitude"}},
      {"losses", {"eta1", "xi1", "eta2", "xi2"}},
      {"measurement", {"kind", "n"}},
      {"outputs", {"grid"}},
      {"scan", {"alpha_min", "alpha_max", "samples", "objective"}},
      {"coherence", {"half_width", "points"}},
  };
  return s;
}

std::string unquote(const std::string& v) {
  if (v.size() >= 2 && v.front() == '"' && v.back() == '"') return v.substr(1, v.size() - 2);
  return v;
}

[[noreturn]] void fail(const std::string& key, const std::string& msg) {
  throw ConfigError("config key '" + key + "': " + msg);
}

class Reader {
 public:
  Reader(const pt::ptree& root, std::string name) : name_(std::move(name)) {
    if (auto it = root.find(name_); it != root.not_found()) sec_ = &it->second;
  }

  bool present() const { return sec_ != nullptr; }
  bool has(const std::string& key) const { return sec_ && sec_->find(key) != sec_->not_found(); }

  std::string str(const std::string& key) const {
    if (!has(key)) throw ConfigError("config section [" + name_ + "] is missing required key '" + key + "'");
    return unquote(sec_->get<std::string>(key));
  }

  std::string str_or(const std::string& key, const std::string& def) const { return has(key) ? str(key) : def; }

  double num(const std::string& key) const {
    const std::string v = str(key);
    char* end = nullptr;
    const double d = std::strtod(v.c_str(), &end);
    if (v.empty() || *end != '\0') fail(name_ + "." + key, "expected a number, got '" + v + "'");
    return d;
  }

  double num_or(const std::string& key, double def) const { return has(key) ? num(key) : def; }

  int integer_or(const std::string& key, int def) const {
    if (!has(key)) return def;
    const std::string v = str(key);
    char* end = nullptr;
    const long n = std::strtol(v.c_str(), &end, 10);
    if (v.empty() || *end != '\0') fail(name_ + "." + key, "expected an integer, got '" + v + "'");
    return static_cast<int>(n);
  }

 private:
  std::string name_;
  const pt::ptree* sec_ = nullptr;
};

template <class F>
auto checked(const std::string& key, F&& f) {
  try {
    return f();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    fail(key, e.what());
  }
}

}  // namespace

ExperimentConfig parse_config(std::istream& in, const std::filesystem::path& base_dir) {
  pt::ptree root;
  try {
    pt::ini_parser::read_ini(in, root);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError("config line " + std::to_string(e.line()) + ": " + e.message());
  }
  ExperimentConfig cfg;
  for (const auto& [name, section] : root) {
    if (section.empty() && !section.data().empty()) fail(name, "key outside of any section");
    if (!schema().count(name)) fail(name, "unknown section [" + name + "]");
    for (const auto& [key, value] : section) {
      if (!schema().at(name).count(key)) fail(name + "." + key, "unknown key in section [" + name + "]");
      cfg.echo.emplace_back(name + "." + key, unquote(value.data()));
    }
  }

  // source
  const Reader src(root, "source");
  if (!src.present()) throw ConfigError("config is missing the [source] section");
  const std::string kind = src.str("kind");
  if (kind == "opo") {
    OpoParams p;
    p.gamma1 = src.num_or("gamma1", 1.0);
    p.gamma2 = src.num_or("gamma2", 0.0);
    p.epsilon = src.num("epsilon");
    checked("source.epsilon", [&] { return opo_kernel(p).decay_rate; });
    cfg.source = OpoSource{p};
  } else if (kind == "tmsv") {
    cfg.source = TmsvSource{src.num("r")};
  } else if (kind == "covariance") {
    const std::filesystem::path file = base_dir / src.str("file");
    std::ifstream cf(file);
    if (!cf) fail("source.file", "cannot open '" + file.string() + "'");
    cfg.source = checked("source.file", [&] { return CovarianceSource{direct_source(parse_covariance(cf)).v}; });
  } else {
    fail("source.kind", "expected opo|tmsv|covariance, got '" + kind + "'");
  }
  const bool is_opo = std::holds_alternative<OpoSource>(cfg.source);

  // trigger
  const Reader trg(root, "trigger");
  if (is_opo && !trg.present()) throw ConfigError("OPO source requires a [trigger] section");
  if (trg.present()) {
    TriggerModeSpec& t = cfg.trigger;
    t.tap_amplitude = trg.num("tap_amplitude");
    const std::string fw = trg.str_or("filter_width", "none");
    if (fw == "none") {
      t.filter_width.reset();
    } else {
      t.filter_width = trg.num("filter_width");
    }
    t.window_center = trg.num_or("window_center", 0.0);
    t.window_width = trg.num("window_width");
    t.detector_efficiency = trg.num_or("detector_efficiency", 1.0);
    const std::string w = trg.str_or("window", "automatic");
    if (w == "automatic") cfg.window = WindowTreatment::automatic;
    else if (w == "collapsed") cfg.window = WindowTreatment::collapsed;
    else if (w == "explicit") cfg.window = WindowTreatment::explicit_;
    else fail("trigger.window", "expected automatic|collapsed|explicit, got '" + w + "'");
    checked("trigger.tap_amplitude", [&] { return build_trigger_mode(t).source_weight; });
  }

  // output
  const Reader out(root, "output");
  if (is_opo && !out.present()) throw ConfigError("OPO source requires an [output] section");
  if (out.present()) {
    cfg.output.center = out.num_or("center", cfg.trigger.window_center);
    const std::string env = out.str_or("envelope", "exponential");
    if (env == "exponential") {
      cfg.output.envelope = ExponentialEnvelope{out.num("alpha")};
    } else if (env == "tabulated") {
      const std::filesystem::path file = base_dir / out.str("file");
      std::ifstream ef(file);
      if (!ef) fail("output.file", "cannot open '" + file.string() + "'");
      cfg.output.envelope = checked("output.file", [&] { return read_envelope_table(ef); });
    } else {
      fail("output.envelope", "expected exponential|tabulated, got '" + env + "'");
    }
    const std::string refl = out.str_or("reflect_amplitude", "auto");
    if (refl != "auto") cfg.reflect_amplitude = out.num("reflect_amplitude");
    checked("output.envelope", [&] {
      OutputModeSpec probe = cfg.output;
      probe.reflect_amplitude = cfg.reflect_amplitude.value_or(0.0);
      return build_output_mode(probe).t_hi;
    });
  }

  // losses
  const Reader los(root, "losses");
  cfg.losses.eta1 = los.num_or("eta1", 0.0);
  cfg.losses.xi1 = los.num_or("xi1", 0.0);
  cfg.losses.eta2 = los.num_or("eta2", 0.0);
  cfg.losses.xi2 = los.num_or("xi2", 0.0);
  checked("losses.eta1", [&] { return apply_loss(CovarianceMatrix4::identity(), cfg.losses)(0, 0); });

  // measurement
  const Reader meas(root, "measurement");
  if (!meas.present() || !meas.has("kind")) throw ConfigError("config requires a [measurement] section with 'kind'");
  cfg.measurement = checked("measurement.kind", [&] { return parse_measurement(meas.str("kind")); });
  cfg.fock_n = meas.integer_or("n", 1);
  if (cfg.measurement == Measurement::number && (cfg.fock_n < 0 || cfg.fock_n > kMaxFockNumber))
    fail("measurement.n", "photon number must be 0, 1 or 2");

  // outputs
  const Reader outs(root, "outputs");
  if (outs.has("grid")) cfg.grid = checked("outputs.grid", [&] { return parse_grid_spec(outs.str("grid")); });

  // scan
  const Reader sc(root, "scan");
  if (sc.present()) {
    ScanConfig s;
    s.alpha_min = sc.num_or("alpha_min", s.alpha_min);
    s.alpha_max = sc.num_or("alpha_max", s.alpha_max);
    s.samples = sc.integer_or("samples", s.samples);
    s.objective = checked("scan.objective", [&] { return parse_objective(sc.str_or("objective", "origin_value")); });
    if (!(s.alpha_min > 0.0) || !(s.alpha_max >= s.alpha_min)) fail("scan.alpha_min", "need 0 < alpha_min <= alpha_max");
    if (s.alpha_max > s.alpha_min && s.samples < 3) fail("scan.samples", "need at least 3 samples");
    cfg.scan = s;
  }

  // coherence
  const Reader coh(root, "coherence");
  if (coh.present()) {
    CoherenceGridSpec g;
    g.half_width = coh.num_or("half_width", g.half_width);
    g.points = coh.integer_or("points", g.points);
    if (!(g.half_width > 0.0) || g.points < 2)
      fail("coherence.points", "need half_width > 0 and points >= 2");
    cfg.coherence = g;
  }

  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  return parse_config(in, path.parent_path());
}

}  // namespace cvcond
