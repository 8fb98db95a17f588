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

#include <cmath>
#include <sstream>

#include "gtest/gtest.h"

#include "cvcond/errors.hpp"

using namespace cvcond;

namespace {

const char* kMinimal = R"(
[source]
kind = opo
epsilon = 0.01
[trigger]
tap_amplitude = 0.1
filter_width = 5
window_width = 0.02
[output]
alpha = 0.5
[measurement]
kind = click
)";

ExperimentConfig parse(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

std::string error_of(const std::string& text) {
  try {
    parse(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(parse_config, minimal_defaults) {
  const ExperimentConfig c = parse(kMinimal);
  const auto& opo = std::get<OpoSource>(c.source);
  EXPECT_EQ(opo.params.gamma1, 1.0);
  EXPECT_EQ(opo.params.gamma2, 0.0);
  EXPECT_EQ(opo.params.epsilon, 0.01);
  EXPECT_EQ(*c.trigger.filter_width, 5.0);
  EXPECT_EQ(c.trigger.detector_efficiency, 1.0);
  EXPECT_EQ(c.window, WindowTreatment::automatic);
  EXPECT_EQ(std::get<ExponentialEnvelope>(c.output.envelope).alpha, 0.5);
  EXPECT_FALSE(c.reflect_amplitude.has_value());
  EXPECT_EQ(c.measurement, Measurement::click);
  EXPECT_FALSE(c.scan.has_value());
  EXPECT_FALSE(c.coherence.has_value());
  EXPECT_EQ(c.echo.front(), (std::pair<std::string, std::string>{"source.kind", "opo"}));
  EXPECT_EQ(c.echo.size(), 7u);
}

TEST(parse_config, fixtures_load) {
  const ExperimentConfig a = load_config(std::string(CVCOND_FIXTURES) + "/config_a.cfg");
  EXPECT_NEAR(*a.trigger.filter_width, 2.0 * M_PI * 5.0, 1e-14);
  EXPECT_EQ(a.grid.nx, 161);
  const ExperimentConfig s = load_config(std::string(CVCOND_FIXTURES) + "/config_b_scan.cfg");
  ASSERT_TRUE(s.scan.has_value());
  EXPECT_EQ(s.scan->samples, 50);
  EXPECT_EQ(s.scan->objective, Objective::origin_value);
  EXPECT_EQ(load_config(std::string(CVCOND_FIXTURES) + "/config_a_loss.cfg").losses.eta2, 0.25);
  EXPECT_TRUE(load_config(std::string(CVCOND_FIXTURES) + "/coherence_weak.cfg").coherence.has_value());
}

TEST(parse_config, other_sources_and_options) {
  const ExperimentConfig t = parse("[source]\nkind = tmsv\nr = 0.3\n[measurement]\nkind = number\nn = 2\n");
  EXPECT_EQ(std::get<TmsvSource>(t.source).r, 0.3);
  EXPECT_EQ(t.fock_n, 2);
  const ExperimentConfig f = parse(std::string(kMinimal) +
                                   "[losses]\neta2 = 0.25\nxi1 = 0.01\n[outputs]\ngrid = \"-3,3,-3,3,31,31\"\n");
  EXPECT_EQ(f.losses.eta2, 0.25);
  EXPECT_EQ(f.losses.xi1, 0.01);
  EXPECT_EQ(f.grid.np, 31);
  std::string none = kMinimal;
  none.replace(none.find("filter_width = 5"), 16, "filter_width = none");
  EXPECT_FALSE(parse(none).trigger.filter_width.has_value());
}

TEST(parse_config, unknown_key_names_key) {
  const std::string e = error_of(std::string(kMinimal) + "[losses]\neta3 = 0.1\n");
  EXPECT_NE(e.find("losses.eta3"), std::string::npos) << e;
  const std::string syntax = error_of("[source]\nkind = opo\nnot a key value line\n");
  EXPECT_NE(syntax.find("line 3"), std::string::npos) << syntax;
  EXPECT_NE(error_of("[source]\nkind = tmsv\n[source]\nr = 1\n").find("duplicate"), std::string::npos);
  EXPECT_NE(error_of("[nonsense]\nx = 1\n").find("unknown section"), std::string::npos);
  EXPECT_NE(error_of("kind = opo\n").find("outside"), std::string::npos);
}

TEST(parse_config, empty_measurement_section) {
  std::string text = kMinimal;
  text.erase(text.find("kind = click"));
  EXPECT_NE(error_of(text).find("measurement"), std::string::npos);
  text = kMinimal;
  text.erase(text.find("[measurement]"));
  EXPECT_NE(error_of(text).find("measurement"), std::string::npos);
}

TEST(parse_config, malformed_values) {
  std::string text = kMinimal;
  text.replace(text.find("alpha = 0.5"), 11, "alpha = fast");
  const std::string e = error_of(text);
  EXPECT_NE(e.find("output.alpha"), std::string::npos) << e;
  EXPECT_NE(e.find("'fast'"), std::string::npos) << e;
  EXPECT_NE(error_of(std::string(kMinimal) + "[scan]\nsamples = 2\n").find("scan.samples"), std::string::npos);
  EXPECT_NE(error_of(std::string(kMinimal) + "[losses]\neta1 = 2\n").find("losses"), std::string::npos);
  EXPECT_NE(error_of("[source]\nkind = laser\n[measurement]\nkind = click\n").find("source.kind"), std::string::npos);
  EXPECT_NE(error_of("[source]\nkind = tmsv\nr = 1\nr = 2\n").find("duplicate"), std::string::npos);
  EXPECT_NE(error_of("[source]\nkind = tmsv\nr = 1\n[measurement]\nkind = number\nn = 3\n").find("measurement.n"),
            std::string::npos);
}

TEST(parse_config, physics_errors_are_attributed) {
  std::string text = kMinimal;
  text.replace(text.find("epsilon = 0.01"), 14, "epsilon = 0.60");
  const std::string e = error_of(text);
  EXPECT_NE(e.find("source.epsilon"), std::string::npos) << e;
  EXPECT_NE(e.find("threshold"), std::string::npos) << e;
  text = kMinimal;
  text.replace(text.find("window_width = 0.02"), 19, "window_width = 0   ");
  EXPECT_NE(error_of(text).find("window_width"), std::string::npos);
}

TEST(parse_config, opo_requires_modes) {
  EXPECT_NE(error_of("[source]\nkind = opo\nepsilon = 0.1\n[measurement]\nkind = click\n").find("[trigger]"),
            std::string::npos);
}

TEST(load_config, missing_file) { EXPECT_THROW(load_config("/nonexistent/x.cfg"), ConfigError); }
