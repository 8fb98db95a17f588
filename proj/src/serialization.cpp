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

#include "cvcond/serialization.hpp"

#include <istream>
#include <ostream>

#include <json.hpp>

#include "cvcond/errors.hpp"

namespace cvcond {

using nlohmann::json;

void write_state_json(std::ostream& out, const StoredState& s) {
  json doc;
  if (s.measurement) {
    doc["measurement"] = to_string(*s.measurement);
    if (*s.measurement == Measurement::number) doc["n"] = s.fock_n;
  }
  doc["probability"] = s.result.probability;
  doc["norm"] = s.result.state.norm();
  json terms = json::array();
  for (const auto& t : s.result.state.terms()) {
    json poly = json::array();
    const int d = t.poly.degree();
    for (int i = 0; i <= d; ++i) {
      for (int j = 0; i + j <= d; ++j) {
        const double c = t.poly.coeff(i, j);
        if (c != 0.0) poly.push_back({i, j, c});
      }
    }
    terms.push_back({{"sigma", {{t.sigma(0, 0), t.sigma(0, 1)}, {t.sigma(1, 0), t.sigma(1, 1)}}}, {"poly", poly}});
  }
  doc["terms"] = terms;
  out << doc.dump(2) << '\n';
}

StoredState read_state_json(std::istream& in) {
  StoredState s;
  try {
    const json doc = json::parse(in);
    if (doc.contains("measurement")) {
      s.measurement = parse_measurement(doc.at("measurement").get<std::string>());
      if (doc.contains("n")) s.fock_n = doc.at("n").get<int>();
    }
    s.result.probability = doc.at("probability").get<double>();
    std::vector<GaussPolyTerm> terms;
    for (const auto& t : doc.at("terms")) {
      GaussPolyTerm term;
      const auto& sg = t.at("sigma");
      for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) term.sigma(r, c) = sg.at(r).at(c).get<double>();
      int deg = 0;
      for (const auto& m : t.at("poly")) deg = std::max(deg, m.at(0).get<int>() + m.at(1).get<int>());
      term.poly = Polynomial2(deg);
      for (const auto& m : t.at("poly")) {
        const int i = m.at(0).get<int>();
        const int j = m.at(1).get<int>();
        if (i < 0 || j < 0) throw std::invalid_argument("negative monomial exponent");
        term.poly.coeff(i, j) = m.at(2).get<double>();
      }
      terms.push_back(std::move(term));
    }
    s.result.state = GaussPolyState(std::move(terms), doc.at("norm").get<double>());
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed state file: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("malformed state file: ") + e.what());
  }
  return s;
}

}  // namespace cvcond
