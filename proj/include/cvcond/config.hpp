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

#include <filesystem>
#include <iosfwd>

#include "cvcond/experiment.hpp"

namespace cvcond {

/// Sectioned key/value experiment description:
///
///   [source]       kind = opo|tmsv|covariance; gamma1, gamma2, epsilon | r | file
///   [trigger]      tap_amplitude, filter_width (rate or "none"), window_center,
///                  window_width, detector_efficiency, window = automatic|collapsed|explicit
///   [output]       envelope = exponential|tabulated, alpha, file, center,
///                  reflect_amplitude (number or "auto")
///   [losses]       eta1, xi1, eta2, xi2
///   [measurement]  kind = number|on|click|vacuum, n
///   [outputs]      grid = "xmin,xmax,pmin,pmax,nx,np"
///   [scan]         alpha_min, alpha_max, samples, objective = origin_value|fock1_fidelity
///   [coherence]    half_width, points
///
/// INI syntax as read by Boost.PropertyTree: lines starting with '#' or ';'
/// are comments. Unknown sections or keys, duplicates and malformed values
/// throw ConfigError naming the key (or the line, for syntax errors).
/// Relative file paths are resolved against `base_dir`.
ExperimentConfig parse_config(std::istream& in, const std::filesystem::path& base_dir = {});

ExperimentConfig load_config(const std::filesystem::path& path);

}  // namespace cvcond
