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

#include <iosfwd>
#include <optional>

#include "cvcond/conditioning.hpp"

namespace cvcond {

/// Conditioned state as stored on disk, with the outcome that produced it.
struct StoredState {
  ConditionResult result;
  std::optional<Measurement> measurement;
  int fock_n = 1;
};

/// JSON document {"measurement", "n", "probability", "norm", "terms": [{"sigma",
/// "poly": [[i, j, c], ...]}]}. Numbers round-trip exactly.
void write_state_json(std::ostream& out, const StoredState& s);
StoredState read_state_json(std::istream& in);

}  // namespace cvcond
