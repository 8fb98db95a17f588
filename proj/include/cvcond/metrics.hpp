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

#include "cvcond/gauss_poly_wigner.hpp"

namespace cvcond {

/// W(0, 0), evaluated in closed form.
double wigner_at_origin(const GaussPolyState& s);

/// Overlap with |n>, n in {0, 1, 2}.
double fock_fidelity(const GaussPolyState& s, int n);

struct NegativityVolume {
  double volume = 0.0;  ///< ∬ max(0, −W) dx dp
  double dx = 0.0;
  double dp = 0.0;
};

/// Trapezoidal grid sum of the negative part of W.
NegativityVolume negativity_volume(const GaussPolyState& s, const GridSpec& grid = {});

}  // namespace cvcond
