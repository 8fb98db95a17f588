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

#include "cvcond/metrics.hpp"

#include <algorithm>

namespace cvcond {

double wigner_at_origin(const GaussPolyState& s) { return s(0.0, 0.0); }

double fock_fidelity(const GaussPolyState& s, int n) { return overlap(s, n); }

NegativityVolume negativity_volume(const GaussPolyState& s, const GridSpec& grid) {
  const WignerGrid g = evaluate_grid(s, grid);
  NegativityVolume out;
  out.dx = grid.dx();
  out.dp = grid.dp();
  double sum = 0.0;
  for (int j = 0; j < grid.np; ++j) {
    const double wj = (j == 0 || j == grid.np - 1) ? 0.5 : 1.0;
    for (int i = 0; i < grid.nx; ++i) {
      const double wi = (i == 0 || i == grid.nx - 1) ? 0.5 : 1.0;
      sum += wi * wj * std::max(0.0, -g.values(j, i));
    }
  }
  out.volume = sum * out.dx * out.dp;
  return out;
}

}  // namespace cvcond
