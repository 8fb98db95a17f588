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

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cvcond/errors.hpp"

namespace cvcond {

/// Gauss–Legendre nodes and weights on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Builds an n-point rule by Newton iteration on the Legendre recurrence.
GaussLegendreRule make_gauss_legendre(int n);

/// Shared immutable rule for the orders used internally (cached per order).
const GaussLegendreRule& gauss_legendre(int n);

struct QuadratureOptions {
  double rel_tol = 1e-11;
  double abs_tol = 1e-17;
  int order = 16;
  int max_panels = 20000;
};

/// Fixed-rule integral of a vector-valued integrand over [a, b].
template <std::size_t N, class F>
std::array<double, N> gauss_panel(const F& f, double a, double b, const GaussLegendreRule& rule) {
  std::array<double, N> sum{};
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
    const std::array<double, N> v = f(mid + half * rule.nodes[k]);
    for (std::size_t c = 0; c < N; ++c) sum[c] += rule.weights[k] * v[c];
  }
  for (auto& s : sum) s *= half;
  return sum;
}

/// Adaptive bisection over the intervals delimited by `breaks` (sorted,
/// at least two entries). The integrand must be smooth inside each interval.
/// Each panel is accepted when the Gauss estimate on the whole panel agrees
/// with the sum over its two halves to a share of the global target
/// max(rel_tol·|I|, abs_tol), computed componentwise.
template <std::size_t N, class F>
std::array<double, N> integrate_piecewise(const F& f, std::span<const double> breaks,
                                          const QuadratureOptions& opt = {}) {
  using Vec = std::array<double, N>;
  const GaussLegendreRule& rule = gauss_legendre(opt.order);
  std::array<double, N> total{};
  if (breaks.size() < 2) return total;
  const double span = breaks.back() - breaks.front();
  if (!(span > 0.0)) return total;

  struct Panel {
    double a, b;
    Vec whole;
  };
  std::vector<Panel> work;
  Vec coarse{};
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double a = breaks[i], b = breaks[i + 1];
    if (!(b > a)) continue;
    Panel p{a, b, gauss_panel<N>(f, a, b, rule)};
    for (std::size_t c = 0; c < N; ++c) coarse[c] += p.whole[c];
    work.push_back(p);
  }
  std::array<double, N> target{};
  for (std::size_t c = 0; c < N; ++c) target[c] = std::max(opt.rel_tol * std::abs(coarse[c]), opt.abs_tol);

  std::array<double, N> err_total{};
  int panels = 0;
  while (!work.empty()) {
    Panel p = work.back();
    work.pop_back();
    const double m = 0.5 * (p.a + p.b);
    const Vec left = gauss_panel<N>(f, p.a, m, rule);
    const Vec right = gauss_panel<N>(f, m, p.b, rule);
    const double share = (p.b - p.a) / span;
    bool ok = true;
    Vec err{};
    for (std::size_t c = 0; c < N; ++c) {
      err[c] = std::abs(p.whole[c] - (left[c] + right[c]));
      if (err[c] > target[c] * share) ok = false;
    }
    // Panels shrinking to rounding level cannot improve further.
    if (!ok && (m <= p.a || m >= p.b || (p.b - p.a) < 1e-13 * span)) ok = true;
    if (ok) {
      for (std::size_t c = 0; c < N; ++c) {
        total[c] += left[c] + right[c];
        err_total[c] += err[c];
      }
      continue;
    }
    if (++panels > opt.max_panels) {
      double est = 0.0, bound = 0.0;
      for (std::size_t c = 0; c < N; ++c) {
        est = std::max(est, std::abs(total[c] + p.whole[c]));
        bound = std::max(bound, err_total[c] + err[c]);
      }
      throw QuadratureError("quadrature did not converge within " + std::to_string(opt.max_panels) +
                                " panels",
                            est, bound);
    }
    work.push_back({p.a, m, left});
    work.push_back({m, p.b, right});
  }
  return total;
}

template <class F>
double integrate(const F& f, double a, double b, const QuadratureOptions& opt = {}) {
  const std::array<double, 2> br{a, b};
  return integrate_piecewise<1>([&](double t) { return std::array<double, 1>{f(t)}; }, br, opt)[0];
}

/// Sorted, deduplicated breakpoints clipped to [lo, hi], endpoints included.
std::vector<double> merge_breakpoints(double lo, double hi, std::span<const double> extra);

}  // namespace cvcond
