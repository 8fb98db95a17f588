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

#include "cvcond/optimizer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "cvcond/metrics.hpp"

namespace cvcond {

namespace {

// Sign that turns the objective into a minimization.
double orientation(Objective o) { return o == Objective::origin_value ? 1.0 : -1.0; }

}  // namespace

double evaluate_objective(const ExperimentConfig& cfg, double alpha, Objective objective) {
  try {
    const ExperimentResult r = run_experiment(with_alpha(cfg, alpha));
    return objective == Objective::origin_value ? r.summary.wigner_origin : r.summary.fidelity_fock1;
  } catch (const std::exception& e) {
    std::ostringstream os;
    os.precision(9);
    os << "alpha=" << alpha << ": " << e.what();
    throw std::runtime_error(os.str());
  }
}

ScanResult scan_alpha(const ExperimentConfig& cfg, double lo, double hi, Objective objective, int samples,
                      double alpha_tol) {
  if (!(lo > 0.0) || !(hi >= lo) || !std::isfinite(hi)) throw std::invalid_argument("alpha range must be positive with lo <= hi");
  ScanResult res;
  res.objective = objective;
  if (hi == lo) {
    res.table.push_back({lo, evaluate_objective(cfg, lo, objective)});
    res.best_alpha = lo;
    res.best_value = res.table[0].objective;
    return res;
  }
  if (samples < 3) throw std::invalid_argument("alpha scan needs at least 3 samples");

  res.table.resize(samples);
  for (int i = 0; i < samples; ++i) res.table[i].alpha = lo + (hi - lo) * i / (samples - 1);

  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  const unsigned workers = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), samples));
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next++; i < samples; i = next++) {
        try {
          res.table[i].objective = evaluate_objective(cfg, res.table[i].alpha, objective);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mu);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  const double s = orientation(objective);
  int best = 0;
  for (int i = 1; i < samples; ++i)
    if (s * res.table[i].objective < s * res.table[best].objective) best = i;
  res.best_alpha = res.table[best].alpha;
  res.best_value = res.table[best].objective;

  double a = res.table[std::max(best - 1, 0)].alpha;
  double b = res.table[std::min(best + 1, samples - 1)].alpha;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = s * evaluate_objective(cfg, c, objective);
  double fd = s * evaluate_objective(cfg, d, objective);
  while (b - a > alpha_tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = s * evaluate_objective(cfg, c, objective);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = s * evaluate_objective(cfg, d, objective);
    }
  }
  const double refined = fc < fd ? c : d;
  const double refined_value = std::min(fc, fd);
  if (refined_value < s * res.best_value) {
    res.best_alpha = refined;
    res.best_value = s * refined_value;
  }
  return res;
}

void write_scan_csv(std::ostream& out, const ScanResult& r) {
  out << "alpha,objective\n";
  char buf[96];
  for (const auto& p : r.table) {
    std::snprintf(buf, sizeof buf, "%.9g,%.9g\n", p.alpha, p.objective);
    out << buf;
  }
}

}  // namespace cvcond
