// Copyright 2026 The Flipline Authors
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

// The energy used in the convergence argument, evaluated exactly, and a
// Monte Carlo harness measuring coalescence times.
//
// An energy context is fixed by a reference configuration c0 with
// h_max(c0) >= per: H0 = h_max(c0), and Border+ is the residue class modulo
// per (within 1..tot-1) of any index where c0 reaches H0. For a configuration
// c with h_max(c) == H0,
//
//   Top+(c)  = { i in 1..tot-1 : h(c_i) = H0 }
//   Down+(c) = { i in Top+ : i+per <= tot, i+per not in Top+ }
//   Up+(c)   = { i in Top+ : i-per >= 0,   i-per not in Top+ }
//   E(c)     = 2|Top+| + |Down+| + |Up+|
//
// and E(c) = 0 otherwise. The cycle variant adds 2 when Top+ = Border+.

#ifndef FLIPLINE_ANALYSIS_HPP
#define FLIPLINE_ANALYSIS_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "flipline/core.hpp"
#include "flipline/dynamics.hpp"
#include "flipline/rational.hpp"
#include "flipline/rule.hpp"

namespace flipline {

class EnergyContext {
 public:
  // Throws Error(kPrecondition) when h_max(c0) < per.
  explicit EnergyContext(const Configuration& c0);

  // Context for a given level and Border+ residue; same precondition.
  EnergyContext(const LineParams& params, Topology topology, std::int64_t h0,
                std::int64_t residue);

  std::int64_t h0() const noexcept { return h0_; }
  std::int64_t residue() const noexcept { return residue_; }
  const std::vector<std::int64_t>& border_plus() const noexcept { return border_; }
  const LineParams& params() const noexcept { return params_; }
  Topology topology() const noexcept { return topology_; }

 private:
  LineParams params_;
  Topology topology_;
  std::int64_t h0_;
  std::int64_t residue_;
  std::vector<std::int64_t> border_;

  EnergyContext(const LineParams& params, Topology topology,
                std::pair<std::int64_t, std::int64_t> level);
};

struct TopSets {
  std::vector<std::int64_t> top;
  std::vector<std::int64_t> down;
  std::vector<std::int64_t> up;
};

TopSets top_down_up(const Configuration& c, const EnergyContext& ctx);

std::int64_t energy(const Configuration& c, const EnergyContext& ctx);

struct DriftSummary {
  Rational drift;                      // E[E(delta(c)) - E(c) | c]
  std::int64_t changing_indices = 0;   // indices i with E(delta_i(c)) != E(c)
  std::int64_t selectable = 0;         // N
};

// Exact expected one-step change of the energy. Throws Error(kPrecondition)
// when E(c) == 0.
DriftSummary drift_summary(const Configuration& c, const EnergyContext& ctx,
                           const RuleParams& rule);
Rational expected_drift(const Configuration& c, const EnergyContext& ctx,
                        const RuleParams& rule);

// k * E0 / eps. Requires k >= E0 >= 1 and 0 < eps <= 1.
Rational martingale_bound(std::int64_t k, std::int64_t e0, const Rational& eps);

// (2n - 1)^3 (tot - 1).
std::int64_t coalescence_bound(const LineParams& params);

struct ExperimentConfig {
  LineParams params;
  RuleParams rule;
  Topology topology = Topology::kChain;
  StartKind start = StartKind::kMaxNonneg;
  std::optional<Word> start_word;  // overrides `start` when set
  std::int64_t trials = 1;
  std::uint64_t seed = 0;
  StopKind stop = StopKind::kTarget;
  std::int64_t cap = 0;  // 0 = 10 * coalescence_bound
  unsigned threads = 0;  // 0 = hardware concurrency
};

struct TrialResult {
  std::int64_t trial = 0;
  std::uint64_t seed = 0;
  std::int64_t steps = 0;
  bool reached = false;
  std::string terminal;
  // Largest energy seen, with a fresh context each time h_max reaches a new
  // level >= per. Chain topology only; 0 otherwise.
  std::int64_t max_energy = 0;
};

struct ExperimentReport {
  LineParams params;
  std::int64_t sight = 0;
  Topology topology = Topology::kChain;
  StopKind stop = StopKind::kTarget;
  std::int64_t cap = 0;
  std::vector<TrialResult> trials;  // sorted by trial index
  double mean = 0;
  double median = 0;
  std::int64_t max = 0;
  std::int64_t capped = 0;
  std::int64_t bound = 0;
  std::int64_t max_energy = 0;
};

ExperimentReport coalescence_experiment(const ExperimentConfig& config);

// Least-squares slope of log(y) against log(x). Needs two distinct x values
// and all values positive.
double fit_loglog_slope(std::span<const std::pair<double, double>> points);

}  // namespace flipline

#endif  // FLIPLINE_ANALYSIS_HPP
