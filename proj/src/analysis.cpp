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

#include "flipline/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "flipline/activity.hpp"
#include "flipline/errors.hpp"

namespace flipline {

namespace {

// (H0, i0 mod per) for a reference configuration.
std::pair<std::int64_t, std::int64_t> reference_level(const Configuration& c0) {
  const auto h = height_profile(c0);
  const auto top = std::max_element(h.begin(), h.end());
  require(*top >= c0.params().per(), ErrorCode::kPrecondition,
          "energy context needs h_max(c0) >= per (h_max = " + std::to_string(*top) +
              ", per = " + std::to_string(c0.params().per()) + ")");
  // h(c_0) = h(c_tot) = 0 < per, so the maximum sits at an inner index.
  const auto i0 = static_cast<std::int64_t>(top - h.begin());
  return {*top, i0 % c0.params().per()};
}

}  // namespace

EnergyContext::EnergyContext(const Configuration& c0)
    : EnergyContext(c0.params(), c0.topology(), reference_level(c0)) {}

EnergyContext::EnergyContext(const LineParams& params, Topology topology,
                             std::pair<std::int64_t, std::int64_t> level)
    : EnergyContext(params, topology, level.first, level.second) {}

EnergyContext::EnergyContext(const LineParams& params, Topology topology, std::int64_t h0,
                             std::int64_t residue)
    : params_(params), topology_(topology), h0_(h0), residue_(residue) {
  require(h0 >= params.per(), ErrorCode::kPrecondition,
          "energy context needs H0 >= per");
  require(residue >= 0 && residue < params.per(), ErrorCode::kInvalidArgument,
          "Border+ residue must lie in [0, per)");
  for (std::int64_t i = 1; i < params.tot(); ++i) {
    if (i % params.per() == residue) border_.push_back(i);
  }
}

TopSets top_down_up(const Configuration& c, const EnergyContext& ctx) {
  const auto h = height_profile(c);
  const auto tot = c.tot();
  const auto per = c.params().per();
  std::vector<char> in_top(static_cast<std::size_t>(tot + 1), 0);
  TopSets sets;
  for (std::int64_t i = 1; i < tot; ++i) {
    if (h[static_cast<std::size_t>(i)] == ctx.h0()) {
      sets.top.push_back(i);
      in_top[static_cast<std::size_t>(i)] = 1;
    }
  }
  for (auto i : sets.top) {
    if (i + per <= tot && !in_top[static_cast<std::size_t>(i + per)]) sets.down.push_back(i);
    if (i - per >= 0 && !in_top[static_cast<std::size_t>(i - per)]) sets.up.push_back(i);
  }
  return sets;
}

std::int64_t energy(const Configuration& c, const EnergyContext& ctx) {
  if (h_max(c) != ctx.h0()) return 0;
  const auto sets = top_down_up(c, ctx);
  auto e = static_cast<std::int64_t>(2 * sets.top.size() + sets.down.size() + sets.up.size());
  if (ctx.topology() == Topology::kCycle && sets.top == ctx.border_plus()) e += 2;
  return e;
}

DriftSummary drift_summary(const Configuration& c, const EnergyContext& ctx,
                           const RuleParams& rule) {
  const auto e = energy(c, ctx);
  require(e > 0, ErrorCode::kPrecondition, "expected drift needs E(c) > 0");
  DriftSummary out;
  out.selectable = selectable_count(c);
  std::int64_t total = 0;
  const auto first = first_selectable(c.topology());
  for (std::int64_t i = first; i < first + out.selectable; ++i) {
    if (!is_active(c, i, rule)) continue;
    const auto change = energy(flip(c, i), ctx) - e;
    total += change;
    if (change != 0) ++out.changing_indices;
  }
  out.drift = Rational(total, out.selectable);
  return out;
}

Rational expected_drift(const Configuration& c, const EnergyContext& ctx,
                        const RuleParams& rule) {
  return drift_summary(c, ctx, rule).drift;
}

Rational martingale_bound(std::int64_t k, std::int64_t e0, const Rational& eps) {
  require(e0 >= 1 && k >= e0, ErrorCode::kPrecondition, "martingale bound needs k >= E0 >= 1");
  require(eps > 0 && eps <= 1, ErrorCode::kPrecondition,
          "martingale bound needs 0 < eps <= 1");
  return Rational(k) * e0 / eps;
}

std::int64_t coalescence_bound(const LineParams& params) {
  const auto m = 2 * params.n() - 1;
  return m * m * m * (params.tot() - 1);
}

namespace {

TrialResult run_trial(const ExperimentConfig& cfg, std::int64_t trial, std::int64_t cap) {
  TrialResult result;
  result.trial = trial;
  result.seed = substream_seed(cfg.seed, static_cast<std::uint64_t>(trial));
  const auto start = cfg.start_word
                         ? Configuration(*cfg.start_word, cfg.params, cfg.topology)
                         : canonical_start(cfg.params, cfg.start,
                                           splitmix64(result.seed), cfg.topology);
  Process process(start, cfg.rule, result.seed);

  std::optional<EnergyContext> ctx;
  std::int64_t level = 0;
  const auto track_energy = [&](const Configuration& c, std::int64_t hmax) {
    if (cfg.topology != Topology::kChain || hmax < cfg.params.per()) return;
    if (!ctx || hmax != level) {
      ctx.emplace(c);
      level = hmax;
    }
    result.max_energy = std::max(result.max_energy, energy(c, *ctx));
  };
  track_energy(process.config(), process.range().max);

  RunOptions options;
  options.stop = {cfg.stop, cap};
  options.record_events = false;
  options.observer = [&](const StepEvent& ev, const Configuration& c) {
    if (ev.flipped) track_energy(c, ev.new_h_max);
  };
  const Trace trace = run(process, options);
  result.steps = trace.steps;
  result.reached = trace.outcome == RunOutcome::kConditionMet;
  result.terminal = to_string(trace.terminal.word());
  return result;
}

}  // namespace

ExperimentReport coalescence_experiment(const ExperimentConfig& cfg) {
  require(cfg.trials >= 1, ErrorCode::kInvalidArgument, "need at least one trial");
  require(cfg.cap >= 0, ErrorCode::kInvalidArgument, "cap must be nonnegative");
  ExperimentReport report{cfg.params, cfg.rule.sight(), cfg.topology, cfg.stop};
  report.bound = coalescence_bound(cfg.params);
  report.cap = cfg.cap > 0 ? cfg.cap : 10 * report.bound;
  report.trials.resize(static_cast<std::size_t>(cfg.trials));

  unsigned threads = cfg.threads ? cfg.threads : std::thread::hardware_concurrency();
  threads = std::clamp<unsigned>(threads, 1, static_cast<unsigned>(cfg.trials));
  std::atomic<std::int64_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  const auto worker = [&] {
    for (auto t = next++; t < cfg.trials; t = next++) {
      try {
        report.trials[static_cast<std::size_t>(t)] = run_trial(cfg, t, report.cap);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned k = 0; k < threads; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);

  std::vector<std::int64_t> times;
  times.reserve(report.trials.size());
  double sum = 0;
  for (const auto& t : report.trials) {
    times.push_back(t.steps);
    sum += static_cast<double>(t.steps);
    if (!t.reached) ++report.capped;
    report.max_energy = std::max(report.max_energy, t.max_energy);
  }
  std::sort(times.begin(), times.end());
  report.mean = sum / static_cast<double>(times.size());
  const auto mid = times.size() / 2;
  report.median = times.size() % 2 ? static_cast<double>(times[mid])
                                   : 0.5 * static_cast<double>(times[mid - 1] + times[mid]);
  report.max = times.back();
  return report;
}

double fit_loglog_slope(std::span<const std::pair<double, double>> points) {
  require(points.size() >= 2, ErrorCode::kInvalidArgument, "need at least two points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [x, y] : points) {
    require(x > 0 && y > 0, ErrorCode::kInvalidArgument, "log-log fit needs positive values");
    const double lx = std::log(x);
    const double ly = std::log(y);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const auto m = static_cast<double>(points.size());
  const double denom = m * sxx - sx * sx;
  require(denom > 1e-12, ErrorCode::kInvalidArgument, "log-log fit needs distinct x values");
  return (m * sxy - sx * sy) / denom;
}

}  // namespace flipline
