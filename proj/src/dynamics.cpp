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

#include "flipline/dynamics.hpp"

#include <cassert>
#include <string>

#include "flipline/activity.hpp"
#include "flipline/errors.hpp"

namespace flipline {

std::string_view to_string(StopKind kind) noexcept {
  switch (kind) {
    case StopKind::kStable: return "stable";
    case StopKind::kChristoffel: return "christoffel";
    case StopKind::kStrip: return "strip";
    case StopKind::kTarget: return "target";
    case StopKind::kNone: return "none";
  }
  return "none";
}

StopKind parse_stop_kind(std::string_view text) {
  for (auto k : {StopKind::kStable, StopKind::kChristoffel, StopKind::kStrip,
                 StopKind::kTarget, StopKind::kNone}) {
    if (text == to_string(k)) return k;
  }
  fail(ErrorCode::kInvalidArgument, "unknown stop condition '" + std::string(text) + "'");
}

std::string_view to_string(StartKind kind) noexcept {
  switch (kind) {
    case StartKind::kMaxNonneg: return "max-nonneg";
    case StartKind::kMinNonpos: return "min-nonpos";
    case StartKind::kRandom: return "random";
    case StartKind::kRandomNonnegative: return "random-nonneg";
  }
  return "random";
}

StartKind parse_start_kind(std::string_view text) {
  for (auto k : {StartKind::kMaxNonneg, StartKind::kMinNonpos, StartKind::kRandom,
                 StartKind::kRandomNonnegative}) {
    if (text == to_string(k)) return k;
  }
  fail(ErrorCode::kInvalidArgument, "unknown start kind '" + std::string(text) + "'");
}

Process::Process(Configuration start, RuleParams rule, std::uint64_t seed)
    : config_(std::move(start)),
      rule_(rule),
      seed_(seed),
      rng_(seed),
      range_(height_range(config_)),
      target_(target_christoffel(config_.params(), config_.topology()).word()) {}

StepEvent Process::step() {
  const auto first = first_selectable(config_.topology());
  const auto count = static_cast<std::uint64_t>(selectable_count(config_));
  const auto i = first + static_cast<std::int64_t>(rng_.uniform_index(count));
  StepEvent event;
  event.step = ++steps_;
  event.chosen_index = i;
  if (is_active(config_, i, rule_)) {
    [[maybe_unused]] const auto before = range_;
    config_ = flip(config_, i);
    range_ = height_range(config_);
    ++flips_;
    event.flipped = true;
    assert(range_.thickness() <= before.thickness());
    assert(config_.topology() == Topology::kCycle ||
           (range_.min >= before.min && range_.max <= before.max));
  }
  event.new_h_max = range_.max;
  event.new_h_min = range_.min;
  return event;
}

bool Process::satisfies(StopKind kind) const {
  const auto per = config_.params().per();
  switch (kind) {
    case StopKind::kStable: return is_stable(config_, rule_);
    case StopKind::kChristoffel: return range_.thickness() == per - 1;
    case StopKind::kStrip: return range_.min >= -per + 1 && range_.max <= per - 1;
    case StopKind::kTarget: return config_.word() == target_;
    case StopKind::kNone: return false;
  }
  return false;
}

Trace run(Process& process, const RunOptions& options) {
  require(options.stop.step_limit > 0, ErrorCode::kInvalidArgument,
          "a run needs a positive step limit");
  require(!options.snapshot_every || *options.snapshot_every > 0,
          ErrorCode::kInvalidArgument, "snapshot period must be positive");

  Trace trace{process.config(), process.config(), process.rule().sight(), process.seed(),
              options.stop};
  const auto start_steps = process.step_count();
  const auto start_flips = process.flip_count();
  const auto snapshot = [&](std::int64_t step) {
    if (trace.snapshots.empty() || trace.snapshots.back().step != step) {
      trace.snapshots.push_back({step, process.config().word()});
    }
  };
  if (options.snapshot_every) snapshot(0);

  bool met = process.satisfies(options.stop.kind);
  std::int64_t done = 0;
  while (!met && done < options.stop.step_limit) {
    const StepEvent event = process.step();
    ++done;
    if (options.record_events) trace.events.push_back(event);
    if (options.observer) options.observer(event, process.config());
    if (event.flipped) met = process.satisfies(options.stop.kind);
    if (options.snapshot_every && done % *options.snapshot_every == 0) snapshot(done);
  }
  if (options.snapshot_every) snapshot(done);

  trace.terminal = process.config();
  trace.steps = process.step_count() - start_steps;
  trace.flips = process.flip_count() - start_flips;
  trace.outcome = met ? RunOutcome::kConditionMet : RunOutcome::kStepLimit;
  return trace;
}

Configuration canonical_start(const LineParams& params, StartKind kind, std::uint64_t seed,
                              Topology topology) {
  const auto na = static_cast<std::size_t>(params.a_count());
  const auto nb = static_cast<std::size_t>(params.b_count());
  Word word;
  word.reserve(na + nb);
  if (kind == StartKind::kMinNonpos) {
    word.assign(na, Letter::kA);
    word.insert(word.end(), nb, Letter::kB);
    return Configuration(std::move(word), params, topology);
  }
  word.assign(nb, Letter::kB);
  word.insert(word.end(), na, Letter::kA);
  if (kind == StartKind::kMaxNonneg) return Configuration(std::move(word), params, topology);

  Rng rng(seed);
  const auto shuffle = [&] {
    for (std::size_t k = word.size(); k > 1; --k) {
      std::swap(word[k - 1], word[rng.uniform_index(k)]);
    }
  };
  if (kind == StartKind::kRandom) {
    shuffle();
    return Configuration(std::move(word), params, topology);
  }
  constexpr int kMaxAttempts = 10'000'000;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    shuffle();
    Configuration candidate(word, params, topology);
    if (is_nonnegative(candidate)) return candidate;
  }
  fail(ErrorCode::kLimitExceeded, "no nonnegative configuration sampled");
}

}  // namespace flipline
