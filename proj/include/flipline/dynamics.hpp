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

// The sequential random-scan process: each step picks one selectable site
// uniformly at random and flips it if the rule says it is active. One step is
// one scheduler pick, whether or not anything moved.

#ifndef FLIPLINE_DYNAMICS_HPP
#define FLIPLINE_DYNAMICS_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "flipline/core.hpp"
#include "flipline/rng.hpp"
#include "flipline/rule.hpp"

namespace flipline {

struct StepEvent {
  std::int64_t step = 0;  // 1-based count after this step
  std::int64_t chosen_index = 0;
  bool flipped = false;
  std::int64_t new_h_max = 0;
  std::int64_t new_h_min = 0;
  friend bool operator==(const StepEvent&, const StepEvent&) = default;
};

enum class StopKind {
  kStable,       // no active site
  kChristoffel,  // thickness == per - 1
  kStrip,        // -per+1 <= h_min and h_max <= per-1
  kTarget,       // equals target_christoffel
  kNone,         // run to the step limit
};

std::string_view to_string(StopKind kind) noexcept;
StopKind parse_stop_kind(std::string_view text);

// Every run carries a step limit, whether or not the condition is
// guaranteed to occur.
struct StopCondition {
  StopKind kind = StopKind::kStable;
  std::int64_t step_limit = 0;
};

class Process {
 public:
  Process(Configuration start, RuleParams rule, std::uint64_t seed);

  StepEvent step();

  const Configuration& config() const noexcept { return config_; }
  const RuleParams& rule() const noexcept { return rule_; }
  std::uint64_t seed() const noexcept { return seed_; }
  std::int64_t step_count() const noexcept { return steps_; }
  std::int64_t flip_count() const noexcept { return flips_; }
  const HeightRange& range() const noexcept { return range_; }

  bool satisfies(StopKind kind) const;

 private:
  Configuration config_;
  RuleParams rule_;
  std::uint64_t seed_;
  Rng rng_;
  std::int64_t steps_ = 0;
  std::int64_t flips_ = 0;
  HeightRange range_;
  Word target_;
};

struct Snapshot {
  std::int64_t step = 0;
  Word word;
};

enum class RunOutcome { kConditionMet, kStepLimit };

struct RunOptions {
  StopCondition stop;
  std::optional<std::int64_t> snapshot_every;  // also snapshots step 0 and the end
  bool record_events = true;
  // Called after every step with the event and the configuration it produced.
  std::function<void(const StepEvent&, const Configuration&)> observer;
};

struct Trace {
  Configuration start;
  Configuration terminal;
  std::int64_t sight = 0;
  std::uint64_t seed = 0;
  StopCondition stop;
  std::vector<StepEvent> events;
  std::vector<Snapshot> snapshots;
  std::int64_t steps = 0;
  std::int64_t flips = 0;
  RunOutcome outcome = RunOutcome::kStepLimit;
};

// Steps until the stop condition holds (checked before the first step too)
// or the step limit is exhausted. Throws Error(kInvalidArgument) for a
// non-positive step limit or snapshot period.
Trace run(Process& process, const RunOptions& options);

enum class StartKind { kMaxNonneg, kMinNonpos, kRandom, kRandomNonnegative };

std::string_view to_string(StartKind kind) noexcept;
StartKind parse_start_kind(std::string_view text);

// kMaxNonneg = b^B a^A, kMinNonpos = a^A b^B, kRandom uniform over all
// words with counts (A, B), kRandomNonnegative uniform over nonnegative ones
// (rejection sampling).
Configuration canonical_start(const LineParams& params, StartKind kind, std::uint64_t seed,
                              Topology topology = Topology::kChain);

}  // namespace flipline

#endif  // FLIPLINE_DYNAMICS_HPP
