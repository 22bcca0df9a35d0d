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

#include <gtest/gtest.h>

#include <map>
#include <set>

#include "flipline/activity.hpp"
#include "flipline/dynamics.hpp"
#include "flipline/errors.hpp"
#include "flipline/oracle.hpp"
#include "flipline/rng.hpp"
#include "reference.hpp"

namespace flipline {
namespace {

Configuration cfg(const std::string& w, std::int64_t ta, std::int64_t tb, std::int64_t n,
                  Topology t = Topology::kChain) {
  return Configuration(parse_word(w), LineParams(ta, tb, n), t);
}

RunOptions until(StopKind kind, std::int64_t cap) {
  RunOptions o;
  o.stop = {kind, cap};
  return o;
}

TEST(Rng, UniformIndexCoversRangeEvenly) {
  Rng rng(42);
  std::vector<int> hist(7, 0);
  for (int k = 0; k < 70000; ++k) ++hist[rng.uniform_index(7)];
  for (int h : hist) EXPECT_NEAR(h, 10000, 500);
}

TEST(Rng, SubstreamsDiffer) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t t = 0; t < 1000; ++t) seen.insert(substream_seed(9, t));
  EXPECT_EQ(seen.size(), 1000u);
  EXPECT_NE(substream_seed(1, 0), substream_seed(2, 0));
}

TEST(Process, SameSeedSameTrajectory) {
  const auto start = canonical_start(LineParams(3, 2, 4), StartKind::kMaxNonneg, 0);
  Process p1(start, RuleParams(5), 99);
  Process p2(start, RuleParams(5), 99);
  for (int k = 0; k < 2000; ++k) ASSERT_EQ(p1.step(), p2.step());
  EXPECT_EQ(p1.config(), p2.config());
}

TEST(Process, DifferentSeedsDiverge) {
  const auto start = canonical_start(LineParams(3, 2, 4), StartKind::kMaxNonneg, 0);
  Process p1(start, RuleParams(5), 1);
  Process p2(start, RuleParams(5), 2);
  int same = 0;
  for (int k = 0; k < 200; ++k) same += p1.step().chosen_index == p2.step().chosen_index;
  EXPECT_LT(same, 100);
}

TEST(Process, StableConfigurationNeverFlips) {
  Process p(target_christoffel(LineParams(3, 2, 3)), RuleParams(5), 4);
  for (int k = 0; k < 500; ++k) EXPECT_FALSE(p.step().flipped);
  EXPECT_EQ(p.flip_count(), 0);
  EXPECT_EQ(p.step_count(), 500);
}

TEST(Process, ChoosesSelectableIndicesUniformly) {
  Process p(cfg("bbaa", 1, 1, 2), RuleParams(2), 8);
  std::map<std::int64_t, int> hist;
  for (int k = 0; k < 3000; ++k) {
    Process q(cfg("bbaa", 1, 1, 2), RuleParams(2), static_cast<std::uint64_t>(k));
    ++hist[q.step().chosen_index];
  }
  ASSERT_EQ(hist.size(), 3u);
  for (const auto& [i, h] : hist) {
    EXPECT_GE(i, 1);
    EXPECT_LE(i, 3);
    EXPECT_NEAR(h, 1000, 120);
  }
}

TEST(Process, EventsMatchConfiguration) {
  Process p(canonical_start(LineParams(2, 1, 4), StartKind::kRandom, 3), RuleParams(3), 5);
  for (int k = 0; k < 300; ++k) {
    const auto before = p.config();
    const auto e = p.step();
    const auto after = p.config();
    EXPECT_EQ(e.step, k + 1);
    EXPECT_EQ(e.new_h_max, h_max(after));
    EXPECT_EQ(e.new_h_min, h_min(after));
    if (e.flipped) {
      EXPECT_TRUE(is_active(before, e.chosen_index, RuleParams(3)));
      EXPECT_EQ(after, flip(before, e.chosen_index));
    } else {
      EXPECT_EQ(after, before);
    }
  }
}

TEST(Run, TwoByTwoReachesTarget) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Process p(cfg("bbaa", 1, 1, 2), RuleParams(2), seed);
    const auto t = run(p, until(StopKind::kTarget, 1000));
    EXPECT_EQ(t.outcome, RunOutcome::kConditionMet);
    EXPECT_EQ(to_string(t.terminal.word()), "baba");
    EXPECT_EQ(t.flips, 1);
  }
}

TEST(Run, TargetAlreadyStable) {
  const auto target = target_christoffel(LineParams(3, 2, 4));
  Process p(target, RuleParams(5), 1);
  const auto t = run(p, until(StopKind::kStable, 10));
  EXPECT_EQ(t.outcome, RunOutcome::kConditionMet);
  EXPECT_EQ(t.steps, 0);
  EXPECT_EQ(t.flips, 0);
  EXPECT_EQ(t.terminal, target);
}

TEST(Run, StuckConfigurationExhaustsCap) {
  Process p(stuck_config(3), RuleParams(5), 7);
  const auto t = run(p, until(StopKind::kChristoffel, 1'000'000));
  EXPECT_EQ(t.outcome, RunOutcome::kStepLimit);
  EXPECT_EQ(t.steps, 1'000'000);
  EXPECT_EQ(thickness(t.terminal), 6);
}

TEST(Run, MonotoneUnderVisibility) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto kind = seed % 2 == 0 ? StartKind::kRandomNonnegative : StartKind::kMaxNonneg;
    const auto start = canonical_start(LineParams(3, 2, 5), kind, seed);
    Process p(start, RuleParams(5), seed);
    auto lo = h_min(start);
    auto hi = h_max(start);
    RunOptions o = until(StopKind::kTarget, 200000);
    o.record_events = false;
    o.observer = [&](const StepEvent& e, const Configuration&) {
      EXPECT_GE(e.new_h_min, lo);
      EXPECT_LE(e.new_h_max, hi);
      lo = e.new_h_min;
      hi = e.new_h_max;
    };
    const auto t = run(p, o);
    EXPECT_EQ(t.outcome, RunOutcome::kConditionMet);
    EXPECT_TRUE(is_christoffel(t.terminal));
    EXPECT_TRUE(t.events.empty());
  }
}

TEST(Run, ArbitraryStartsStayMonotone) {
  // From arbitrary chain starts the process may get stuck short of a
  // Christoffel configuration, but the range still never widens.
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto start = canonical_start(LineParams(3, 2, 5), StartKind::kRandom, seed);
    Process p(start, RuleParams(5), seed);
    auto lo = h_min(start);
    auto hi = h_max(start);
    for (int k = 0; k < 20000; ++k) {
      const auto e = p.step();
      ASSERT_GE(e.new_h_min, lo);
      ASSERT_LE(e.new_h_max, hi);
      lo = e.new_h_min;
      hi = e.new_h_max;
    }
  }
}

TEST(Run, SnapshotsScheduleAndEnd) {
  Process p(canonical_start(LineParams(3, 2, 3), StartKind::kMaxNonneg, 0), RuleParams(5), 3);
  RunOptions o = until(StopKind::kTarget, 100000);
  o.snapshot_every = 25;
  const auto t = run(p, o);
  ASSERT_GE(t.snapshots.size(), 2u);
  EXPECT_EQ(t.snapshots.front().step, 0);
  EXPECT_EQ(t.snapshots.front().word, t.start.word());
  EXPECT_EQ(t.snapshots.back().step, t.steps);
  EXPECT_EQ(t.snapshots.back().word, t.terminal.word());
  for (std::size_t k = 1; k + 1 < t.snapshots.size(); ++k) {
    EXPECT_EQ(t.snapshots[k].step, static_cast<std::int64_t>(25 * k));
  }
  EXPECT_EQ(static_cast<std::int64_t>(t.events.size()), t.steps);
}

TEST(Run, StopKindsAgreeWithDefinitions) {
  const auto strip = cfg("abab", 1, 1, 2);
  Process p(strip, RuleParams(2), 0);
  EXPECT_TRUE(p.satisfies(StopKind::kStrip));
  EXPECT_TRUE(p.satisfies(StopKind::kChristoffel));
  EXPECT_TRUE(p.satisfies(StopKind::kStable));
  EXPECT_FALSE(p.satisfies(StopKind::kTarget));
  EXPECT_FALSE(p.satisfies(StopKind::kNone));
}

TEST(Run, CycleReachesChristoffel) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto start =
        canonical_start(LineParams(3, 2, 4), StartKind::kRandom, seed, Topology::kCycle);
    Process p(start, RuleParams(5), seed);
    const auto t = run(p, until(StopKind::kChristoffel, 1'000'000));
    EXPECT_EQ(t.outcome, RunOutcome::kConditionMet);
  }
}

TEST(Start, CanonicalKinds) {
  const LineParams p(1, 1, 2);
  const auto max = canonical_start(p, StartKind::kMaxNonneg, 0);
  EXPECT_EQ(to_string(max.word()), "bbaa");
  EXPECT_EQ(h_max(max), 2);
  EXPECT_EQ(to_string(canonical_start(p, StartKind::kMinNonpos, 0).word()), "aabb");
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    EXPECT_TRUE(is_nonnegative(canonical_start(LineParams(3, 2, 3),
                                               StartKind::kRandomNonnegative, seed)));
  }
  EXPECT_EQ(canonical_start(LineParams(3, 2, 3), StartKind::kRandom, 5),
            canonical_start(LineParams(3, 2, 3), StartKind::kRandom, 5));
}

TEST(Start, RandomIsUniformOverWords) {
  const LineParams p(1, 1, 2);
  std::map<std::string, int> hist;
  for (std::uint64_t seed = 0; seed < 6000; ++seed) {
    ++hist[to_string(canonical_start(p, StartKind::kRandom, seed).word())];
  }
  ASSERT_EQ(hist.size(), 6u);
  for (const auto& [w, h] : hist) EXPECT_NEAR(h, 1000, 130) << w;
}

TEST(Names, RoundTrip) {
  for (auto k : {StopKind::kStable, StopKind::kChristoffel, StopKind::kStrip, StopKind::kTarget,
                 StopKind::kNone}) {
    EXPECT_EQ(parse_stop_kind(to_string(k)), k);
  }
  for (auto k : {StartKind::kMaxNonneg, StartKind::kMinNonpos, StartKind::kRandom,
                 StartKind::kRandomNonnegative}) {
    EXPECT_EQ(parse_start_kind(to_string(k)), k);
  }
  EXPECT_THROW(parse_stop_kind("forever"), Error);
}

}  // namespace
}  // namespace flipline
