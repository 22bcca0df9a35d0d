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

#include <cmath>

#include "flipline/analysis.hpp"
#include "flipline/errors.hpp"
#include "reference.hpp"

namespace flipline {
namespace {

Configuration cfg(const std::string& w, std::int64_t ta, std::int64_t tb, std::int64_t n) {
  return Configuration(parse_word(w), LineParams(ta, tb, n));
}

std::vector<std::int64_t> v(std::initializer_list<std::int64_t> xs) { return xs; }

// Chain energy straight from the set definitions, for a fixed level h0.
// Configurations whose maximum differs from h0 get energy 0.
int ref_energy(const std::string& w, const ref::Inst& p, int h0) {
  const auto h = ref::heights(w, p);
  if (*std::max_element(h.begin(), h.end()) != h0) return 0;
  const int tot = p.tot();
  const int per = p.per();
  auto in_top = [&](int i) { return i >= 1 && i <= tot - 1 && h[i] == h0; };
  int top = 0;
  int down = 0;
  int up = 0;
  for (int i = 1; i <= tot - 1; ++i) {
    if (!in_top(i)) continue;
    ++top;
    if (i + per <= tot && !in_top(i + per)) ++down;
    if (i - per >= 0 && !in_top(i - per)) ++up;
  }
  return 2 * top + down + up;
}

TEST(EnergyContext, Examples) {
  const EnergyContext ctx(cfg("bbaa", 1, 1, 2));
  EXPECT_EQ(ctx.h0(), 2);
  EXPECT_EQ(ctx.border_plus(), v({2}));

  const EnergyContext big(cfg("bbbbaaaa", 1, 1, 4));
  EXPECT_EQ(big.h0(), 4);
  EXPECT_EQ(big.border_plus(), v({2, 4, 6}));

  try {
    EnergyContext bad(target_christoffel(LineParams(3, 2, 2)));
    FAIL() << "expected a precondition error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kPrecondition);
  }
}

TEST(Energy, Examples) {
  const auto c0 = cfg("bbaa", 1, 1, 2);
  const EnergyContext ctx(c0);
  const auto sets = top_down_up(c0, ctx);
  EXPECT_EQ(sets.top, v({2}));
  EXPECT_EQ(sets.down, v({2}));
  EXPECT_EQ(sets.up, v({2}));
  const auto moved = top_down_up(cfg("baba", 1, 1, 2), ctx);
  EXPECT_TRUE(moved.top.empty());
  EXPECT_TRUE(moved.down.empty());
  EXPECT_TRUE(moved.up.empty());
  EXPECT_EQ(energy(c0, ctx), 4);
  EXPECT_EQ(energy(cfg("baba", 1, 1, 2), ctx), 0);
}

TEST(Energy, MatchesReferenceExhaustively) {
  for (const ref::Inst in : {ref::Inst{1, 1, 4}, ref::Inst{2, 1, 3}, ref::Inst{3, 2, 2}}) {
    const LineParams p(in.ta, in.tb, in.n);
    const auto words = ref::all_words(in);
    for (const auto& c0w : words) {
      const auto h = ref::heights(c0w, in);
      const int hmax = *std::max_element(h.begin(), h.end());
      if (hmax < in.per()) continue;
      const EnergyContext ctx(cfg(c0w, in.ta, in.tb, in.n));
      for (const auto& w : words) {
        EXPECT_EQ(energy(cfg(w, in.ta, in.tb, in.n), ctx), ref_energy(w, in, hmax))
            << c0w << " -> " << w;
      }
    }
  }
}

TEST(Drift, Example) {
  const auto c = cfg("bbaa", 1, 1, 2);
  const EnergyContext ctx(c);
  EXPECT_EQ(expected_drift(c, ctx, RuleParams(2)), Rational(-4, 3));
  const auto s = drift_summary(c, ctx, RuleParams(2));
  EXPECT_EQ(s.changing_indices, 1);
  EXPECT_EQ(s.selectable, 3);
}

TEST(Drift, MatchesReferenceAndIsNonPositive) {
  for (const ref::Inst in : {ref::Inst{1, 1, 4}, ref::Inst{2, 1, 2}, ref::Inst{3, 2, 2}}) {
    const LineParams p(in.ta, in.tb, in.n);
    const RuleParams rule(in.per());
    const auto words = ref::all_words(in);
    for (const auto& w : words) {
      const auto h = ref::heights(w, in);
      const int hmax = *std::max_element(h.begin(), h.end());
      if (hmax < in.per()) continue;
      const int e = ref_energy(w, in, hmax);
      if (e == 0) continue;
      long long sum = 0;
      for (int i = 1; i < in.tot(); ++i) {
        const auto next = ref::active(w, i, in.per()) ? ref::flip(w, i) : w;
        sum += ref_energy(next, in, hmax) - e;
      }
      const Rational expected(sum, in.tot() - 1);
      const auto c = cfg(w, in.ta, in.tb, in.n);
      const auto got = expected_drift(c, EnergyContext(c), rule);
      EXPECT_EQ(got, expected) << w;
      EXPECT_LE(got, 0) << w;
    }
  }
}

TEST(MartingaleBound, Arithmetic) {
  EXPECT_EQ(martingale_bound(4, 4, Rational(1, 3)), Rational(48));
  const LineParams p(3, 2, 4);
  const std::int64_t e0 = 7;
  EXPECT_EQ(martingale_bound(3 * p.n(), e0, Rational(1, p.tot() - 1)),
            Rational(3 * p.n() * e0 * (p.tot() - 1)));
  EXPECT_THROW(martingale_bound(4, 0, Rational(1, 3)), Error);
  EXPECT_THROW(martingale_bound(4, 2, Rational(0)), Error);
  EXPECT_THROW(martingale_bound(1, 2, Rational(1, 2)), Error);
}

TEST(CoalescenceBound, Formula) {
  EXPECT_EQ(coalescence_bound(LineParams(3, 2, 2)), 27 * 9);
  EXPECT_EQ(coalescence_bound(LineParams(3, 2, 8)), 15 * 15 * 15 * 39);
  EXPECT_EQ(coalescence_bound(LineParams(1, 1, 1)), 1);
}

TEST(Experiment, TwoByTwoMeanNearThree) {
  ExperimentConfig config{LineParams(1, 1, 2), RuleParams(2)};
  config.start_word = parse_word("bbaa");
  config.trials = 1000;
  config.seed = 12;
  const auto report = coalescence_experiment(config);
  EXPECT_EQ(report.capped, 0);
  EXPECT_EQ(report.trials.size(), 1000u);
  // Geometric(1/3): sd 2.45, so the mean of 1000 has sd ~0.08.
  EXPECT_NEAR(report.mean, 3.0, 0.35);
  for (const auto& t : report.trials) EXPECT_EQ(t.terminal, "baba");
}

TEST(Experiment, DeterministicAcrossThreadCounts) {
  ExperimentConfig config{LineParams(3, 2, 3), RuleParams(5)};
  config.trials = 40;
  config.seed = 3;
  config.threads = 1;
  const auto one = coalescence_experiment(config);
  config.threads = 4;
  const auto four = coalescence_experiment(config);
  ASSERT_EQ(one.trials.size(), four.trials.size());
  for (std::size_t k = 0; k < one.trials.size(); ++k) {
    EXPECT_EQ(one.trials[k].trial, static_cast<std::int64_t>(k));
    EXPECT_EQ(one.trials[k].steps, four.trials[k].steps);
    EXPECT_EQ(one.trials[k].seed, four.trials[k].seed);
  }
  EXPECT_EQ(one.mean, four.mean);
}

TEST(Experiment, NonnegativeStartsReachTarget) {
  ExperimentConfig config{LineParams(3, 2, 4), RuleParams(5)};
  config.trials = 50;
  config.seed = 8;
  const auto report = coalescence_experiment(config);
  EXPECT_EQ(report.capped, 0);
  EXPECT_EQ(report.cap, 10 * coalescence_bound(LineParams(3, 2, 4)));
  EXPECT_LE(report.mean, static_cast<double>(report.bound));
  EXPECT_LE(report.max_energy, 3 * 4);
}

TEST(Experiment, RejectsZeroTrials) {
  ExperimentConfig config{LineParams(1, 1, 2), RuleParams(2)};
  config.trials = 0;
  EXPECT_THROW(coalescence_experiment(config), Error);
}

TEST(Fit, RecoversPowerLaw) {
  std::vector<std::pair<double, double>> pts;
  for (double x : {10.0, 20.0, 40.0, 80.0}) pts.emplace_back(x, 0.5 * std::pow(x, 2.7));
  EXPECT_NEAR(fit_loglog_slope(pts), 2.7, 1e-9);
}

}  // namespace
}  // namespace flipline
