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

#include <random>

#include "flipline/activity.hpp"
#include "flipline/core.hpp"
#include "reference.hpp"

namespace flipline {
namespace {

Configuration cfg(const std::string& w, std::int64_t ta, std::int64_t tb, std::int64_t n,
                  Topology t = Topology::kChain) {
  return Configuration(parse_word(w), LineParams(ta, tb, n), t);
}

TEST(LocalWords, ChainTruncatesAtEnds) {
  const auto c = cfg("aabbab", 1, 1, 3);
  const auto lw = local_words(c, 2, 3);
  EXPECT_EQ(to_string(lw.left), "aa");
  EXPECT_EQ(to_string(lw.right), "bba");
  const auto end = local_words(c, 5, 3);
  EXPECT_EQ(to_string(end.left), "abb");
  EXPECT_EQ(to_string(end.right), "b");
}

TEST(LocalWords, CycleWraps) {
  const auto c = cfg("aabbab", 1, 1, 3, Topology::kCycle);
  const auto lw = local_words(c, 0, 3);
  EXPECT_EQ(to_string(lw.left), "bab");
  EXPECT_EQ(to_string(lw.right), "aab");
}

TEST(IsActive, Examples) {
  const RuleParams two(2);
  EXPECT_TRUE(is_active(cfg("aabb", 1, 1, 2), 2, two));
  EXPECT_FALSE(is_active(cfg("abab", 1, 1, 2), 2, two));
  EXPECT_FALSE(is_active(cfg("bbaa", 1, 1, 2), 1, two));
}

TEST(ActiveSites, Examples) {
  const RuleParams two(2);
  EXPECT_EQ(active_sites(cfg("bbaa", 1, 1, 2), two), (std::vector<std::int64_t>{2}));
  EXPECT_EQ(active_sites(cfg("aabb", 1, 1, 2), two), (std::vector<std::int64_t>{2}));
  EXPECT_TRUE(is_stable(cfg("abab", 1, 1, 2), two));
}

TEST(ActiveSites, TargetIsStable) {
  for (auto [ta, tb] : {std::pair{1, 1}, {2, 1}, {3, 1}, {3, 2}, {4, 3}, {5, 2}, {7, 4}}) {
    for (int n = 1; n <= 6; ++n) {
      const LineParams p(ta, tb, n);
      EXPECT_TRUE(is_stable(target_christoffel(p), RuleParams(p.per())));
      EXPECT_TRUE(is_stable(mirror_christoffel(p), RuleParams(p.per())));
    }
  }
}

TEST(ActiveSites, ChainMatchesReference) {
  std::mt19937_64 gen(23);
  const std::vector<std::pair<ref::Inst, int>> cases{
      {{1, 1, 6}, 2}, {{3, 2, 4}, 5}, {{3, 2, 4}, 7}, {{2, 1, 5}, 3}, {{5, 3, 2}, 8}};
  for (const auto& [in, s] : cases) {
    for (int t = 0; t < 200; ++t) {
      const auto word = ref::random_word(in, gen);
      const auto c = cfg(word, in.ta, in.tb, in.n);
      const auto expected = ref::active_sites(word, s);
      const auto got = active_sites(c, RuleParams(s));
      EXPECT_EQ(got, std::vector<std::int64_t>(expected.begin(), expected.end())) << word;
    }
  }
}

TEST(ActiveSites, CycleMatchesReference) {
  std::mt19937_64 gen(29);
  const ref::Inst in{3, 2, 3};
  for (int t = 0; t < 200; ++t) {
    const auto word = ref::random_word(in, gen);
    const auto c = cfg(word, 3, 2, 3, Topology::kCycle);
    std::vector<std::int64_t> expected;
    for (int i = 0; i < in.tot(); ++i) {
      const auto [l, r] = ref::local_cycle(word, i, 5);
      if (ref::delta(l, r, 5)) expected.push_back(i);
    }
    EXPECT_EQ(active_sites(c, RuleParams(5)), expected) << word;
  }
}

TEST(IsActive, LocalRuleOverload) {
  const LocalRule always{2, [](LetterSpan l, LetterSpan r) { return l[0] != r[0]; }};
  const auto c = cfg("abab", 1, 1, 2);
  EXPECT_EQ(active_sites(c, always), (std::vector<std::int64_t>{1, 2, 3}));
  EXPECT_TRUE(active_sites(c, RuleParams(2)).empty());
}

}  // namespace
}  // namespace flipline
