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

// The local transition rule. Everything here sees only the two local words;
// there is deliberately no include of core.hpp, so nothing in this header can
// reach the instance parameters, a site index, or grid coordinates.
//
// Words are read outward from the deciding site: the left word starts with
// the letter just before the site, the right word with the letter just after.

#ifndef FLIPLINE_RULE_HPP
#define FLIPLINE_RULE_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "flipline/word.hpp"

namespace flipline {

class RuleParams {
 public:
  // Throws Error(kInvalidArgument) when sight < 2.
  explicit RuleParams(std::int64_t sight);

  std::int64_t sight() const noexcept { return sight_; }

 private:
  std::int64_t sight_;
};

struct PrefixCount {
  std::int64_t a = 0;
  std::int64_t b = 0;
  friend bool operator==(const PrefixCount&, const PrefixCount&) = default;
};

// (a_j, b_j) for j = 1..|word|.
std::vector<PrefixCount> prefix_counts(LetterSpan word);

// Slope estimate (r_a, r_b): the prefix count of the right word minimising
// b/a, with b/0 = +inf and ties going to the shortest prefix.
struct SlopeEstimate {
  std::int64_t ra = 0;
  std::int64_t rb = 0;
  friend bool operator==(const SlopeEstimate&, const SlopeEstimate&) = default;
};

// Requires a nonempty word.
SlopeEstimate slope_estimate(LetterSpan right);

// Exists j <= |left| with rb*a_j - ra*b_j >= ra + rb.
bool weak_thickness(LetterSpan left, SlopeEstimate est);

// Exists j <= |left| with rb*a_j - ra*b_j > ra + rb, or equality together
// with gcd(a_j - 1, b_j + 1) == 1.
bool strong_thickness(LetterSpan left, SlopeEstimate est);

// One-sided rule: 0 when the first letters agree; otherwise normalised by g so
// the right word starts with b, then 1 iff the right word has exactly `sight`
// letters and the strong thickness constraint holds.
bool delta_right(LetterSpan left, LetterSpan right, const RuleParams& rule);

// delta_right(left, right) || delta_right(right, left).
bool delta(LetterSpan left, LetterSpan right, const RuleParams& rule);

// Any decision function of a given sight. Used to probe arbitrary candidate
// rules against configurations.
struct LocalRule {
  std::int64_t sight = 0;
  std::function<bool(LetterSpan left, LetterSpan right)> decide;
};

// The rule above, wrapped.
LocalRule strong_rule(const RuleParams& rule);

}  // namespace flipline

#endif  // FLIPLINE_RULE_HPP
