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

#include "flipline/rule.hpp"

#include <numeric>
#include <string>

#include "flipline/errors.hpp"

namespace flipline {
namespace {

// Reads a word through the optional letter swap g without copying it.
struct View {
  LetterSpan letters;
  bool swap = false;

  std::size_t size() const noexcept { return letters.size(); }
  Letter operator[](std::size_t k) const noexcept {
    return swap ? swapped(letters[k]) : letters[k];
  }
};

// b1/a1 < b2/a2 with b/0 = +inf, by cross multiplication.
bool flatter(std::int64_t a1, std::int64_t b1, std::int64_t a2, std::int64_t b2) {
  if (a1 == 0) return false;
  if (a2 == 0) return true;
  return b1 * a2 < b2 * a1;
}

SlopeEstimate estimate(View right) {
  SlopeEstimate best;
  std::int64_t a = 0;
  std::int64_t b = 0;
  for (std::size_t i = 0; i < right.size(); ++i) {
    (right[i] == Letter::kA ? a : b) += 1;
    if (i == 0 || flatter(a, b, best.ra, best.rb)) best = {a, b};
  }
  return best;
}

template <bool kStrong>
bool thickness_witness(View left, SlopeEstimate est) {
  const auto bound = est.ra + est.rb;
  std::int64_t a = 0;
  std::int64_t b = 0;
  for (std::size_t j = 0; j < left.size(); ++j) {
    (left[j] == Letter::kA ? a : b) += 1;
    const auto value = est.rb * a - est.ra * b;
    if constexpr (kStrong) {
      // std::gcd(0, m) == m, so a_j == 1 only qualifies when b_j == 0.
      if (value > bound || (value == bound && std::gcd(a - 1, b + 1) == 1)) return true;
    } else {
      if (value >= bound) return true;
    }
  }
  return false;
}

}  // namespace

RuleParams::RuleParams(std::int64_t sight) : sight_(sight) {
  require(sight >= 2, ErrorCode::kInvalidArgument,
          "sight must be at least 2 (got " + std::to_string(sight) + ")");
}

std::vector<PrefixCount> prefix_counts(LetterSpan word) {
  std::vector<PrefixCount> out;
  out.reserve(word.size());
  PrefixCount cur;
  for (Letter l : word) {
    (l == Letter::kA ? cur.a : cur.b) += 1;
    out.push_back(cur);
  }
  return out;
}

SlopeEstimate slope_estimate(LetterSpan right) {
  require(!right.empty(), ErrorCode::kInvalidArgument,
          "slope estimate of an empty word");
  return estimate(View{right});
}

bool weak_thickness(LetterSpan left, SlopeEstimate est) {
  return thickness_witness<false>(View{left}, est);
}

bool strong_thickness(LetterSpan left, SlopeEstimate est) {
  return thickness_witness<true>(View{left}, est);
}

bool delta_right(LetterSpan left, LetterSpan right, const RuleParams& rule) {
  if (left.empty() || right.empty() || left.front() == right.front()) return false;
  if (static_cast<std::int64_t>(right.size()) != rule.sight()) return false;
  const bool swap = right.front() == Letter::kA;
  return thickness_witness<true>(View{left, swap}, estimate(View{right, swap}));
}

bool delta(LetterSpan left, LetterSpan right, const RuleParams& rule) {
  return delta_right(left, right, rule) || delta_right(right, left, rule);
}

LocalRule strong_rule(const RuleParams& rule) {
  return LocalRule{rule.sight(), [rule](LetterSpan left, LetterSpan right) {
                     return delta(left, right, rule);
                   }};
}

}  // namespace flipline
