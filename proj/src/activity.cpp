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

#include "flipline/activity.hpp"

#include <algorithm>
#include <array>
#include <string>

#include "flipline/errors.hpp"

namespace flipline {
namespace {

// Fills `left` and `right` (each sized >= sight) and returns their lengths.
std::pair<std::size_t, std::size_t> extract(const Configuration& config, std::int64_t i,
                                            std::int64_t sight, Letter* left,
                                            Letter* right) {
  require(is_selectable(config, i), ErrorCode::kInvalidArgument,
          "site index " + std::to_string(i) + " is not selectable");
  const auto tot = config.tot();
  const auto& word = config.word();
  const auto at = [&](std::int64_t letter) {  // 1-based, wrapped
    return word[static_cast<std::size_t>(((letter - 1) % tot + tot) % tot)];
  };
  std::int64_t left_len = sight;
  std::int64_t right_len = sight;
  if (config.topology() == Topology::kChain) {
    left_len = std::min(sight, i);
    right_len = std::min(sight, tot - i);
  }
  for (std::int64_t k = 0; k < left_len; ++k) left[k] = at(i - k);
  for (std::int64_t k = 0; k < right_len; ++k) right[k] = at(i + 1 + k);
  return {static_cast<std::size_t>(left_len), static_cast<std::size_t>(right_len)};
}

template <class Decide>
bool decide_at(const Configuration& config, std::int64_t i, std::int64_t sight,
               const Decide& decide) {
  constexpr std::int64_t kInline = 64;
  if (sight <= kInline) {
    std::array<Letter, kInline> left;
    std::array<Letter, kInline> right;
    const auto [nl, nr] = extract(config, i, sight, left.data(), right.data());
    return decide(LetterSpan(left.data(), nl), LetterSpan(right.data(), nr));
  }
  Word left(static_cast<std::size_t>(sight));
  Word right(static_cast<std::size_t>(sight));
  const auto [nl, nr] = extract(config, i, sight, left.data(), right.data());
  return decide(LetterSpan(left.data(), nl), LetterSpan(right.data(), nr));
}

template <class Rule>
std::vector<std::int64_t> collect_active(const Configuration& config, const Rule& rule) {
  std::vector<std::int64_t> out;
  const auto first = first_selectable(config.topology());
  const auto count = selectable_count(config);
  for (std::int64_t i = first; i < first + count; ++i) {
    if (is_active(config, i, rule)) out.push_back(i);
  }
  return out;
}

}  // namespace

LocalWords local_words(const Configuration& config, std::int64_t i, std::int64_t sight) {
  require(sight >= 1, ErrorCode::kInvalidArgument, "sight must be positive");
  LocalWords words;
  words.left.resize(static_cast<std::size_t>(sight));
  words.right.resize(static_cast<std::size_t>(sight));
  const auto [nl, nr] = extract(config, i, sight, words.left.data(), words.right.data());
  words.left.resize(nl);
  words.right.resize(nr);
  return words;
}

bool is_active(const Configuration& config, std::int64_t i, const RuleParams& rule) {
  return decide_at(config, i, rule.sight(), [&](LetterSpan l, LetterSpan r) {
    return delta(l, r, rule);
  });
}

bool is_active(const Configuration& config, std::int64_t i, const LocalRule& rule) {
  require(rule.sight >= 1 && static_cast<bool>(rule.decide), ErrorCode::kInvalidArgument,
          "local rule needs a positive sight and a decision function");
  // Swapping two equal letters is a no-op whatever the rule says.
  if (flip_kind(config, i) == FlipKind::kNone) return false;
  return decide_at(config, i, rule.sight, rule.decide);
}

std::vector<std::int64_t> active_sites(const Configuration& config,
                                       const RuleParams& rule) {
  return collect_active(config, rule);
}

std::vector<std::int64_t> active_sites(const Configuration& config,
                                       const LocalRule& rule) {
  return collect_active(config, rule);
}

bool is_stable(const Configuration& config, const RuleParams& rule) {
  const auto first = first_selectable(config.topology());
  const auto count = selectable_count(config);
  for (std::int64_t i = first; i < first + count; ++i) {
    if (is_active(config, i, rule)) return false;
  }
  return true;
}

}  // namespace flipline
