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

#include "flipline/core.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <string>

#include "flipline/errors.hpp"

namespace flipline {

LineParams::LineParams(std::int64_t ta, std::int64_t tb, std::int64_t n)
    : ta_(ta), tb_(tb), n_(n) {
  require(ta > 0 && tb > 0 && n > 0, ErrorCode::kInvalidArgument,
          "ta, tb and n must be positive");
  require(std::gcd(ta, tb) == 1, ErrorCode::kInvalidArgument,
          "ta and tb must be coprime (got " + std::to_string(ta) + ", " +
              std::to_string(tb) + ")");
}

std::string_view to_string(Topology t) noexcept {
  return t == Topology::kChain ? "chain" : "cycle";
}

Topology parse_topology(std::string_view text) {
  if (text == "chain") return Topology::kChain;
  if (text == "cycle") return Topology::kCycle;
  fail(ErrorCode::kInvalidArgument,
       "unknown topology '" + std::string(text) + "' (expected chain or cycle)");
}

Configuration::Configuration(Word word, LineParams params, Topology topology)
    : word_(std::move(word)), params_(params), topology_(topology) {
  const auto a = count_of(word_, Letter::kA);
  const auto b = count_of(word_, Letter::kB);
  require(a == params_.a_count() && b == params_.b_count(),
          ErrorCode::kInvalidArgument,
          "word has " + std::to_string(a) + " a's and " + std::to_string(b) +
              " b's; the instance needs " + std::to_string(params_.a_count()) +
              " and " + std::to_string(params_.b_count()));
}

Letter Configuration::letter(std::int64_t i) const {
  const auto tot = params_.tot();
  if (topology_ == Topology::kCycle) {
    i = ((i - 1) % tot + tot) % tot + 1;
  }
  require(i >= 1 && i <= tot, ErrorCode::kInvalidArgument,
          "letter index " + std::to_string(i) + " out of range");
  return word_[static_cast<std::size_t>(i - 1)];
}

std::int64_t height(Site site, const LineParams& params) noexcept {
  return -params.tb() * site.x + params.ta() * site.y;
}

std::vector<Site> sites_of(const Configuration& config) {
  std::vector<Site> sites;
  sites.reserve(config.word().size() + 1);
  Site cur;
  sites.push_back(cur);
  for (Letter l : config.word()) {
    (l == Letter::kA ? cur.x : cur.y) += 1;
    sites.push_back(cur);
  }
  return sites;
}

std::vector<std::int64_t> height_profile(const Configuration& config) {
  const auto& p = config.params();
  std::vector<std::int64_t> h;
  h.reserve(config.word().size() + 1);
  std::int64_t cur = 0;
  h.push_back(cur);
  for (Letter l : config.word()) {
    cur += l == Letter::kA ? -p.tb() : p.ta();
    h.push_back(cur);
  }
  return h;
}

HeightRange height_range(const Configuration& config) {
  const auto& p = config.params();
  HeightRange r;
  std::int64_t cur = 0;
  for (Letter l : config.word()) {
    cur += l == Letter::kA ? -p.tb() : p.ta();
    r.min = std::min(r.min, cur);
    r.max = std::max(r.max, cur);
  }
  return r;
}

std::int64_t h_min(const Configuration& config) { return height_range(config).min; }
std::int64_t h_max(const Configuration& config) { return height_range(config).max; }
std::int64_t thickness(const Configuration& config) {
  return height_range(config).thickness();
}

bool is_christoffel(const Configuration& config) {
  return thickness(config) == config.params().per() - 1;
}

bool is_nonnegative(const Configuration& config) { return h_min(config) >= 0; }

Configuration target_christoffel(const LineParams& params, Topology topology) {
  const auto top = params.per() - 1;
  Word word;
  word.reserve(static_cast<std::size_t>(params.tot()));
  std::int64_t h = 0;
  for (std::int64_t i = 0; i < params.tot(); ++i) {
    const bool a_fits = h - params.tb() >= 0;
    [[maybe_unused]] const bool b_fits = h + params.ta() <= top;
    assert(a_fits != b_fits);
    if (a_fits) {
      word.push_back(Letter::kA);
      h -= params.tb();
    } else {
      word.push_back(Letter::kB);
      h += params.ta();
    }
  }
  return Configuration(std::move(word), params, topology);
}

Configuration reversed(const Configuration& config) {
  Word word(config.word().rbegin(), config.word().rend());
  return Configuration(std::move(word), config.params(), config.topology());
}

Configuration mirror_christoffel(const LineParams& params, Topology topology) {
  return reversed(target_christoffel(params, topology));
}

std::int64_t first_selectable(Topology topology) noexcept {
  return topology == Topology::kChain ? 1 : 0;
}

std::int64_t selectable_count(const Configuration& config) noexcept {
  return config.topology() == Topology::kChain ? config.tot() - 1 : config.tot();
}

bool is_selectable(const Configuration& config, std::int64_t i) noexcept {
  const auto first = first_selectable(config.topology());
  return i >= first && i < first + selectable_count(config);
}

FlipKind flip_kind(const Configuration& config, std::int64_t i) {
  require(is_selectable(config, i), ErrorCode::kInvalidArgument,
          "flip index " + std::to_string(i) + " out of range");
  const Letter left = config.letter(i == 0 ? config.tot() : i);
  const Letter right = config.letter(i + 1);
  if (left == right) return FlipKind::kNone;
  return left == Letter::kA ? FlipKind::kIncreasing : FlipKind::kDecreasing;
}

Configuration flip(const Configuration& config, std::int64_t i) {
  require(flip_kind(config, i) != FlipKind::kNone, ErrorCode::kPrecondition,
          "letters around site " + std::to_string(i) + " are equal; nothing to flip");
  const auto tot = config.tot();
  Word word = config.word();
  const auto left = static_cast<std::size_t>((i == 0 ? tot : i) - 1);
  const auto right = static_cast<std::size_t>(i % tot);
  std::swap(word[left], word[right]);
  return Configuration(std::move(word), config.params(), config.topology());
}

}  // namespace flipline
