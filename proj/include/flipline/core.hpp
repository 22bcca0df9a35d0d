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

// Configurations: monotone lattice paths from (0,0) to (A,B), their heights
// relative to the ideal line of slope tb/ta, and single-site flips.
//
// Letters are indexed 1..tot and sites 0..tot. Flipping at site i swaps
// letters i and i+1 and moves only site c_i, by -a+b (increasing, height +per)
// or +a-b (decreasing, height -per). In cycle topology letter indices wrap
// modulo tot, so letter 0 is letter tot and site 0 is selectable.

#ifndef FLIPLINE_CORE_HPP
#define FLIPLINE_CORE_HPP

#include <cstdint>
#include <string_view>
#include <vector>

#include "flipline/word.hpp"

namespace flipline {

// The global instance. Never visible to the local rule.
class LineParams {
 public:
  // Throws Error(kInvalidArgument) unless all three are positive and
  // gcd(ta, tb) == 1.
  LineParams(std::int64_t ta, std::int64_t tb, std::int64_t n);

  std::int64_t ta() const noexcept { return ta_; }
  std::int64_t tb() const noexcept { return tb_; }
  std::int64_t n() const noexcept { return n_; }
  std::int64_t a_count() const noexcept { return n_ * ta_; }
  std::int64_t b_count() const noexcept { return n_ * tb_; }
  std::int64_t per() const noexcept { return ta_ + tb_; }
  std::int64_t tot() const noexcept { return n_ * (ta_ + tb_); }

  friend bool operator==(const LineParams&, const LineParams&) = default;

 private:
  std::int64_t ta_;
  std::int64_t tb_;
  std::int64_t n_;
};

enum class Topology { kChain, kCycle };

std::string_view to_string(Topology t) noexcept;
Topology parse_topology(std::string_view text);

struct Site {
  std::int64_t x = 0;
  std::int64_t y = 0;
  friend bool operator==(const Site&, const Site&) = default;
};

class Configuration {
 public:
  // Throws Error(kInvalidArgument) when the letter counts differ from (A, B).
  Configuration(Word word, LineParams params, Topology topology = Topology::kChain);

  const Word& word() const noexcept { return word_; }
  const LineParams& params() const noexcept { return params_; }
  Topology topology() const noexcept { return topology_; }
  std::int64_t tot() const noexcept { return params_.tot(); }

  // 1-based; in cycle topology any integer is reduced modulo tot.
  Letter letter(std::int64_t i) const;

  friend bool operator==(const Configuration&, const Configuration&) = default;

 private:
  Word word_;
  LineParams params_;
  Topology topology_;
};

std::int64_t height(Site site, const LineParams& params) noexcept;

// c_0 .. c_tot.
std::vector<Site> sites_of(const Configuration& config);

// h(c_0) .. h(c_tot).
std::vector<std::int64_t> height_profile(const Configuration& config);

struct HeightRange {
  std::int64_t min = 0;
  std::int64_t max = 0;
  std::int64_t thickness() const noexcept { return max - min; }
};

HeightRange height_range(const Configuration& config);
std::int64_t h_min(const Configuration& config);
std::int64_t h_max(const Configuration& config);
std::int64_t thickness(const Configuration& config);

bool is_christoffel(const Configuration& config);
bool is_nonnegative(const Configuration& config);

// The unique configuration with h_min = 0 and h_max = per - 1.
Configuration target_christoffel(const LineParams& params,
                                 Topology topology = Topology::kChain);

// The word read backwards. Site i maps to (A, B) - c_{tot-i}, so every
// height changes sign and the profile is reversed.
Configuration reversed(const Configuration& config);

// reversed(target_christoffel): the Christoffel configuration in the band
// [-per + 1, 0].
Configuration mirror_christoffel(const LineParams& params,
                                 Topology topology = Topology::kChain);

// Valid flip indices: chain 1..tot-1, cycle 0..tot-1.
std::int64_t first_selectable(Topology topology) noexcept;
std::int64_t selectable_count(const Configuration& config) noexcept;
bool is_selectable(const Configuration& config, std::int64_t i) noexcept;

enum class FlipKind { kNone, kIncreasing, kDecreasing };

// kNone when letters i and i+1 are equal.
FlipKind flip_kind(const Configuration& config, std::int64_t i);

// Throws Error(kInvalidArgument) for an out-of-range index and
// Error(kPrecondition) when letters i and i+1 are equal.
Configuration flip(const Configuration& config, std::int64_t i);

}  // namespace flipline

#endif  // FLIPLINE_CORE_HPP
