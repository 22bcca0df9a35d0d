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

// Applying a local rule to a configuration: extraction of the left and right
// words seen from a site, activity, and the active set.

#ifndef FLIPLINE_ACTIVITY_HPP
#define FLIPLINE_ACTIVITY_HPP

#include <cstdint>
#include <vector>

#include "flipline/core.hpp"
#include "flipline/rule.hpp"

namespace flipline {

struct LocalWords {
  Word left;   // w_i w_{i-1} ... (at most `sight` letters, outward order)
  Word right;  // w_{i+1} w_{i+2} ... (at most `sight` letters)
};

// In chain topology the words are cut at the endpoints; in cycle topology
// both have exactly `sight` letters. Throws Error(kInvalidArgument) for a
// non-selectable index.
LocalWords local_words(const Configuration& config, std::int64_t i, std::int64_t sight);

bool is_active(const Configuration& config, std::int64_t i, const RuleParams& rule);
bool is_active(const Configuration& config, std::int64_t i, const LocalRule& rule);

// Sorted; empty iff the configuration is stable.
std::vector<std::int64_t> active_sites(const Configuration& config, const RuleParams& rule);
std::vector<std::int64_t> active_sites(const Configuration& config, const LocalRule& rule);

bool is_stable(const Configuration& config, const RuleParams& rule);

}  // namespace flipline

#endif  // FLIPLINE_ACTIVITY_HPP
