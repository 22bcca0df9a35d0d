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

// Two-letter words. `a` is the unit step (1,0) and `b` the unit step (0,1).

#ifndef FLIPLINE_WORD_HPP
#define FLIPLINE_WORD_HPP

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace flipline {

enum class Letter : std::uint8_t { kA = 0, kB = 1 };

constexpr Letter swapped(Letter l) noexcept {
  return l == Letter::kA ? Letter::kB : Letter::kA;
}

constexpr char to_char(Letter l) noexcept { return l == Letter::kA ? 'a' : 'b'; }

using Word = std::vector<Letter>;
using LetterSpan = std::span<const Letter>;

// Accepts only 'a' and 'b'; throws Error(kInvalidArgument) on anything else
// or on an empty string.
Word parse_word(std::string_view text);

std::string to_string(LetterSpan word);

// The letter-exchanging morphism g (an involution).
Word swap_morphism(LetterSpan word);

std::int64_t count_of(LetterSpan word, Letter l);

}  // namespace flipline

#endif  // FLIPLINE_WORD_HPP
