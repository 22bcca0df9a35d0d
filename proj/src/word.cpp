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

#include "flipline/word.hpp"

#include <algorithm>

#include "flipline/errors.hpp"

namespace flipline {

Word parse_word(std::string_view text) {
  require(!text.empty(), ErrorCode::kInvalidArgument, "empty word");
  Word word;
  word.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case 'a': word.push_back(Letter::kA); break;
      case 'b': word.push_back(Letter::kB); break;
      default:
        fail(ErrorCode::kInvalidArgument,
             std::string("invalid letter '") + c + "' in word (expected 'a' or 'b')");
    }
  }
  return word;
}

std::string to_string(LetterSpan word) {
  std::string out;
  out.reserve(word.size());
  for (Letter l : word) out.push_back(to_char(l));
  return out;
}

Word swap_morphism(LetterSpan word) {
  Word out(word.size());
  std::transform(word.begin(), word.end(), out.begin(), swapped);
  return out;
}

std::int64_t count_of(LetterSpan word, Letter l) {
  return std::count(word.begin(), word.end(), l);
}

}  // namespace flipline
