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

// Deterministic randomness for the process and the experiment harness.
//
// Engine: std::mt19937_64, whose output sequence is fixed by the C++
// standard, seeded with splitmix64(seed). Parallel trial t of a run with
// master seed m uses seed substream_seed(m, t) = splitmix64(splitmix64(m) ^
// splitmix64(t + 1)), so trials are independent of scheduling.

#ifndef FLIPLINE_RNG_HPP
#define FLIPLINE_RNG_HPP

#include <cstdint>
#include <random>

namespace flipline {

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t substream_seed(std::uint64_t master, std::uint64_t index) noexcept {
  return splitmix64(splitmix64(master) ^ splitmix64(index + 1));
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  std::uint64_t next() { return engine_(); }

  // Uniform on [0, bound) by rejection; no modulo bias. bound must be > 0.
  std::uint64_t uniform_index(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
    for (;;) {
      const std::uint64_t r = engine_();
      if (r >= threshold) return r % bound;
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace flipline

#endif  // FLIPLINE_RNG_HPP
