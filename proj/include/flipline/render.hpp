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

#ifndef FLIPLINE_RENDER_HPP
#define FLIPLINE_RENDER_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "flipline/core.hpp"
#include "flipline/dynamics.hpp"

namespace flipline {

// Text grid of B+1 lines, each A+1 characters, top line first (y = B).
// '.' empty site, '*' path site, 'o' the two endpoints. Requires tot <= 200.
std::string ascii_grid(const Configuration& config);

struct RenderSpec {
  std::int64_t cell_size = 12;  // pixels per grid unit, >= 1
  bool show_grid = true;        // gray dashed
  bool show_ideal_line = true;  // red dotted, (0,0) to (A,B)
  std::vector<std::int64_t> steps;  // empty = every snapshot in the trace
};

// Standalone SVG 1.1 document with one panel per requested snapshot, laid out
// left to right. The y axis is flipped so that up on screen is +y on the
// grid. Throws Error(kInvalidArgument) for a step the trace did not record.
std::string svg_snapshots(const Trace& trace, const RenderSpec& spec);

}  // namespace flipline

#endif  // FLIPLINE_RENDER_HPP
