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

#include "flipline/render.hpp"

#include <algorithm>
#include <sstream>

#include "flipline/errors.hpp"

namespace flipline {

std::string ascii_grid(const Configuration& config) {
  require(config.tot() <= 200, ErrorCode::kInvalidArgument,
          "ascii grid is limited to tot <= 200");
  const auto width = static_cast<std::size_t>(config.params().a_count() + 1);
  const auto height = static_cast<std::size_t>(config.params().b_count() + 1);
  std::vector<std::string> rows(height, std::string(width, '.'));
  const auto sites = sites_of(config);
  for (const auto& s : sites) {
    rows[static_cast<std::size_t>(s.y)][static_cast<std::size_t>(s.x)] = '*';
  }
  for (const auto& s : {sites.front(), sites.back()}) {
    rows[static_cast<std::size_t>(s.y)][static_cast<std::size_t>(s.x)] = 'o';
  }
  std::string out;
  for (auto it = rows.rbegin(); it != rows.rend(); ++it) {
    out += *it;
    out += '\n';
  }
  return out;
}

std::string svg_snapshots(const Trace& trace, const RenderSpec& spec) {
  require(spec.cell_size >= 1, ErrorCode::kInvalidArgument, "cell size must be >= 1");
  std::vector<const Snapshot*> panels;
  if (spec.steps.empty()) {
    for (const auto& s : trace.snapshots) panels.push_back(&s);
  } else {
    for (auto step : spec.steps) {
      const auto it = std::find_if(trace.snapshots.begin(), trace.snapshots.end(),
                                   [step](const Snapshot& s) { return s.step == step; });
      require(it != trace.snapshots.end(), ErrorCode::kInvalidArgument,
              "trace has no snapshot at step " + std::to_string(step));
      panels.push_back(&*it);
    }
  }
  require(!panels.empty(), ErrorCode::kInvalidArgument, "nothing to render");

  const auto& params = trace.start.params();
  const auto cell = spec.cell_size;
  const auto a = params.a_count();
  const auto b = params.b_count();
  const auto margin = cell;
  const auto label = 2 * cell;
  const auto panel_w = a * cell + 2 * margin;
  const auto panel_h = b * cell + 2 * margin + label;
  const auto total_w = panel_w * static_cast<std::int64_t>(panels.size());

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << total_w
      << "\" height=\"" << panel_h << "\" viewBox=\"0 0 " << total_w << ' ' << panel_h
      << "\">\n"
      << "<rect x=\"0\" y=\"0\" width=\"" << total_w << "\" height=\"" << panel_h
      << "\" fill=\"white\"/>\n";
  for (std::size_t p = 0; p < panels.size(); ++p) {
    const Configuration config(panels[p]->word, params, trace.start.topology());
    const auto ox = static_cast<std::int64_t>(p) * panel_w + margin;
    const auto base = margin + b * cell;  // screen y of grid row 0
    const auto sx = [&](std::int64_t x) { return ox + x * cell; };
    const auto sy = [&](std::int64_t y) { return base - y * cell; };

    svg << "<g id=\"step-" << panels[p]->step << "\">\n";
    if (spec.show_grid) {
      svg << "<g stroke=\"#999999\" stroke-width=\"1\" stroke-dasharray=\"2,2\">\n";
      for (std::int64_t x = 0; x <= a; ++x) {
        svg << "<line x1=\"" << sx(x) << "\" y1=\"" << sy(0) << "\" x2=\"" << sx(x)
            << "\" y2=\"" << sy(b) << "\"/>\n";
      }
      for (std::int64_t y = 0; y <= b; ++y) {
        svg << "<line x1=\"" << sx(0) << "\" y1=\"" << sy(y) << "\" x2=\"" << sx(a)
            << "\" y2=\"" << sy(y) << "\"/>\n";
      }
      svg << "</g>\n";
    }
    if (spec.show_ideal_line) {
      svg << "<line x1=\"" << sx(0) << "\" y1=\"" << sy(0) << "\" x2=\"" << sx(a)
          << "\" y2=\"" << sy(b)
          << "\" stroke=\"red\" stroke-width=\"2\" stroke-dasharray=\"1,3\"/>\n";
    }
    svg << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"2\" points=\"";
    bool first = true;
    for (const auto& s : sites_of(config)) {
      svg << (first ? "" : " ") << sx(s.x) << ',' << sy(s.y);
      first = false;
    }
    svg << "\"/>\n";
    svg << "<text x=\"" << ox << "\" y=\"" << panel_h - cell / 2
        << "\" font-family=\"monospace\" font-size=\"" << std::max<std::int64_t>(cell, 8)
        << "\">step " << panels[p]->step << ", thickness " << thickness(config)
        << "</text>\n";
    svg << "</g>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace flipline
