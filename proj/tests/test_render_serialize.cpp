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

#include <gtest/gtest.h>

#include <fstream>
#include <regex>
#include <sstream>

#include "flipline/errors.hpp"
#include "flipline/render.hpp"
#include "flipline/serialize.hpp"

#ifndef FLIPLINE_GOLDEN_DIR
#error "FLIPLINE_GOLDEN_DIR must be defined"
#endif

namespace flipline {
namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Trace single(const Configuration& c) {
  Trace t{c, c};
  t.sight = c.params().per();
  t.snapshots.push_back({0, c.word()});
  return t;
}

TEST(Ascii, TinyGrids) {
  const LineParams p(1, 1, 1);
  EXPECT_EQ(ascii_grid(Configuration(parse_word("ab"), p)), ".o\no*\n");
  EXPECT_EQ(ascii_grid(Configuration(parse_word("ba"), p)), "*o\no.\n");
}

TEST(Ascii, RejectsLargeInstances) {
  EXPECT_THROW(ascii_grid(target_christoffel(LineParams(3, 2, 41))), Error);
}

TEST(Svg, TargetPolylineHasEveryVertex) {
  const auto svg = svg_snapshots(single(target_christoffel(LineParams(3, 2, 10))), {});
  const std::regex poly("<polyline[^>]*points=\"([^\"]*)\"");
  std::smatch m;
  ASSERT_TRUE(std::regex_search(svg, m, poly));
  std::istringstream pts(m[1].str());
  std::string pt;
  int count = 0;
  while (pts >> pt) ++count;
  EXPECT_EQ(count, 51);
  EXPECT_NE(svg.find("step 0, thickness 4"), std::string::npos);
  EXPECT_NE(svg.find("<g id=\"step-0\">"), std::string::npos);
}

TEST(Svg, CoordinatesAreIntegers) {
  const auto svg = svg_snapshots(single(target_christoffel(LineParams(5, 3, 4))), {});
  const std::regex fractional(
      "\\b(x|y|x1|y1|x2|y2|width|height|points|font-size|stroke-width)=\"[^\"]*\\.[^\"]*\"");
  EXPECT_FALSE(std::regex_search(svg, fractional));
}

TEST(Svg, MissingStepIsAnError) {
  RenderSpec spec;
  spec.steps = {3};
  EXPECT_THROW(svg_snapshots(single(target_christoffel(LineParams(1, 1, 2))), spec), Error);
}

TEST(Svg, MatchesGolden) {
  const std::string dir = FLIPLINE_GOLDEN_DIR;
  std::istringstream in(slurp(dir + "/trace.jsonl"));
  const auto trace = read_trace(in);
  EXPECT_EQ(svg_snapshots(trace, {}), slurp(dir + "/snapshots.svg"));
}

TEST(Trace, RoundTrip) {
  Process p(canonical_start(LineParams(3, 2, 3), StartKind::kRandom, 4), RuleParams(5), 9);
  RunOptions o;
  o.stop = {StopKind::kTarget, 100000};
  o.snapshot_every = 10;
  const auto t = run(p, o);
  const auto text = trace_to_string(t);
  std::istringstream in(text);
  const auto back = read_trace(in);
  EXPECT_EQ(back.start, t.start);
  EXPECT_EQ(back.terminal, t.terminal);
  EXPECT_EQ(back.events, t.events);
  ASSERT_EQ(back.snapshots.size(), t.snapshots.size());
  for (std::size_t k = 0; k < t.snapshots.size(); ++k) {
    EXPECT_EQ(back.snapshots[k].step, t.snapshots[k].step);
    EXPECT_EQ(back.snapshots[k].word, t.snapshots[k].word);
  }
  EXPECT_EQ(back.steps, t.steps);
  EXPECT_EQ(back.flips, t.flips);
  EXPECT_EQ(back.outcome, t.outcome);
  EXPECT_EQ(trace_to_string(back), text);
}

TEST(Trace, LinesAreJson) {
  Process p(canonical_start(LineParams(1, 1, 3), StartKind::kMaxNonneg, 0), RuleParams(2), 1);
  RunOptions o;
  o.stop = {StopKind::kTarget, 1000};
  std::istringstream in(trace_to_string(run(p, o)));
  std::string line;
  std::getline(in, line);
  const auto header = Json::parse(line);
  EXPECT_EQ(header["type"], "header");
  EXPECT_EQ(header["sight"], 2);
  std::getline(in, line);
  const auto event = Json::parse(line);
  EXPECT_TRUE(event.contains("step"));
  EXPECT_TRUE(event.contains("index"));
  EXPECT_TRUE(event.contains("flipped"));
  EXPECT_TRUE(event.contains("h_max"));
  EXPECT_TRUE(event.contains("h_min"));
}

TEST(Trace, RejectsGarbage) {
  std::istringstream in("not json\n");
  EXPECT_THROW(read_trace(in), Error);
}

TEST(ConfigJson, RoundTrip) {
  const Configuration c(parse_word("babaa"), LineParams(3, 2, 1), Topology::kCycle);
  const auto j = to_json(c);
  EXPECT_EQ(j["word"], "babaa");
  EXPECT_EQ(configuration_from_json(j), c);
  EXPECT_THROW(configuration_from_json(Json{{"word", "ab"}}), Error);
}

TEST(Files, AtomicWriteAndRead) {
  const std::string path = ::testing::TempDir() + "flipline_io_test.txt";
  write_file_atomic(path, "first");
  write_file_atomic(path, "second");
  EXPECT_EQ(read_file(path), "second");
  try {
    read_file(path + ".missing");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
  }
}

TEST(Csv, HeaderAndRows) {
  ExperimentConfig config{LineParams(1, 1, 2), RuleParams(2)};
  config.trials = 3;
  const auto csv = experiment_csv(coalescence_experiment(config));
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "trial,seed,steps,terminal");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 3);
}

}  // namespace
}  // namespace flipline
