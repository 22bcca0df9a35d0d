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
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

#ifndef FLIPLINE_CLI
#error "FLIPLINE_CLI must be defined"
#endif

namespace {

struct Result {
  int code;
  std::string out;
};

// Runs the CLI with `args`, capturing stdout. stderr goes to /dev/null.
Result cli(const std::string& args) {
  const std::string cmd = std::string(FLIPLINE_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string tmp(const std::string& name) { return ::testing::TempDir() + "flipline_cli_" + name; }

TEST(Cli, SimulateReachesTarget) {
  const auto path = tmp("sim.jsonl");
  const auto r = cli("simulate --ta 3 --tb 2 --n 10 --sight 5 --seed 7 --start max-nonneg "
                     "--stop target --out " + path);
  EXPECT_EQ(r.code, 0);
  std::istringstream in(slurp(path));
  std::string line;
  std::string last;
  while (std::getline(in, line)) last = line;
  const auto end = nlohmann::json::parse(last);
  EXPECT_EQ(end["type"], "end");
  EXPECT_EQ(end["word"], "babaababaababaababaababaababaababaababaababaababaa");
}

TEST(Cli, SimulateStuckExhaustsCap) {
  const auto r = cli("simulate --ta 3 --tb 2 --n 3 --sight 5 --start-word baababaababaaab "
                     "--stop christoffel --cap 100000 --no-events --out " + tmp("stuck.jsonl"));
  EXPECT_EQ(r.code, 2);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(cli("simulate --ta 3 --n 3").code, 1);
  EXPECT_EQ(cli("simulate --ta 3 --tb 2 --n 3 --start-word aaaa").code, 1);
  EXPECT_EQ(cli("simulate --ta 2 --tb 4 --n 3").code, 1);
  EXPECT_EQ(cli("stats --ta 3 --tb 2 --n 2 --trials 0").code, 1);
  EXPECT_EQ(cli("impossibility --sight 2 --k 1").code, 1);
  EXPECT_EQ(cli("frobnicate").code, 1);
  EXPECT_EQ(cli("").code, 1);
}

TEST(Cli, VerifyExamples) {
  EXPECT_EQ(cli("verify --ta 1 --tb 1 --n 3 --sight 2").code, 0);
  EXPECT_EQ(cli("verify --ta 3 --tb 2 --n 2 --sight 5").code, 0);
  const auto r = cli("verify --ta 2 --tb 1 --n 2 --sight 2");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("hypothesis violated: per > sight"), std::string::npos);
}

TEST(Cli, OracleExamples) {
  auto r = cli("oracle --ta 1 --tb 1 --n 2 --sight 2 --start-word bbaa --target christoffel");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(nlohmann::json::parse(r.out)["hitting_time"]["expected_time"], "3");
  r = cli("oracle --ta 3 --tb 2 --n 3 --sight 5 --start-word baababaababaaab --target christoffel");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(nlohmann::json::parse(r.out)["hitting_time"]["expected_time"], "+inf");
  EXPECT_EQ(cli("oracle --ta 3 --tb 2 --n 3 --state-cap 1000").code, 2);
  r = cli("oracle --ta 3 --tb 2 --n 2 --sight 5 --topology cycle");
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(nlohmann::json::parse(r.out)["all_recurrent_christoffel"].get<bool>());
}

TEST(Cli, StatsDeterministic) {
  const auto a = tmp("stats_a");
  const auto b = tmp("stats_b");
  const std::string flags = "stats --ta 3 --tb 2 --ns 2,4 --sight 5 --trials 30 --seed 5 --out ";
  ASSERT_EQ(cli(flags + a).code, 0);
  ASSERT_EQ(cli(flags + b + " --threads 1").code, 0);
  EXPECT_EQ(slurp(a + "_n2.csv"), slurp(b + "_n2.csv"));
  EXPECT_EQ(slurp(a + "_n4.csv"), slurp(b + "_n4.csv"));
  const auto summary = nlohmann::json::parse(slurp(a + ".json"));
  EXPECT_TRUE(summary["exponent"].is_number());
  EXPECT_EQ(summary["sweep"][1]["bound"], 7 * 7 * 7 * 19);
}

TEST(Cli, ImpossibilityReport) {
  const auto r = cli("impossibility --sight 3 --k 2");
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["stated_thickness_c_prime"], 4);
  EXPECT_EQ(j["c_prime"]["thickness"], 5);
  EXPECT_EQ(r.code, j["both_stable"].get<bool>() ? 0 : 3);
}

TEST(Cli, RenderFromTrace) {
  const auto trace = tmp("render.jsonl");
  ASSERT_EQ(cli("simulate --ta 3 --tb 2 --n 2 --seed 1 --snapshot-every 5 --out " + trace).code,
            0);
  auto r = cli("render --trace " + trace + " --steps 0");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("<g id=\"step-0\">"), std::string::npos);
  r = cli("render --trace " + trace + " --steps 0 --format ascii");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("step 0, thickness 12"), std::string::npos);
  EXPECT_EQ(cli("render --trace " + trace + " --steps 3").code, 1);
  EXPECT_EQ(cli("render --trace " + tmp("missing.jsonl")).code, 1);
}

}  // namespace
