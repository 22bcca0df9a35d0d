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

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "flipline/flipline.h"
#include "json.hpp"

namespace {

enum Exit { kOk = 0, kUsage = 1, kLimit = 2, kCheckFailed = 3 };

struct Failure {
  int code;
  std::string message;
};

int exit_for(fl_status status) { return status == FL_E_LIMIT ? kLimit : kUsage; }

void check(fl_status status) {
  if (status != FL_OK) throw Failure{exit_for(status), fl_last_error()};
}

struct TextDeleter {
  void operator()(fl_text* t) const { fl_text_free(t); }
};
struct ConfigDeleter {
  void operator()(fl_config* c) const { fl_config_free(c); }
};
struct ProcessDeleter {
  void operator()(fl_process* p) const { fl_process_free(p); }
};
using Text = std::unique_ptr<fl_text, TextDeleter>;
using Config = std::unique_ptr<fl_config, ConfigDeleter>;
using ProcessPtr = std::unique_ptr<fl_process, ProcessDeleter>;

std::string take(fl_text* raw) {
  Text t(raw);
  return std::string(fl_text_data(t.get()), fl_text_size(t.get()));
}

struct Options {
  std::int64_t ta = 0;
  std::int64_t tb = 0;
  std::int64_t n = 0;
  std::int64_t sight = 0;  // 0: use per
  std::uint64_t seed = 0;
  std::string topology = "chain";
  std::int64_t cap = 0;  // 0: command default
  std::string out;
  std::string format;
  std::string start = "max-nonneg";
  std::string start_word;
  std::string stop = "target";
  std::string target = "christoffel";
  std::int64_t snapshot_every = 0;
  std::string svg;
  std::int64_t cell = 12;
  bool events = true;
  bool energy = true;
  std::int64_t trials = 200;
  std::vector<std::int64_t> ns;
  unsigned threads = 0;
  std::int64_t k = 0;
  std::string trace;
  std::vector<std::int64_t> steps;
  std::string edges;
  std::size_t state_cap = 1'000'000;
};

fl_instance instance(const Options& o) {
  fl_topology t;
  check(fl_parse_topology(o.topology.c_str(), &t));
  return fl_instance{o.ta, o.tb, o.n, t};
}

std::int64_t sight_of(const Options& o) { return o.sight != 0 ? o.sight : o.ta + o.tb; }

std::int64_t default_cap(std::int64_t per, std::int64_t n) {
  const std::int64_t m = 2 * n - 1;
  const std::int64_t bound = m * m * m * (n * per - 1);
  return 10 * std::max<std::int64_t>(bound, 1);
}

// Writes `content` to `path`, or stdout when the path is empty or "-".
void emit(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    if (!content.empty() && content.back() != '\n') std::cout << '\n';
    std::cout.flush();
    return;
  }
  check(fl_write_file_atomic(path.c_str(), content.data(), content.size()));
}

void add_instance(CLI::App* cmd, Options& o, bool with_n = true) {
  cmd->add_option("--ta", o.ta, "horizontal period t_a")->required()->check(CLI::PositiveNumber);
  cmd->add_option("--tb", o.tb, "vertical period t_b")->required()->check(CLI::PositiveNumber);
  if (with_n) {
    cmd->add_option("--n", o.n, "number of periods")->required()->check(CLI::PositiveNumber);
  }
  cmd->add_option("--sight", o.sight, "sight s (default: t_a + t_b)")
      ->check(CLI::Range(std::int64_t{2}, std::int64_t{1} << 40));
  cmd->add_option("--topology", o.topology, "chain or cycle")
      ->check(CLI::IsMember({"chain", "cycle"}));
}

Config make_start(const Options& o) {
  const auto inst = instance(o);
  fl_config* raw = nullptr;
  if (!o.start_word.empty()) {
    check(fl_config_from_word(&inst, o.start_word.c_str(), &raw));
  } else {
    fl_start_kind kind;
    check(fl_parse_start_kind(o.start.c_str(), &kind));
    check(fl_config_start(&inst, kind, o.seed, &raw));
  }
  return Config(raw);
}

int cmd_simulate(const Options& o) {
  Config start = make_start(o);
  fl_stop_kind stop;
  check(fl_parse_stop_kind(o.stop.c_str(), &stop));
  fl_process* raw = nullptr;
  check(fl_process_create(start.get(), sight_of(o), o.seed, &raw));
  ProcessPtr process(raw);
  fl_run_options run{stop, o.cap != 0 ? o.cap : default_cap(o.ta + o.tb, o.n),
                     o.snapshot_every, o.events ? 1 : 0};
  fl_run_result result{};
  const fl_status status = fl_process_run(process.get(), &run, &result);
  if (status != FL_OK && status != FL_E_LIMIT) check(status);

  fl_text* t = nullptr;
  check(fl_process_trace(process.get(), &t));
  const std::string trace = take(t);
  if (o.format == "ascii") {
    fl_config* end = nullptr;
    check(fl_process_config(process.get(), &end));
    Config terminal(end);
    fl_text* grid = nullptr;
    check(fl_config_ascii(terminal.get(), &grid));
    if (!o.out.empty()) emit(o.out, trace);
    std::cout << take(grid);
  } else {
    emit(o.out, trace);
  }
  if (!o.svg.empty()) {
    fl_text* svg = nullptr;
    check(fl_process_render_svg(process.get(), nullptr, 0, o.cell, &svg));
    emit(o.svg, take(svg));
  }
  std::cerr << "steps=" << result.steps << " flips=" << result.flips << " "
            << (result.condition_met ? "condition met" : "step limit exhausted") << '\n';
  return status == FL_OK ? kOk : kLimit;
}

// Reports the size of the exact chain on stderr before it is built.
void announce_graph(const fl_instance& inst, std::size_t cap) {
  std::uint64_t states = 0;
  std::uint64_t bytes = 0;
  check(fl_graph_estimate(&inst, &states, &bytes));
  std::cerr << "exact chain: " << states << " states, about " << (bytes + 1023) / 1024
            << " KiB (cap " << cap << " states)\n";
}

int cmd_verify(const Options& o) {
  const auto inst = instance(o);
  announce_graph(inst, o.state_cap);
  fl_text* report = nullptr;
  int passed = 0;
  check(fl_verify(&inst, sight_of(o), o.energy ? 1 : 0, o.state_cap, &report, &passed));
  emit(o.out, take(report));
  return passed ? kOk : kCheckFailed;
}

int cmd_oracle(const Options& o) {
  const auto inst = instance(o);
  fl_stop_kind target;
  check(fl_parse_stop_kind(o.target.c_str(), &target));
  announce_graph(inst, o.state_cap);
  fl_text* report = nullptr;
  check(fl_oracle(&inst, sight_of(o), o.start_word.empty() ? nullptr : o.start_word.c_str(),
                  target, o.state_cap, &report));
  emit(o.out, take(report));
  if (!o.edges.empty()) {
    fl_text* edges = nullptr;
    check(fl_edge_list(&inst, sight_of(o), o.state_cap, &edges));
    emit(o.edges, take(edges));
  }
  return kOk;
}

int cmd_stats(const Options& o) {
  std::vector<std::int64_t> ns = o.ns;
  if (ns.empty()) {
    if (o.n == 0) throw Failure{kUsage, "stats needs --n or --ns"};
    ns.push_back(o.n);
  }
  fl_topology topology;
  check(fl_parse_topology(o.topology.c_str(), &topology));
  fl_start_kind start;
  check(fl_parse_start_kind(o.start.c_str(), &start));
  fl_stop_kind stop;
  check(fl_parse_stop_kind(o.stop.c_str(), &stop));
  fl_stats_options options{o.ta,
                           o.tb,
                           ns.data(),
                           ns.size(),
                           sight_of(o),
                           topology,
                           start,
                           o.start_word.empty() ? nullptr : o.start_word.c_str(),
                           stop,
                           o.trials,
                           o.seed,
                           o.cap,
                           o.threads};
  std::vector<fl_text*> raw(ns.size(), nullptr);
  fl_text* summary_raw = nullptr;
  check(fl_stats(&options, raw.data(), &summary_raw));
  std::vector<std::string> csvs;
  for (auto* t : raw) csvs.push_back(take(t));
  const std::string summary = take(summary_raw);

  if (o.out.empty() || o.out == "-") {
    if (o.format == "csv") {
      for (const auto& c : csvs) std::cout << c;
    } else {
      std::cout << summary << '\n';
    }
  } else {
    for (std::size_t i = 0; i < ns.size(); ++i) {
      emit(o.out + "_n" + std::to_string(ns[i]) + ".csv", csvs[i]);
    }
    emit(o.out + ".json", summary + "\n");
  }
  std::int64_t capped = 0;
  for (const auto& entry : nlohmann::json::parse(summary).at("sweep")) {
    capped += entry.at("capped").get<std::int64_t>();
  }
  return capped == 0 ? kOk : kLimit;
}

int cmd_impossibility(const Options& o) {
  fl_text* report = nullptr;
  int both = 0;
  check(fl_impossibility(o.sight != 0 ? o.sight : 2, o.k, &report, &both));
  emit(o.out, take(report));
  return both ? kOk : kCheckFailed;
}

int cmd_render(const Options& o) {
  fl_text* raw = nullptr;
  check(fl_read_file(o.trace.c_str(), &raw));
  const std::string trace = take(raw);
  if (o.format == "ascii") {
    std::istringstream in(trace);
    std::string line;
    std::getline(in, line);
    const auto header = nlohmann::json::parse(line);
    fl_topology topology;
    check(fl_parse_topology(header.at("topology").get<std::string>().c_str(), &topology));
    const fl_instance inst{header.at("ta").get<std::int64_t>(), header.at("tb").get<std::int64_t>(),
                           header.at("n").get<std::int64_t>(), topology};
    std::string text;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const auto j = nlohmann::json::parse(line);
      if (!j.contains("word") || j.contains("type")) continue;
      const auto step = j.at("step").get<std::int64_t>();
      if (!o.steps.empty() && std::find(o.steps.begin(), o.steps.end(), step) == o.steps.end()) {
        continue;
      }
      fl_config* c = nullptr;
      check(fl_config_from_word(&inst, j.at("word").get<std::string>().c_str(), &c));
      Config config(c);
      fl_text* grid = nullptr;
      check(fl_config_ascii(config.get(), &grid));
      text += "step " + std::to_string(step) + ", thickness " +
              std::to_string(fl_config_thickness(config.get())) + "\n" + take(grid) + "\n";
    }
    emit(o.out, text);
    return kOk;
  }
  fl_text* svg = nullptr;
  check(fl_render_trace_svg(trace.c_str(), o.steps.empty() ? nullptr : o.steps.data(),
                            o.steps.size(), o.cell, &svg));
  emit(o.out, take(svg));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"flipline: local flip dynamics toward Christoffel configurations"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(fl_version()));
  Options o;

  auto* simulate = app.add_subcommand("simulate", "run one trajectory and write its trace");
  add_instance(simulate, o);
  simulate->add_option("--seed", o.seed, "random seed");
  simulate->add_option("--start", o.start, "max-nonneg, min-nonpos, random or random-nonneg")
      ->check(CLI::IsMember({"max-nonneg", "min-nonpos", "random", "random-nonneg"}));
  simulate->add_option("--start-word", o.start_word, "explicit start word over {a,b}");
  simulate->add_option("--stop", o.stop, "stable, christoffel, strip, target or none")
      ->check(CLI::IsMember({"stable", "christoffel", "strip", "target", "none"}));
  simulate->add_option("--cap", o.cap, "step limit (default 10 (2n-1)^3 (tot-1))")
      ->check(CLI::PositiveNumber);
  simulate->add_option("--snapshot-every", o.snapshot_every, "snapshot period in steps")
      ->check(CLI::NonNegativeNumber);
  simulate->add_option("--out", o.out, "trace file (default stdout)");
  simulate->add_option("--svg", o.svg, "write SVG panels of the snapshots here");
  simulate->add_option("--cell", o.cell, "SVG cell size")->check(CLI::PositiveNumber);
  simulate->add_option("--format", o.format, "json or ascii")->check(CLI::IsMember({"json", "ascii"}));
  simulate->add_flag("!--no-events", o.events, "omit per-step events from the trace");

  auto* verify = app.add_subcommand("verify", "exhaustive invariant checks on one instance");
  add_instance(verify, o);
  verify->add_flag("!--no-energy", o.energy, "skip the energy drift check");
  verify->add_option("--state-cap", o.state_cap, "largest chain to enumerate")
      ->check(CLI::PositiveNumber);
  verify->add_option("--out", o.out, "report file (default stdout)");
  verify->add_option("--format", o.format, "json")->check(CLI::IsMember({"json"}));

  auto* oracle = app.add_subcommand("oracle", "exact Markov chain analysis");
  add_instance(oracle, o);
  oracle->add_option("--start-word", o.start_word, "start word for the hitting time");
  oracle->add_option("--target", o.target, "christoffel, target, stable or strip")
      ->check(CLI::IsMember({"christoffel", "target", "stable", "strip"}));
  oracle->add_option("--edges", o.edges, "also write the transition edge list here");
  oracle->add_option("--state-cap", o.state_cap, "largest chain to enumerate")
      ->check(CLI::PositiveNumber);
  oracle->add_option("--out", o.out, "report file (default stdout)");
  oracle->add_option("--format", o.format, "json")->check(CLI::IsMember({"json"}));

  auto* stats = app.add_subcommand("stats", "Monte Carlo coalescence times");
  add_instance(stats, o, false);
  auto* n_opt = stats->add_option("--n", o.n, "number of periods")->check(CLI::PositiveNumber);
  stats->add_option("--ns", o.ns, "sweep of n values")
      ->delimiter(',')
      ->check(CLI::PositiveNumber)
      ->excludes(n_opt);
  stats->add_option("--trials", o.trials, "trials per n")->check(CLI::PositiveNumber);
  stats->add_option("--seed", o.seed, "master seed");
  stats->add_option("--start", o.start, "start kind")
      ->check(CLI::IsMember({"max-nonneg", "min-nonpos", "random", "random-nonneg"}));
  stats->add_option("--start-word", o.start_word, "explicit start word (single n)");
  stats->add_option("--stop", o.stop, "stop condition")
      ->check(CLI::IsMember({"stable", "christoffel", "strip", "target"}));
  stats->add_option("--cap", o.cap, "step limit per trial (default 10 (2n-1)^3 (tot-1))")
      ->check(CLI::PositiveNumber);
  stats->add_option("--threads", o.threads, "worker threads (default: all cores)");
  stats->add_option("--out", o.out, "output prefix: PREFIX_n<N>.csv and PREFIX.json");
  stats->add_option("--format", o.format, "json or csv on stdout")
      ->check(CLI::IsMember({"json", "csv"}));

  auto* impossibility =
      app.add_subcommand("impossibility", "the two-configuration family on (s+1, 1, 2k)");
  impossibility->add_option("--sight", o.sight, "sight s")
      ->required()
      ->check(CLI::Range(std::int64_t{2}, std::int64_t{1000}));
  impossibility->add_option("--k", o.k, "family parameter, k >= 2")
      ->required()
      ->check(CLI::Range(std::int64_t{2}, std::int64_t{1000}));
  impossibility->add_option("--out", o.out, "report file (default stdout)");
  impossibility->add_option("--format", o.format, "json")->check(CLI::IsMember({"json"}));

  auto* render = app.add_subcommand("render", "draw snapshots of a trace");
  render->add_option("--trace", o.trace, "JSON-lines trace file")->required();
  render->add_option("--steps", o.steps, "snapshot steps to draw (default all)")->delimiter(',');
  render->add_option("--cell", o.cell, "SVG cell size")->check(CLI::PositiveNumber);
  render->add_option("--out", o.out, "output file (default stdout)");
  render->add_option("--format", o.format, "svg or ascii")->check(CLI::IsMember({"svg", "ascii"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    if (*simulate) return cmd_simulate(o);
    if (*verify) return cmd_verify(o);
    if (*oracle) return cmd_oracle(o);
    if (*stats) return cmd_stats(o);
    if (*impossibility) return cmd_impossibility(o);
    if (*render) return cmd_render(o);
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << '\n';
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
