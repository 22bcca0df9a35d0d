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

#include "flipline/serialize.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include <unistd.h>

#include "flipline/errors.hpp"

namespace flipline {
namespace {

Json instance_json(const LineParams& p) {
  return Json{{"ta", p.ta()}, {"tb", p.tb()}, {"n", p.n()}};
}

std::string instance_label(const LineParams& p) {
  return "ta=" + std::to_string(p.ta()) + " tb=" + std::to_string(p.tb()) +
         " n=" + std::to_string(p.n());
}

template <class T>
T field(const Json& j, const char* key) {
  require(j.contains(key), ErrorCode::kInvalidArgument,
          std::string("missing JSON field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kInvalidArgument, std::string("bad JSON field '") + key + "': " + e.what());
  }
}

}  // namespace

Json to_json(const Configuration& config) {
  const auto& p = config.params();
  return Json{{"word", to_string(config.word())},
              {"ta", p.ta()},
              {"tb", p.tb()},
              {"n", p.n()},
              {"topology", std::string(to_string(config.topology()))}};
}

Configuration configuration_from_json(const Json& j) {
  require(j.is_object(), ErrorCode::kInvalidArgument, "configuration JSON must be an object");
  const auto topology = j.contains("topology")
                            ? parse_topology(field<std::string>(j, "topology"))
                            : Topology::kChain;
  return Configuration(parse_word(field<std::string>(j, "word")),
                       LineParams(field<std::int64_t>(j, "ta"), field<std::int64_t>(j, "tb"),
                                  field<std::int64_t>(j, "n")),
                       topology);
}

Json to_json(const StepEvent& e) {
  return Json{{"step", e.step},
              {"index", e.chosen_index},
              {"flipped", e.flipped},
              {"h_max", e.new_h_max},
              {"h_min", e.new_h_min}};
}

Json to_json(const CheckResult& check, const LineParams& params) {
  Json j{{"check", check.name},
         {"instance", instance_label(params)},
         {"status", std::string(to_string(check.status))},
         {"cases", check.cases},
         {"detail", check.detail}};
  if (check.counterexample) j["counterexample"] = *check.counterexample;
  return j;
}

Json to_json(const VerifyReport& report) {
  Json checks = Json::array();
  for (const auto& c : report.checks) checks.push_back(to_json(c, report.params));
  return Json{{"instance", instance_json(report.params)},
              {"sight", report.sight},
              {"topology", std::string(to_string(report.topology))},
              {"status", report.passed() ? "pass" : "fail"},
              {"checks", std::move(checks)}};
}

Json to_json(const HittingTime& t) {
  Json j{{"expected_time", t.infinite ? std::string("+inf")
                                      : (t.exact ? to_string(*t.exact) : std::to_string(t.value))},
         {"method", t.method}};
  if (!t.infinite) j["value"] = t.value;
  if (t.method == "dense" || t.method == "iterative") j["residual"] = t.residual;
  j["unknowns"] = t.unknowns;
  return j;
}

void write_trace(std::ostream& out, const Trace& trace) {
  const auto& p = trace.start.params();
  Json header{{"type", "header"},
              {"ta", p.ta()},
              {"tb", p.tb()},
              {"n", p.n()},
              {"topology", std::string(to_string(trace.start.topology()))},
              {"sight", trace.sight},
              {"seed", trace.seed},
              {"stop", std::string(to_string(trace.stop.kind))},
              {"cap", trace.stop.step_limit},
              {"start", to_string(trace.start.word())}};
  out << header.dump() << '\n';
  auto snap = trace.snapshots.begin();
  const auto flush_snapshots = [&](std::int64_t up_to) {
    for (; snap != trace.snapshots.end() && snap->step <= up_to; ++snap) {
      out << Json{{"step", snap->step}, {"word", to_string(snap->word)}}.dump() << '\n';
    }
  };
  flush_snapshots(0);
  for (const auto& e : trace.events) {
    out << to_json(e).dump() << '\n';
    flush_snapshots(e.step);
  }
  flush_snapshots(std::numeric_limits<std::int64_t>::max());
  Json end{{"type", "end"},
           {"steps", trace.steps},
           {"flips", trace.flips},
           {"outcome", trace.outcome == RunOutcome::kConditionMet ? "condition" : "step-limit"},
           {"word", to_string(trace.terminal.word())}};
  out << end.dump() << '\n';
}

std::string trace_to_string(const Trace& trace) {
  std::ostringstream out;
  write_trace(out, trace);
  return out.str();
}

Trace read_trace(std::istream& in) {
  std::string line;
  require(static_cast<bool>(std::getline(in, line)), ErrorCode::kInvalidArgument,
          "empty trace");
  Json header;
  try {
    header = Json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kInvalidArgument, std::string("bad trace header: ") + e.what());
  }
  require(header.value("type", "") == "header", ErrorCode::kInvalidArgument,
          "trace must start with a header line");
  const LineParams params(field<std::int64_t>(header, "ta"), field<std::int64_t>(header, "tb"),
                          field<std::int64_t>(header, "n"));
  const auto topology = parse_topology(field<std::string>(header, "topology"));
  const Configuration start(parse_word(field<std::string>(header, "start")), params, topology);
  Trace trace{start, start, field<std::int64_t>(header, "sight"),
              field<std::uint64_t>(header, "seed"),
              StopCondition{parse_stop_kind(field<std::string>(header, "stop")),
                            field<std::int64_t>(header, "cap")}};
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    Json j;
    try {
      j = Json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      fail(ErrorCode::kInvalidArgument,
           "bad trace line " + std::to_string(lineno) + ": " + e.what());
    }
    if (j.value("type", "") == "end") {
      trace.steps = field<std::int64_t>(j, "steps");
      trace.flips = field<std::int64_t>(j, "flips");
      trace.outcome = field<std::string>(j, "outcome") == "condition" ? RunOutcome::kConditionMet
                                                                      : RunOutcome::kStepLimit;
      trace.terminal = Configuration(parse_word(field<std::string>(j, "word")), params, topology);
    } else if (j.contains("word")) {
      trace.snapshots.push_back(
          {field<std::int64_t>(j, "step"), parse_word(field<std::string>(j, "word"))});
    } else {
      trace.events.push_back({field<std::int64_t>(j, "step"), field<std::int64_t>(j, "index"),
                              field<bool>(j, "flipped"), field<std::int64_t>(j, "h_max"),
                              field<std::int64_t>(j, "h_min")});
    }
  }
  return trace;
}

std::string experiment_csv(const ExperimentReport& report) {
  std::ostringstream out;
  out << "trial,seed,steps,terminal\n";
  for (const auto& t : report.trials) {
    out << t.trial << ',' << t.seed << ',' << t.steps << ',' << t.terminal << '\n';
  }
  return out.str();
}

Json experiment_summary(const ExperimentReport& report) {
  return Json{{"instance", instance_json(report.params)},
              {"tot", report.params.tot()},
              {"sight", report.sight},
              {"topology", std::string(to_string(report.topology))},
              {"stop", std::string(to_string(report.stop))},
              {"trials", report.trials.size()},
              {"cap", report.cap},
              {"capped", report.capped},
              {"mean", report.mean},
              {"median", report.median},
              {"max", report.max},
              {"bound", report.bound},
              {"mean_within_bound", report.mean <= static_cast<double>(report.bound)},
              {"max_energy", report.max_energy}};
}

void write_file_atomic(const std::string& path, std::string_view content) {
  const std::string tmp = path + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    require(static_cast<bool>(out), ErrorCode::kIo, "cannot open '" + tmp + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    require(static_cast<bool>(out), ErrorCode::kIo, "write to '" + tmp + "' failed");
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    fail(ErrorCode::kIo, "cannot rename '" + tmp + "' to '" + path + "'");
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), ErrorCode::kIo, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace flipline
