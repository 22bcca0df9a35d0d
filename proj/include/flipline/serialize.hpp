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

// File formats: configuration JSON, JSON-lines traces, JSON reports and the
// per-trial CSV of the experiment harness.

#ifndef FLIPLINE_SERIALIZE_HPP
#define FLIPLINE_SERIALIZE_HPP

#include <iosfwd>
#include <string>
#include <string_view>

#include "json.hpp"

#include "flipline/analysis.hpp"
#include "flipline/core.hpp"
#include "flipline/dynamics.hpp"
#include "flipline/oracle.hpp"

namespace flipline {

using Json = nlohmann::ordered_json;

// {"word": "...", "ta": 3, "tb": 2, "n": 1, "topology": "chain"}
Json to_json(const Configuration& config);
Configuration configuration_from_json(const Json& j);

Json to_json(const StepEvent& event);
Json to_json(const CheckResult& check, const LineParams& params);
Json to_json(const VerifyReport& report);
Json to_json(const HittingTime& time);

// Header line, events and snapshots in step order, then an end line:
//   {"type":"header","ta":..,"tb":..,"n":..,"topology":..,"sight":..,"seed":..,
//    "stop":..,"cap":..,"start":"<word>"}
//   {"step":1,"index":4,"flipped":true,"h_max":6,"h_min":0}
//   {"step":100,"word":"<word>"}
//   {"type":"end","steps":..,"flips":..,"outcome":"condition"|"step-limit","word":..}
void write_trace(std::ostream& out, const Trace& trace);
std::string trace_to_string(const Trace& trace);
Trace read_trace(std::istream& in);

// "trial,seed,steps,terminal" header and one row per trial.
std::string experiment_csv(const ExperimentReport& report);
Json experiment_summary(const ExperimentReport& report);

// Writes to a temporary sibling and renames it over `path`.
void write_file_atomic(const std::string& path, std::string_view content);
std::string read_file(const std::string& path);

}  // namespace flipline

#endif  // FLIPLINE_SERIALIZE_HPP
