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

#include "flipline/flipline.h"

#include <memory>
#include <new>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "flipline/activity.hpp"
#include "flipline/analysis.hpp"
#include "flipline/core.hpp"
#include "flipline/dynamics.hpp"
#include "flipline/errors.hpp"
#include "flipline/oracle.hpp"
#include "flipline/render.hpp"
#include "flipline/serialize.hpp"

struct fl_config {
  flipline::Configuration value;
};

struct fl_process {
  flipline::Process value;
  std::optional<flipline::Trace> last;
};

struct fl_text {
  std::string value;
};

namespace {

using namespace flipline;

thread_local std::string g_last_error;

fl_status to_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return FL_E_INVALID_ARGUMENT;
    case ErrorCode::kPrecondition: return FL_E_PRECONDITION;
    case ErrorCode::kLimitExceeded: return FL_E_LIMIT;
    case ErrorCode::kIo: return FL_E_IO;
  }
  return FL_E_INTERNAL;
}

// Runs `body`, translating exceptions into status codes.
template <class F>
fl_status guarded(F&& body) {
  g_last_error.clear();
  try {
    return body();
  } catch (const Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return FL_E_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return FL_E_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  require(p != nullptr, ErrorCode::kInvalidArgument, std::string(what) + " is NULL");
}

Topology topology_of(fl_topology t);

Topology topology_of(const fl_instance* instance) {
  need(instance, "instance");
  return topology_of(instance->topology);
}

Topology topology_of(fl_topology t) {
  require(t == FL_CHAIN || t == FL_CYCLE, ErrorCode::kInvalidArgument, "bad topology");
  return t == FL_CHAIN ? Topology::kChain : Topology::kCycle;
}

LineParams params_of(const fl_instance* instance) {
  need(instance, "instance");
  return LineParams(instance->ta, instance->tb, instance->n);
}

StartKind start_of(fl_start_kind k) {
  switch (k) {
    case FL_START_MAX_NONNEG: return StartKind::kMaxNonneg;
    case FL_START_MIN_NONPOS: return StartKind::kMinNonpos;
    case FL_START_RANDOM: return StartKind::kRandom;
    case FL_START_RANDOM_NONNEG: return StartKind::kRandomNonnegative;
  }
  fail(ErrorCode::kInvalidArgument, "bad start kind");
}

StopKind stop_of(fl_stop_kind k) {
  switch (k) {
    case FL_STOP_STABLE: return StopKind::kStable;
    case FL_STOP_CHRISTOFFEL: return StopKind::kChristoffel;
    case FL_STOP_STRIP: return StopKind::kStrip;
    case FL_STOP_TARGET: return StopKind::kTarget;
    case FL_STOP_NONE: return StopKind::kNone;
  }
  fail(ErrorCode::kInvalidArgument, "bad stop kind");
}

fl_status emit(std::string s, fl_text** out) {
  need(out, "output");
  *out = new fl_text{std::move(s)};
  return FL_OK;
}

fl_status emit(Configuration c, fl_config** out) {
  need(out, "output");
  *out = new fl_config{std::move(c)};
  return FL_OK;
}

const Configuration& cfg(const fl_config* c) {
  need(c, "configuration");
  return c->value;
}

std::size_t cap_of(size_t state_cap) { return state_cap == 0 ? kDefaultStateCap : state_cap; }

Json oracle_report(const LineParams& params, Topology topology, const RuleParams& rule,
                   const char* start_word, StopKind target, std::size_t cap) {
  const TransitionGraph graph(params, rule, topology, cap);
  const auto per = params.per();
  const auto in_strip = [per](const HeightRange& r) {
    return r.min >= -per + 1 && r.max <= per - 1;
  };
  Json report{{"instance", Json{{"ta", params.ta()}, {"tb", params.tb()}, {"n", params.n()}}},
              {"sight", rule.sight()},
              {"topology", std::string(to_string(topology))},
              {"states", graph.size()}};

  std::size_t absorbing = 0;
  for (TransitionGraph::State s = 0; s < graph.size(); ++s) absorbing += graph.absorbing(s);
  report["absorbing"] = absorbing;

  Json classes = Json::array();
  bool all_christoffel = true;
  bool all_strip = true;
  for (const auto& cl : closed_classes(graph)) {
    bool christoffel = true;
    bool strip = true;
    for (auto s : cl) {
      const auto r = height_range(graph.config(s));
      christoffel = christoffel && r.thickness() == per - 1;
      strip = strip && in_strip(r);
    }
    all_christoffel = all_christoffel && christoffel;
    all_strip = all_strip && strip;
    classes.push_back(Json{{"size", cl.size()},
                           {"christoffel", christoffel},
                           {"within_strip", strip},
                           {"example", to_string(graph.word(cl.front()))}});
  }
  report["closed_classes"] = std::move(classes);
  report["all_recurrent_christoffel"] = all_christoffel;
  report["all_recurrent_within_strip"] = all_strip;

  if (start_word) {
    const auto start = graph.require_index(parse_word(start_word));
    std::vector<TransitionGraph::State> targets;
    const auto target_word = target_christoffel(params, topology).word();
    for (TransitionGraph::State s = 0; s < graph.size(); ++s) {
      const auto r = height_range(graph.config(s));
      bool hit = false;
      switch (target) {
        case StopKind::kChristoffel: hit = r.thickness() == per - 1; break;
        case StopKind::kTarget: hit = graph.word(s) == target_word; break;
        case StopKind::kStable: hit = graph.absorbing(s); break;
        case StopKind::kStrip: hit = in_strip(r); break;
        case StopKind::kNone: fail(ErrorCode::kInvalidArgument, "oracle needs a target set");
      }
      if (hit) targets.push_back(s);
    }
    require(!targets.empty(), ErrorCode::kPrecondition, "target set is empty");
    report["start"] = start_word;
    report["target"] = std::string(to_string(target));
    report["target_states"] = targets.size();
    report["hitting_time"] = to_json(exact_hitting_time(graph, start, targets));
    report["reachable_states"] = reachable_set(graph, start).size();
  }
  return report;
}

Json impossibility_report(std::int64_t s, std::int64_t k, bool& both_stable) {
  const auto family = impossibility_family(s, k);
  const RuleParams rule(s);
  const auto describe = [&](const Configuration& c) {
    const auto r = height_range(c);
    const auto active = active_sites(c, rule);
    return Json{{"word", to_string(c.word())},
                {"h_min", r.min},
                {"h_max", r.max},
                {"thickness", r.thickness()},
                {"christoffel", is_christoffel(c)},
                {"stable", active.empty()},
                {"active_sites", active.size()}};
  };
  Json c = describe(family.c);
  Json cp = describe(family.c_prime);
  both_stable = c["stable"].get<bool>() && cp["stable"].get<bool>();
  const auto& p = family.c.params();
  return Json{{"sight", s},
              {"k", k},
              {"instance", Json{{"ta", p.ta()}, {"tb", p.tb()}, {"n", p.n()}}},
              {"c", std::move(c)},
              {"c_prime", std::move(cp)},
              {"stated_thickness_c_prime", s + k - 1},
              {"local_views_covered", local_views_covered(family.c_prime, family.c, s)},
              {"both_stable", both_stable}};
}

}  // namespace

extern "C" {

const char* fl_version(void) { return "1.0.0"; }

const char* fl_last_error(void) { return g_last_error.c_str(); }

const char* fl_status_name(fl_status status) {
  switch (status) {
    case FL_OK: return "ok";
    case FL_E_INVALID_ARGUMENT: return "invalid argument";
    case FL_E_PRECONDITION: return "precondition violated";
    case FL_E_LIMIT: return "limit exhausted";
    case FL_E_IO: return "i/o error";
    case FL_E_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* fl_text_data(const fl_text* text) { return text ? text->value.c_str() : ""; }
size_t fl_text_size(const fl_text* text) { return text ? text->value.size() : 0; }
void fl_text_free(fl_text* text) { delete text; }

fl_status fl_parse_topology(const char* name, fl_topology* out) {
  return guarded([&] {
    need(name, "name");
    need(out, "output");
    *out = parse_topology(name) == Topology::kChain ? FL_CHAIN : FL_CYCLE;
    return FL_OK;
  });
}

fl_status fl_parse_start_kind(const char* name, fl_start_kind* out) {
  return guarded([&] {
    need(name, "name");
    need(out, "output");
    switch (parse_start_kind(name)) {
      case StartKind::kMaxNonneg: *out = FL_START_MAX_NONNEG; break;
      case StartKind::kMinNonpos: *out = FL_START_MIN_NONPOS; break;
      case StartKind::kRandom: *out = FL_START_RANDOM; break;
      case StartKind::kRandomNonnegative: *out = FL_START_RANDOM_NONNEG; break;
    }
    return FL_OK;
  });
}

fl_status fl_parse_stop_kind(const char* name, fl_stop_kind* out) {
  return guarded([&] {
    need(name, "name");
    need(out, "output");
    switch (parse_stop_kind(name)) {
      case StopKind::kStable: *out = FL_STOP_STABLE; break;
      case StopKind::kChristoffel: *out = FL_STOP_CHRISTOFFEL; break;
      case StopKind::kStrip: *out = FL_STOP_STRIP; break;
      case StopKind::kTarget: *out = FL_STOP_TARGET; break;
      case StopKind::kNone: *out = FL_STOP_NONE; break;
    }
    return FL_OK;
  });
}

fl_status fl_config_from_word(const fl_instance* instance, const char* word, fl_config** out) {
  return guarded([&] {
    need(word, "word");
    return emit(Configuration(parse_word(word), params_of(instance),
                              topology_of(instance)),
                out);
  });
}

fl_status fl_config_from_json(const char* json, fl_config** out) {
  return guarded([&] {
    need(json, "json");
    Json j;
    try {
      j = Json::parse(json);
    } catch (const nlohmann::json::exception& e) {
      fail(ErrorCode::kInvalidArgument, std::string("bad configuration JSON: ") + e.what());
    }
    return emit(configuration_from_json(j), out);
  });
}

fl_status fl_config_start(const fl_instance* instance, fl_start_kind kind, uint64_t seed,
                          fl_config** out) {
  return guarded([&] {
    return emit(canonical_start(params_of(instance), start_of(kind), seed,
                                topology_of(instance)),
                out);
  });
}

fl_status fl_config_target(const fl_instance* instance, fl_config** out) {
  return guarded([&] {
    return emit(target_christoffel(params_of(instance), topology_of(instance)), out);
  });
}

fl_status fl_config_stuck(int64_t n, fl_config** out) {
  return guarded([&] { return emit(stuck_config(n), out); });
}

fl_status fl_config_clone(const fl_config* config, fl_config** out) {
  return guarded([&] { return emit(cfg(config), out); });
}

void fl_config_free(fl_config* config) { delete config; }

fl_status fl_config_instance(const fl_config* config, fl_instance* out) {
  return guarded([&] {
    need(out, "output");
    const auto& c = cfg(config);
    *out = fl_instance{c.params().ta(), c.params().tb(), c.params().n(),
                       c.topology() == Topology::kChain ? FL_CHAIN : FL_CYCLE};
    return FL_OK;
  });
}

fl_status fl_config_word(const fl_config* config, fl_text** out) {
  return guarded([&] { return emit(to_string(cfg(config).word()), out); });
}

fl_status fl_config_to_json(const fl_config* config, fl_text** out) {
  return guarded([&] { return emit(to_json(cfg(config)).dump(), out); });
}

int fl_config_equal(const fl_config* lhs, const fl_config* rhs) {
  return lhs && rhs && lhs->value == rhs->value;
}

fl_status fl_config_height(const fl_config* config, int64_t i, int64_t* out) {
  return guarded([&] {
    need(out, "output");
    const auto h = height_profile(cfg(config));
    require(i >= 0 && i < static_cast<int64_t>(h.size()), ErrorCode::kInvalidArgument,
            "site index out of range");
    *out = h[static_cast<std::size_t>(i)];
    return FL_OK;
  });
}

int64_t fl_config_h_min(const fl_config* config) { return config ? h_min(config->value) : 0; }
int64_t fl_config_h_max(const fl_config* config) { return config ? h_max(config->value) : 0; }
int64_t fl_config_thickness(const fl_config* config) {
  return config ? thickness(config->value) : 0;
}
int fl_config_is_christoffel(const fl_config* config) {
  return config && is_christoffel(config->value);
}
int fl_config_is_nonnegative(const fl_config* config) {
  return config && is_nonnegative(config->value);
}

fl_status fl_config_flip(const fl_config* config, int64_t i, fl_config** out) {
  return guarded([&] { return emit(flip(cfg(config), i), out); });
}

fl_status fl_config_is_active(const fl_config* config, int64_t i, int64_t sight, int* out) {
  return guarded([&] {
    need(out, "output");
    *out = is_active(cfg(config), i, RuleParams(sight)) ? 1 : 0;
    return FL_OK;
  });
}

fl_status fl_config_active_sites(const fl_config* config, int64_t sight, int64_t* indices,
                                 size_t capacity, size_t* count) {
  return guarded([&] {
    need(count, "count");
    const auto sites = active_sites(cfg(config), RuleParams(sight));
    require(capacity == 0 || indices != nullptr, ErrorCode::kInvalidArgument,
            "indices is NULL");
    for (std::size_t k = 0; k < sites.size() && k < capacity; ++k) indices[k] = sites[k];
    *count = sites.size();
    return FL_OK;
  });
}

fl_status fl_config_ascii(const fl_config* config, fl_text** out) {
  return guarded([&] { return emit(ascii_grid(cfg(config)), out); });
}

fl_status fl_process_create(const fl_config* start, int64_t sight, uint64_t seed,
                            fl_process** out) {
  return guarded([&] {
    need(out, "output");
    *out = new fl_process{Process(cfg(start), RuleParams(sight), seed), std::nullopt};
    return FL_OK;
  });
}

void fl_process_free(fl_process* process) { delete process; }

fl_status fl_process_step(fl_process* process, fl_step_event* out) {
  return guarded([&] {
    need(process, "process");
    need(out, "output");
    const auto e = process->value.step();
    *out = fl_step_event{e.step, e.chosen_index, e.flipped ? 1 : 0, e.new_h_max, e.new_h_min};
    return FL_OK;
  });
}

fl_status fl_process_config(const fl_process* process, fl_config** out) {
  return guarded([&] {
    need(process, "process");
    return emit(process->value.config(), out);
  });
}

int64_t fl_process_steps(const fl_process* process) {
  return process ? process->value.step_count() : 0;
}

fl_status fl_process_run(fl_process* process, const fl_run_options* options,
                         fl_run_result* result) {
  return guarded([&] {
    need(process, "process");
    need(options, "options");
    need(result, "result");
    RunOptions run_options;
    run_options.stop = {stop_of(options->stop), options->cap};
    if (options->snapshot_every != 0) run_options.snapshot_every = options->snapshot_every;
    run_options.record_events = options->record_events != 0;
    process->last = run(process->value, run_options);
    const auto& t = *process->last;
    *result = fl_run_result{t.steps, t.flips, t.outcome == RunOutcome::kConditionMet ? 1 : 0};
    if (!result->condition_met) {
      g_last_error = "step limit of " + std::to_string(options->cap) + " exhausted";
      return FL_E_LIMIT;
    }
    return FL_OK;
  });
}

fl_status fl_process_trace(const fl_process* process, fl_text** out) {
  return guarded([&] {
    need(process, "process");
    require(process->last.has_value(), ErrorCode::kPrecondition, "no run recorded yet");
    return emit(trace_to_string(*process->last), out);
  });
}

fl_status fl_process_render_svg(const fl_process* process, const int64_t* steps,
                                size_t step_count, int64_t cell_size, fl_text** out) {
  return guarded([&] {
    need(process, "process");
    require(process->last.has_value(), ErrorCode::kPrecondition, "no run recorded yet");
    require(step_count == 0 || steps != nullptr, ErrorCode::kInvalidArgument, "steps is NULL");
    RenderSpec spec;
    spec.cell_size = cell_size;
    spec.steps.assign(steps, steps + step_count);
    return emit(svg_snapshots(*process->last, spec), out);
  });
}

fl_status fl_graph_estimate(const fl_instance* instance, uint64_t* states, uint64_t* bytes) {
  return guarded([&] {
    need(states, "states");
    need(bytes, "bytes");
    const auto params = params_of(instance);
    *states = config_count(params);
    *bytes = graph_memory_estimate(params, topology_of(instance));
    return FL_OK;
  });
}

fl_status fl_verify(const fl_instance* instance, int64_t sight, int with_energy,
                    size_t state_cap, fl_text** report, int* all_passed) {
  return guarded([&] {
    need(all_passed, "all_passed");
    const auto params = params_of(instance);
    const auto topology = topology_of(instance);
    const RuleParams rule(sight);
    VerifyOptions options;
    options.energy = with_energy != 0;
    options.cap = cap_of(state_cap);
    auto corpus = verify_corpus(params, rule, topology, options);
    const auto recurrence = recurrence_check(params, rule, topology, options.cap);
    corpus.checks.insert(corpus.checks.end(), recurrence.checks.begin(),
                         recurrence.checks.end());
    *all_passed = corpus.passed() ? 1 : 0;
    return emit(to_json(corpus).dump(2), report);
  });
}

fl_status fl_oracle(const fl_instance* instance, int64_t sight, const char* start_word,
                    fl_stop_kind target, size_t state_cap, fl_text** report) {
  return guarded([&] {
    const auto params = params_of(instance);
    return emit(oracle_report(params, topology_of(instance), RuleParams(sight),
                              start_word, stop_of(target), cap_of(state_cap))
                    .dump(2),
                report);
  });
}

fl_status fl_edge_list(const fl_instance* instance, int64_t sight, size_t state_cap,
                       fl_text** out) {
  return guarded([&] {
    const TransitionGraph graph(params_of(instance), RuleParams(sight), topology_of(instance),
                                cap_of(state_cap));
    std::ostringstream text;
    write_edge_list(text, graph);
    return emit(text.str(), out);
  });
}

fl_status fl_stats(const fl_stats_options* options, fl_text** csvs, fl_text** summary) {
  return guarded([&] {
    need(options, "options");
    need(csvs, "csvs");
    need(summary, "summary");
    require(options->n_count >= 1 && options->ns != nullptr, ErrorCode::kInvalidArgument,
            "need at least one value of n");
    require(options->trials >= 1, ErrorCode::kInvalidArgument, "trials must be >= 1");
    require(!options->start_word || options->n_count == 1, ErrorCode::kInvalidArgument,
            "an explicit start word needs a single n");
    Json sweep = Json::array();
    std::vector<std::pair<double, double>> points;
    std::vector<std::string> csv_text;
    for (std::size_t k = 0; k < options->n_count; ++k) {
      ExperimentConfig config{LineParams(options->ta, options->tb, options->ns[k]),
                              RuleParams(options->sight)};
      config.topology = topology_of(options->topology);
      config.start = start_of(options->start);
      if (options->start_word) config.start_word = parse_word(options->start_word);
      config.trials = options->trials;
      config.seed = options->seed;
      config.stop = stop_of(options->stop);
      config.cap = options->cap;
      config.threads = options->threads;
      const auto report = coalescence_experiment(config);
      csv_text.push_back(experiment_csv(report));
      sweep.push_back(experiment_summary(report));
      points.emplace_back(static_cast<double>(report.params.tot()), report.mean);
    }
    Json out{{"sweep", std::move(sweep)}, {"seed", options->seed}};
    bool fit = points.size() >= 2;
    for (const auto& p : points) fit = fit && p.second > 0;
    if (fit) {
      out["exponent"] = fit_loglog_slope(points);
    } else {
      out["exponent"] = nullptr;
    }
    for (std::size_t k = 0; k < csv_text.size(); ++k) csvs[k] = new fl_text{csv_text[k]};
    *summary = new fl_text{out.dump(2)};
    return FL_OK;
  });
}

fl_status fl_impossibility(int64_t sight, int64_t k, fl_text** report, int* both_stable) {
  return guarded([&] {
    need(both_stable, "both_stable");
    bool stable = false;
    auto j = impossibility_report(sight, k, stable);
    *both_stable = stable ? 1 : 0;
    return emit(j.dump(2), report);
  });
}

fl_status fl_render_trace_svg(const char* trace_jsonl, const int64_t* steps,
                              size_t step_count, int64_t cell_size, fl_text** out) {
  return guarded([&] {
    need(trace_jsonl, "trace");
    require(step_count == 0 || steps != nullptr, ErrorCode::kInvalidArgument, "steps is NULL");
    std::istringstream in(trace_jsonl);
    const auto trace = read_trace(in);
    RenderSpec spec;
    spec.cell_size = cell_size;
    spec.steps.assign(steps, steps + step_count);
    return emit(svg_snapshots(trace, spec), out);
  });
}

fl_status fl_read_file(const char* path, fl_text** out) {
  return guarded([&] {
    need(path, "path");
    return emit(read_file(path), out);
  });
}

fl_status fl_write_file_atomic(const char* path, const char* data, size_t size) {
  return guarded([&] {
    need(path, "path");
    require(size == 0 || data != nullptr, ErrorCode::kInvalidArgument, "data is NULL");
    write_file_atomic(path, std::string_view(data, size));
    return FL_OK;
  });
}

}  // extern "C"
