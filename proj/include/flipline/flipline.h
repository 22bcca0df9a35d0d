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

/*
 * flipline C API.
 *
 * Every function that can fail returns an fl_status; on failure a message is
 * available from fl_last_error() on the calling thread until its next call
 * into the library. Objects are opaque and owned by the caller, who releases
 * them with the matching *_free function (passing NULL is allowed). Text
 * results come back as fl_text handles.
 *
 * Instances: (ta, tb, n) with ta, tb, n > 0 and gcd(ta, tb) = 1. A
 * configuration is a word of n*ta letters 'a' and n*tb letters 'b'.
 */

#ifndef FLIPLINE_FLIPLINE_H
#define FLIPLINE_FLIPLINE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(FLIPLINE_BUILDING_LIBRARY)
#    define FL_API __declspec(dllexport)
#  else
#    define FL_API __declspec(dllimport)
#  endif
#else
#  define FL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fl_status {
  FL_OK = 0,
  FL_E_INVALID_ARGUMENT = 1,
  FL_E_PRECONDITION = 2,
  FL_E_LIMIT = 3, /* step cap or enumeration cap exhausted */
  FL_E_IO = 4,
  FL_E_INTERNAL = 5
} fl_status;

typedef enum fl_topology { FL_CHAIN = 0, FL_CYCLE = 1 } fl_topology;

typedef enum fl_start_kind {
  FL_START_MAX_NONNEG = 0, /* b^B a^A */
  FL_START_MIN_NONPOS = 1, /* a^A b^B */
  FL_START_RANDOM = 2,
  FL_START_RANDOM_NONNEG = 3
} fl_start_kind;

typedef enum fl_stop_kind {
  FL_STOP_STABLE = 0,
  FL_STOP_CHRISTOFFEL = 1,
  FL_STOP_STRIP = 2,
  FL_STOP_TARGET = 3,
  FL_STOP_NONE = 4
} fl_stop_kind;

typedef struct fl_instance {
  int64_t ta;
  int64_t tb;
  int64_t n;
  fl_topology topology;
} fl_instance;

typedef struct fl_config fl_config;
typedef struct fl_process fl_process;
typedef struct fl_text fl_text;

FL_API const char* fl_version(void);
FL_API const char* fl_last_error(void);
FL_API const char* fl_status_name(fl_status status);

/* Text */
FL_API const char* fl_text_data(const fl_text* text);
FL_API size_t fl_text_size(const fl_text* text);
FL_API void fl_text_free(fl_text* text);

/* Name <-> enum helpers: "chain"/"cycle", "max-nonneg"/"min-nonpos"/
 * "random"/"random-nonneg", "stable"/"christoffel"/"strip"/"target"/"none". */
FL_API fl_status fl_parse_topology(const char* name, fl_topology* out);
FL_API fl_status fl_parse_start_kind(const char* name, fl_start_kind* out);
FL_API fl_status fl_parse_stop_kind(const char* name, fl_stop_kind* out);

/* Configurations */
FL_API fl_status fl_config_from_word(const fl_instance* instance, const char* word,
                                     fl_config** out);
FL_API fl_status fl_config_from_json(const char* json, fl_config** out);
FL_API fl_status fl_config_start(const fl_instance* instance, fl_start_kind kind,
                                 uint64_t seed, fl_config** out);
FL_API fl_status fl_config_target(const fl_instance* instance, fl_config** out);
/* (ba^2ba)^{n-1} ba^3b, instance (3, 2, n), n >= 2. */
FL_API fl_status fl_config_stuck(int64_t n, fl_config** out);
FL_API fl_status fl_config_clone(const fl_config* config, fl_config** out);
FL_API void fl_config_free(fl_config* config);

FL_API fl_status fl_config_instance(const fl_config* config, fl_instance* out);
FL_API fl_status fl_config_word(const fl_config* config, fl_text** out);
FL_API fl_status fl_config_to_json(const fl_config* config, fl_text** out);
FL_API int fl_config_equal(const fl_config* lhs, const fl_config* rhs);
/* h(c_i) for 0 <= i <= tot. */
FL_API fl_status fl_config_height(const fl_config* config, int64_t i, int64_t* out);
FL_API int64_t fl_config_h_min(const fl_config* config);
FL_API int64_t fl_config_h_max(const fl_config* config);
FL_API int64_t fl_config_thickness(const fl_config* config);
FL_API int fl_config_is_christoffel(const fl_config* config);
FL_API int fl_config_is_nonnegative(const fl_config* config);
FL_API fl_status fl_config_flip(const fl_config* config, int64_t i, fl_config** out);
FL_API fl_status fl_config_is_active(const fl_config* config, int64_t i, int64_t sight,
                                     int* out);
/* Writes up to `capacity` indices; *count receives the full count. */
FL_API fl_status fl_config_active_sites(const fl_config* config, int64_t sight,
                                        int64_t* indices, size_t capacity, size_t* count);
FL_API fl_status fl_config_ascii(const fl_config* config, fl_text** out);

/* Process */
typedef struct fl_step_event {
  int64_t step;
  int64_t index;
  int flipped;
  int64_t h_max;
  int64_t h_min;
} fl_step_event;

typedef struct fl_run_options {
  fl_stop_kind stop;
  int64_t cap;            /* step limit, > 0 */
  int64_t snapshot_every; /* 0 = no snapshots */
  int record_events;      /* nonzero: keep one event per step in the trace */
} fl_run_options;

typedef struct fl_run_result {
  int64_t steps;
  int64_t flips;
  int condition_met;
} fl_run_result;

FL_API fl_status fl_process_create(const fl_config* start, int64_t sight, uint64_t seed,
                                   fl_process** out);
FL_API void fl_process_free(fl_process* process);
FL_API fl_status fl_process_step(fl_process* process, fl_step_event* out);
FL_API fl_status fl_process_config(const fl_process* process, fl_config** out);
FL_API int64_t fl_process_steps(const fl_process* process);
/* Runs until the stop condition or the cap. Returns FL_OK when the condition
 * was met and FL_E_LIMIT when the cap ran out; *result is filled either way.
 * The trace of the most recent run is kept in the process. */
FL_API fl_status fl_process_run(fl_process* process, const fl_run_options* options,
                                fl_run_result* result);
/* JSON-lines trace of the most recent run. */
FL_API fl_status fl_process_trace(const fl_process* process, fl_text** out);
/* SVG panels of the most recent run's snapshots (all of them when
 * step_count == 0). */
FL_API fl_status fl_process_render_svg(const fl_process* process, const int64_t* steps,
                                       size_t step_count, int64_t cell_size, fl_text** out);

/* Reports (JSON text). Functions that build the exact chain take a state
 * cap (0 = 1,000,000) and fail with FL_E_LIMIT above it. */
FL_API fl_status fl_graph_estimate(const fl_instance* instance, uint64_t* states,
                                   uint64_t* bytes);
FL_API fl_status fl_verify(const fl_instance* instance, int64_t sight, int with_energy,
                           size_t state_cap, fl_text** report, int* all_passed);
/* Hitting time of `target` (FL_STOP_CHRISTOFFEL, FL_STOP_TARGET, FL_STOP_STABLE
 * or FL_STOP_STRIP) from `start_word` (may be NULL: recurrence report only),
 * plus the closed-class structure of the exact chain. */
FL_API fl_status fl_oracle(const fl_instance* instance, int64_t sight, const char* start_word,
                           fl_stop_kind target, size_t state_cap, fl_text** report);
FL_API fl_status fl_edge_list(const fl_instance* instance, int64_t sight, size_t state_cap,
                              fl_text** out);

typedef struct fl_stats_options {
  int64_t ta;
  int64_t tb;
  const int64_t* ns; /* sweep values of n */
  size_t n_count;
  int64_t sight;
  fl_topology topology;
  fl_start_kind start;
  const char* start_word; /* optional; only valid with a single n */
  fl_stop_kind stop;
  int64_t trials;
  uint64_t seed;
  int64_t cap;      /* 0 = 10 * (2n-1)^3 (tot-1) */
  unsigned threads; /* 0 = hardware concurrency */
} fl_stats_options;

/* csvs receives one CSV per entry of ns (array of n_count handles, each
 * freed by the caller); summary receives the JSON summary including the
 * log-log exponent when at least two sizes were run. */
FL_API fl_status fl_stats(const fl_stats_options* options, fl_text** csvs, fl_text** summary);

FL_API fl_status fl_impossibility(int64_t sight, int64_t k, fl_text** report,
                                  int* both_stable);

/* Renders snapshots of a JSON-lines trace. */
FL_API fl_status fl_render_trace_svg(const char* trace_jsonl, const int64_t* steps,
                                     size_t step_count, int64_t cell_size, fl_text** out);

FL_API fl_status fl_read_file(const char* path, fl_text** out);
FL_API fl_status fl_write_file_atomic(const char* path, const char* data, size_t size);

#ifdef __cplusplus
}
#endif

#endif /* FLIPLINE_FLIPLINE_H */
