// Copyright 2026 The hullaw Authors.
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
#ifndef HULLAW_HULLAW_H
#define HULLAW_HULLAW_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(HULLAW_BUILDING_LIBRARY)
#    define HULLAW_API __declspec(dllexport)
#  else
#    define HULLAW_API __declspec(dllimport)
#  endif
#else
#  define HULLAW_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hullaw_status {
  HULLAW_OK = 0,
  HULLAW_E_INVALID_ARGUMENT = 1,
  HULLAW_E_OUT_OF_RANGE = 2,
  HULLAW_E_NON_SIMPLE = 3,
  HULLAW_E_DEGENERATE = 4,
  HULLAW_E_REGIME = 5,
  HULLAW_E_DIVERGENT = 6,
  HULLAW_E_IO = 7,
  HULLAW_E_PARSE = 8,
  HULLAW_E_CHECK_FAILED = 9,
  HULLAW_E_INTERNAL = 10
} hullaw_status;

typedef struct hullaw_polytope hullaw_polytope;
typedef struct hullaw_plan hullaw_plan;
typedef struct hullaw_run hullaw_run;

/* (done, total) after each replication; may be called from worker threads. */
typedef void (*hullaw_progress_fn)(size_t done, size_t total, void* user);

HULLAW_API const char* hullaw_version(void);
HULLAW_API const char* hullaw_status_name(hullaw_status status);
/* Message of the last failed call on this thread; "" if none. */
HULLAW_API const char* hullaw_last_error(void);
/* Every char* handed out by the library is released with this. */
HULLAW_API void hullaw_string_free(char* s);
HULLAW_API uint64_t hullaw_entropy_seed(void);

/* ---- polytopes ---- */
/* Builtin name (cube-N, simplex-N, prism-N) or path to a JSON file. */
HULLAW_API hullaw_status hullaw_polytope_create(const char* name_or_path, hullaw_polytope** out);
HULLAW_API hullaw_status hullaw_polytope_from_json(const char* json, const char* name,
                                                   hullaw_polytope** out);
HULLAW_API void hullaw_polytope_free(hullaw_polytope* p);
HULLAW_API int hullaw_polytope_dim(const hullaw_polytope* p);
HULLAW_API double hullaw_polytope_volume(const hullaw_polytope* p);
HULLAW_API double hullaw_polytope_surface_area(const hullaw_polytope* p);
HULLAW_API uint64_t hullaw_polytope_flags(const hullaw_polytope* p);
/* f_0..f_{n-1} into out[0..n-1]; capacity must be >= dim. */
HULLAW_API hullaw_status hullaw_polytope_f_vector(const hullaw_polytope* p, uint64_t* out,
                                                  size_t capacity);
HULLAW_API hullaw_status hullaw_polytope_to_json(const hullaw_polytope* p, char** out_json);
HULLAW_API hullaw_status hullaw_polytope_save(const hullaw_polytope* p, const char* path);

/* N boundary points as CSV: seed,index,facet_id,x_1..x_n. */
HULLAW_API hullaw_status hullaw_sample_csv(const hullaw_polytope* p, uint64_t N, uint64_t seed,
                                           char** out_csv);
/* Hull of N boundary points in OFF format (n = 3). */
HULLAW_API hullaw_status hullaw_hull_off(const hullaw_polytope* p, uint64_t N, uint64_t seed,
                                         char** out_off);

/* ---- experiments ---- */
HULLAW_API hullaw_status hullaw_plan_load(const char* path, hullaw_plan** out);
HULLAW_API hullaw_status hullaw_plan_from_json(const char* json, hullaw_plan** out);
HULLAW_API void hullaw_plan_free(hullaw_plan* plan);
/* 0 when the plan file did not give master_seed. */
HULLAW_API int hullaw_plan_has_seed(const hullaw_plan* plan);
HULLAW_API uint64_t hullaw_plan_seed(const hullaw_plan* plan);
HULLAW_API void hullaw_plan_set_seed(hullaw_plan* plan, uint64_t seed);
HULLAW_API hullaw_status hullaw_plan_to_json(const hullaw_plan* plan, char** out_json);
/* Polytope of the plan; the handle is owned by the caller. */
HULLAW_API hullaw_status hullaw_plan_polytope(const hullaw_plan* plan, hullaw_polytope** out);
/* Replication seed for (N, replication) under the plan's master seed. */
HULLAW_API uint64_t hullaw_plan_replication_seed(const hullaw_plan* plan, int64_t N, int replication);

HULLAW_API hullaw_status hullaw_run_plan(const hullaw_plan* plan, int threads,
                                         hullaw_progress_fn progress, void* user, hullaw_run** out);
HULLAW_API void hullaw_run_free(hullaw_run* run);
HULLAW_API size_t hullaw_run_record_count(const hullaw_run* run);
HULLAW_API size_t hullaw_run_failures(const hullaw_run* run);
HULLAW_API size_t hullaw_run_violations(const hullaw_run* run);
HULLAW_API hullaw_status hullaw_run_records_csv(const hullaw_run* run, char** out_csv);
HULLAW_API hullaw_status hullaw_run_summary_json(const hullaw_run* run, char** out_json);
/* Writes records.csv, summary.json, manifest.json; returns the manifest. */
HULLAW_API hullaw_status hullaw_run_write(const hullaw_run* run, const char* dir, char** out_manifest);

/* ---- JSON request endpoints ----
   Each takes a JSON request object and returns a JSON document. */

/* {"summary": path | "points": [{"N","mean","stderr"}...], "metric", "model":
   "power_law"|"log_power", "p"} */
HULLAW_API hullaw_status hullaw_fit_json(const char* request, char** out_json);
/* {"l": [...], "alpha", "N": [...], "method":
   "direct"|"transformed"|"asymptotic"|"both"|"all"|"log_regime", "samples", "seed"}
   -> array of rows {n, l, alpha, N, method, value, error_estimate, regime}. */
HULLAW_API hullaw_status hullaw_jeval_json(const char* request, char** out_json);
/* {"q": [...], "alpha", "N": [...], "samples", "seed"} */
HULLAW_API hullaw_status hullaw_seval_json(const char* request, char** out_json);
/* {"suite", "seed"} -> {"passed", "checks": [...]}; a failed check yields
   HULLAW_E_CHECK_FAILED together with the report. */
HULLAW_API hullaw_status hullaw_verify_json(const char* request, char** out_json);
/* {"name": "corner-miss"|"occupancy", "n", "N", "reps", "seed", "polytope"} */
HULLAW_API hullaw_status hullaw_demo_json(const char* request, char** out_json);

#ifdef __cplusplus
}
#endif

#endif
