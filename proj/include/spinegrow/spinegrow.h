/*
  Copyright 2026 The spinegrow Authors

  Licensed under the Apache License, Version 2.0 (the "License");
  you may not use this file except in compliance with the License.
  You may obtain a copy of the License at

  http://www.apache.org/licenses/LICENSE-2.0

  Unless required by applicable law or agreed to in writing, software
  distributed under the License is distributed on an "AS IS" BASIS,
  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
  See the License for the specific language governing permissions and
  limitations under the License.
*/

#ifndef SPINEGROW_H
#define SPINEGROW_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(SPINEGROW_BUILD)
#    define SG_API __declspec(dllexport)
#  else
#    define SG_API __declspec(dllimport)
#  endif
#else
#  define SG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sg_status {
  SG_OK = 0,
  SG_ERR_INVALID_ARGUMENT = 1,
  SG_ERR_DOMAIN = 2,
  SG_ERR_NUMERIC = 3,
  SG_ERR_IO = 4,
  SG_ERR_PARSE = 5,
  SG_ERR_NOT_FOUND = 6,
  SG_ERR_CONFIG = 7,
  SG_ERR_EMPTY_DATA = 8,
  SG_ERR_INTERNAL = 9
} sg_status;

typedef struct sg_params sg_params;
typedef struct sg_scenario sg_scenario;
typedef struct sg_sim sg_sim;

SG_API const char* sg_version(void);
SG_API const char* sg_status_string(sg_status s);
/* Message of the last failure on the calling thread; "" if none. */
SG_API const char* sg_last_error(void);

/* ---- parameters ---- */
SG_API sg_status sg_params_create(sg_params** out);
SG_API void sg_params_destroy(sg_params* p);
SG_API sg_status sg_params_set(sg_params* p, const char* key, double value);
SG_API sg_status sg_params_get(const sg_params* p, const char* key, double* out);
/* "key=value" */
SG_API sg_status sg_params_apply(sg_params* p, const char* assignment);
SG_API sg_status sg_params_load(sg_params* p, const char* path);
/* SG_OK when valid; otherwise SG_ERR_CONFIG and the violations in sg_last_error(). */
SG_API sg_status sg_params_validate(const sg_params* p, size_t* violations);
SG_API int sg_is_param_key(const char* key);
SG_API size_t sg_param_count(void);
SG_API const char* sg_param_name(size_t i);

/* ---- scenarios ---- */
SG_API size_t sg_scenario_name_count(void);
SG_API const char* sg_scenario_name(size_t i);
SG_API sg_status sg_scenario_create(const char* name, sg_scenario** out);
SG_API sg_status sg_scenario_load(const char* path, sg_scenario** out);
SG_API void sg_scenario_destroy(sg_scenario* s);
SG_API int sg_is_scenario_key(const char* key);
SG_API sg_status sg_scenario_set(sg_scenario* s, const char* key, double value);
SG_API sg_status sg_scenario_default_duration(const sg_scenario* s, double* seconds);
/* Overlays the scenario's own parameter values onto `p`. */
SG_API sg_status sg_scenario_apply_params(const sg_scenario* s, sg_params* p);
SG_API sg_status sg_scenario_write(const sg_scenario* s, const char* path);

/* ---- simulation ---- */
/* kinematics_every: ticks between kinematics records per cone, 0 = none. */
SG_API sg_status sg_sim_create(const sg_scenario* s, const sg_params* p, uint64_t seed,
                               int64_t kinematics_every, sg_sim** out);
SG_API void sg_sim_destroy(sg_sim* sim);
SG_API sg_status sg_sim_run(sg_sim* sim, double duration_s);
SG_API sg_status sg_sim_step(sg_sim* sim, int64_t ticks);
SG_API sg_status sg_sim_time_ms(const sg_sim* sim, double* out);
SG_API sg_status sg_sim_success_rate(const sg_sim* sim, double* out);
SG_API sg_status sg_sim_state_hash(const sg_sim* sim, uint64_t* out);
SG_API sg_status sg_sim_neuron_count(const sg_sim* sim, size_t* out);
SG_API sg_status sg_sim_spike_count(const sg_sim* sim, int64_t neuron, size_t* out);
SG_API sg_status sg_sim_connection_count(const sg_sim* sim, size_t* out);
SG_API sg_status sg_sim_connection(const sg_sim* sim, size_t i, int64_t* from, int64_t* to,
                                   double* time_ms);
SG_API sg_status sg_sim_write_log(const sg_sim* sim, const char* path);
SG_API sg_status sg_sim_write_summary(const sg_sim* sim, const char* path);

/* ---- offline analysis ---- */
typedef struct sg_analyze_options {
  double bin_width_ms;     /* <= 0: 10 for hist1d, 5 for hist2d */
  double range_ms;         /* hist2d, <= 0: 250 */
  double after_ms;         /* only spikes at or after this time */
  int64_t neuron;          /* hist1d */
  int64_t out_neuron;      /* hist2d */
  int64_t in1_neuron;
  int64_t in2_neuron;
  double period_ms;        /* hist2d period-offset mass, <= 0: 200 */
  double period_tol_ms;    /* <= 0: 20 */
  int64_t agent_id;        /* trace */
  size_t smoothing_window; /* trace, 0 or 1: none */
  const char* scenario;    /* success: built-in name or scenario file */
} sg_analyze_options;

SG_API void sg_analyze_options_init(sg_analyze_options* o);
/* kind: "hist1d", "hist2d", "success" or "trace". Writes <out_prefix>.stats.csv
   plus <out_prefix>.hist.csv (histograms) or <out_prefix>.trace.csv. */
SG_API sg_status sg_analyze(const char* kind, const char* in_path, const char* out_prefix,
                            const sg_analyze_options* o);

#ifdef __cplusplus
}
#endif

#endif /* SPINEGROW_H */
