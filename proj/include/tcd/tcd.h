// Copyright 2026 The tcd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#ifndef TCD_TCD_H_
#define TCD_TCD_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define TCD_API __declspec(dllexport)
#else
#define TCD_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tcd_status {
    TCD_OK = 0,
    TCD_ERR_NULL = 1,
    TCD_ERR_INVALID_ARGUMENT = 2,
    TCD_ERR_RUNTIME = 3,
} tcd_status;

typedef struct tcd_config tcd_config;
typedef struct tcd_report tcd_report;
typedef struct tcd_pipeline tcd_pipeline;

TCD_API const char *tcd_version(void);
// Message of the last failed call on this thread, "" if none.
TCD_API const char *tcd_last_error(void);
TCD_API int tcd_csv_version(void);

// Experiments: threshold, ghz-compare, distill, volume-runtime, surgery-estimate, run.
TCD_API tcd_status tcd_config_create(const char *experiment, tcd_config **out);
TCD_API tcd_status tcd_config_apply_json(tcd_config *cfg, const char *json);
TCD_API tcd_status tcd_config_set_seed(tcd_config *cfg, uint64_t seed);
TCD_API tcd_status tcd_config_set_shots(tcd_config *cfg, uint64_t shots);
// parallel, commit or iterative
TCD_API tcd_status tcd_config_set_mode(tcd_config *cfg, const char *mode);
TCD_API tcd_status tcd_config_set_out(tcd_config *cfg, const char *path);
// The string stays valid until the next call on cfg or its destruction.
TCD_API tcd_status tcd_config_json(const tcd_config *cfg, const char **out);
TCD_API tcd_status tcd_config_out(const tcd_config *cfg, const char **out);
TCD_API void tcd_config_destroy(tcd_config *cfg);

TCD_API tcd_status tcd_run(const tcd_config *cfg, tcd_report **out);
// Strings are owned by the report.
TCD_API tcd_status tcd_report_csv(const tcd_report *r, const char **out);
TCD_API tcd_status tcd_report_summary(const tcd_report *r, const char **out);
TCD_API size_t tcd_report_num_violations(const tcd_report *r);
TCD_API const char *tcd_report_violation(const tcd_report *r, size_t i);
TCD_API void tcd_report_destroy(tcd_report *r);

// One circuit of the config at a single distance and error rate.
TCD_API tcd_status tcd_pipeline_create(const tcd_config *cfg, size_t distance, double p, tcd_pipeline **out);
TCD_API tcd_status tcd_pipeline_run(const tcd_pipeline *pl, uint64_t seed, uint64_t shots, uint64_t *failures);
TCD_API size_t tcd_pipeline_num_observables(const tcd_pipeline *pl);
TCD_API void tcd_pipeline_destroy(tcd_pipeline *pl);

// kind: "distillation" or "clifford"; work and latency in units of one d^3 memory decode.
TCD_API tcd_status tcd_surgery_estimate(const char *kind, size_t num_qubits, size_t depth, double *work,
                                        double *latency);

#ifdef __cplusplus
}
#endif

#endif  // TCD_TCD_H_
