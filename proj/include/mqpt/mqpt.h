/* Copyright 2026 The MQPT Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface of libmqpt.
 *
 * Every function returns an mqpt_status. On failure the message is
 * available from mqpt_last_error() on the calling thread until the next
 * call. Output handles are owned by the caller and released with
 * mqpt_matrix_free(). Matrices are square; element data is row-major.
 */

#ifndef MQPT_MQPT_H_
#define MQPT_MQPT_H_

#include <stddef.h>
#include <stdint.h>

#if defined(MQPT_BUILDING_LIBRARY)
#define MQPT_API __attribute__((visibility("default")))
#else
#define MQPT_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mqpt_status {
  MQPT_OK = 0,
  MQPT_ERR_INVALID_ARGUMENT = 1,
  MQPT_ERR_CONFIG = 2,
  MQPT_ERR_CONVERGENCE = 3,
  MQPT_ERR_IO = 4,
  MQPT_ERR_NUMERICAL = 5,
  MQPT_ERR_INTERNAL = 6
} mqpt_status;

/* Matrix with a representation tag: "ptm", "error", "liouville", "choi"
 * or "unitary". */
typedef struct mqpt_matrix mqpt_matrix;

typedef struct mqpt_noise {
  double spam_infidelity;
  double spam_coherent_fraction;
  double readout_error;
  int mitigate_readout;
  int64_t shots; /* 0: exact probabilities */
  uint64_t seed;
} mqpt_noise;

typedef struct mqpt_recovery_info {
  int iterations;
  double residual;
  int converged;
  int diverged;
} mqpt_recovery_info;

typedef struct mqpt_metrics {
  double fidelity;
  double infidelity;
  double diamond;
  double diamond_gap;
  int bound_ok; /* e_F <= diamond <= d sqrt(e_F) */
} mqpt_metrics;

typedef struct mqpt_run_summary {
  size_t records;
  size_t unconverged;
} mqpt_run_summary;

MQPT_API const char* mqpt_version(void);
MQPT_API const char* mqpt_last_error(void);
MQPT_API const char* mqpt_status_string(mqpt_status status);
MQPT_API void mqpt_noise_init(mqpt_noise* noise);

/* Handles. */
MQPT_API mqpt_status mqpt_matrix_from_real(int rows, const double* data, const char* convention,
                                           mqpt_matrix** out);
MQPT_API mqpt_status mqpt_matrix_from_complex(int rows, const double* re, const double* im,
                                              const char* convention, mqpt_matrix** out);
MQPT_API mqpt_status mqpt_matrix_load(const char* path, mqpt_matrix** out);
MQPT_API mqpt_status mqpt_matrix_save(const mqpt_matrix* m, const char* path);
/* JSON text of the matrix; *out is released with mqpt_string_free(). */
MQPT_API mqpt_status mqpt_matrix_to_json(const mqpt_matrix* m, char** out);
MQPT_API void mqpt_string_free(char* s);
MQPT_API void mqpt_matrix_free(mqpt_matrix* m);
MQPT_API mqpt_status mqpt_matrix_rows(const mqpt_matrix* m, int* rows);
MQPT_API mqpt_status mqpt_matrix_qubits(const mqpt_matrix* m, int* n);
/* Copies the tag into buf (NUL-terminated, truncated to len). */
MQPT_API mqpt_status mqpt_matrix_convention(const mqpt_matrix* m, char* buf, size_t len);
MQPT_API mqpt_status mqpt_matrix_get(const mqpt_matrix* m, int i, int j, double* re, double* im);
/* Copies the real part; fails with MQPT_ERR_NUMERICAL on imaginary content. */
MQPT_API mqpt_status mqpt_matrix_copy_real(const mqpt_matrix* m, double* out, size_t len);

/* Channels. */
MQPT_API mqpt_status mqpt_fixture(const char* name, mqpt_matrix** out);
/* Target PTM of "sqrtx", "cnot10" or "cnot01". */
MQPT_API mqpt_status mqpt_target(const char* gate, mqpt_matrix** out);
/* Any convention to a PTM. */
MQPT_API mqpt_status mqpt_to_ptm(const mqpt_matrix* m, mqpt_matrix** out);
MQPT_API mqpt_status mqpt_to_liouville(const mqpt_matrix* m, mqpt_matrix** out);
MQPT_API mqpt_status mqpt_to_choi(const mqpt_matrix* m, mqpt_matrix** out);
/* a + sign * b as a PTM-basis matrix tagged like a. */
MQPT_API mqpt_status mqpt_combine(const mqpt_matrix* a, const mqpt_matrix* b, double sign,
                                  mqpt_matrix** out);
MQPT_API mqpt_status mqpt_channel_power(const mqpt_matrix* r, int power, mqpt_matrix** out);
MQPT_API mqpt_status mqpt_is_cptp(const mqpt_matrix* r, double tol, int* cptp,
                                  double* min_eigenvalue, double* trace_residual);

/* Stage I: simulated tomography of r^passes; returns the reconstructed PTM. */
MQPT_API mqpt_status mqpt_simulate_tomography(const mqpt_matrix* r, int passes,
                                              const mqpt_noise* noise, mqpt_matrix** ptm_out);
/* Writes the counts table (label -> counts) as JSON. */
MQPT_API mqpt_status mqpt_simulate_counts(const mqpt_matrix* r, int passes,
                                          const mqpt_noise* noise, const char* path);

/* Stage II. method: "iterative", "sylvester" or "extended_sylvester". */
MQPT_API mqpt_status mqpt_recover(const mqpt_matrix* target, const mqpt_matrix* multipass,
                                  int passes, const char* method, mqpt_matrix** error_out,
                                  mqpt_recovery_info* info);

/* Metrics of channel r against target t. */
MQPT_API mqpt_status mqpt_compute_metrics(const mqpt_matrix* t, const mqpt_matrix* r, double tol,
                                          mqpt_metrics* out);
MQPT_API mqpt_status mqpt_diamond_norm(const mqpt_matrix* e, double tol, double* value,
                                       double* gap);

/* Populations (p00, p01, p10, p11) for M = 0..max_m of a two-qubit
 * channel, written to out[4 * M + k]; len must be >= 4 * (max_m + 1). */
MQPT_API mqpt_status mqpt_populations(const mqpt_matrix* r, int max_m, double* out, size_t len);

/* Runs a config file. seed and out_dir override the file when non-NULL. */
MQPT_API mqpt_status mqpt_run_config(const char* config_path, const uint64_t* seed,
                                     const char* out_dir, mqpt_run_summary* summary);

#ifdef __cplusplus
}
#endif

#endif /* MQPT_MQPT_H_ */
