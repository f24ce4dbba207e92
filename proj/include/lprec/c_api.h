// Copyright 2026 The lprec Authors
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

/* C interface to the lprec library.
 *
 * Objects are opaque handles created and destroyed through this API. Every
 * fallible call returns an lpr_status; on failure the context keeps a
 * message retrievable with lpr_last_error. A context must not be used from
 * two threads at once; separate contexts are independent.
 *
 * Index arguments are 0-based. Matrix data is row-major. */

#ifndef LPREC_C_API_H
#define LPREC_C_API_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define LPR_API __declspec(dllexport)
#else
#define LPR_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lpr_status {
  LPR_OK = 0,
  LPR_ERR_DOMAIN = 1,
  LPR_ERR_QUADRATURE = 2,
  LPR_ERR_RANK = 3,
  LPR_ERR_CONDITIONING = 4,
  LPR_ERR_INFEASIBLE = 5,
  LPR_ERR_BUDGET = 6,
  LPR_ERR_NONCONVERGENCE = 7,
  LPR_ERR_PARSE = 8,
  LPR_ERR_IO = 9,
  LPR_ERR_NULL_ARGUMENT = 10,
  LPR_ERR_OUT_OF_MEMORY = 11,
  LPR_ERR_INTERNAL = 12
} lpr_status;

typedef struct lpr_context lpr_context;
typedef struct lpr_matrix lpr_matrix;
typedef struct lpr_report lpr_report;

LPR_API const char* lpr_version(void);
LPR_API const char* lpr_status_name(lpr_status status);

LPR_API lpr_status lpr_context_create(lpr_context** out);
LPR_API void lpr_context_destroy(lpr_context* ctx);
/* Message of the last failed call on ctx; empty string if none. */
LPR_API const char* lpr_last_error(const lpr_context* ctx);

/* ---- matrices ---- */
LPR_API lpr_status lpr_matrix_create(lpr_context* ctx, int rows, int cols,
                                     const double* row_major, lpr_matrix** out);
LPR_API lpr_status lpr_matrix_read_csv(lpr_context* ctx, const char* path,
                                       lpr_matrix** out);
LPR_API lpr_status lpr_matrix_gaussian(lpr_context* ctx, int rows, int cols,
                                       uint64_t seed, lpr_matrix** out);
/* Orthonormal basis of the null space of a full-row-rank A (rows < cols). */
LPR_API lpr_status lpr_matrix_null_space(lpr_context* ctx, const lpr_matrix* a,
                                         lpr_matrix** out);
/* Swaps rows and columns in place. */
LPR_API lpr_status lpr_matrix_transpose(lpr_context* ctx, lpr_matrix* m);
LPR_API int lpr_matrix_rows(const lpr_matrix* m);
LPR_API int lpr_matrix_cols(const lpr_matrix* m);
/* Copies rows * cols values, row-major, into out. */
LPR_API lpr_status lpr_matrix_copy_data(lpr_context* ctx, const lpr_matrix* m,
                                        double* out, size_t capacity);
LPR_API void lpr_matrix_destroy(lpr_matrix* m);

/* ---- thresholds ----
 * kind is one of strong-limit, weak-limit, sectional-limit, strong-bound,
 * weak-bound. alpha is ignored by the limit kinds. */
LPR_API lpr_status lpr_threshold(lpr_context* ctx, const char* kind, double p,
                                 double alpha, lpr_report** out);
/* Scalar shortcut for the limiting strong threshold. */
LPR_API lpr_status lpr_strong_limit_threshold(lpr_context* ctx, double p,
                                              double* rho_star);

/* ---- solvers ----
 * method is l0, l1 or lp. instance_json holds "A" (array of rows), "y", and
 * optionally "p" and "x_true". */
LPR_API lpr_status lpr_solve_json(lpr_context* ctx, const char* instance_json,
                                  const char* method, lpr_report** out);

/* ---- null-space conditions ---- */
typedef struct lpr_certify_options {
  const char* mode;  /* strong, weak_l1, weak_lp, weak_l0, sectional */
  double p;
  int rho_n;         /* strong mode */
  const int* support; /* weak and sectional modes, ascending */
  const int* signs;   /* +1/-1 per support entry; NULL means all +1 */
  int support_len;
  int sphere_samples;
  int refine_steps;
  double step_shrink;
  uint64_t seed;
} lpr_certify_options;

/* Fills the budget fields with their defaults and clears the rest. */
LPR_API void lpr_certify_options_init(lpr_certify_options* opts);
/* b is the null-space basis (n x d). When the condition is falsified the
 * report carries a "witness" attachment: z as one value per line. */
LPR_API lpr_status lpr_certify(lpr_context* ctx, const lpr_matrix* b,
                               const lpr_certify_options* opts, lpr_report** out);

/* ---- experiments ----
 * name is example1, phase, strong-vs-weak, weak-probe or concentration;
 * spec_json is a JSON object whose keys override the defaults. example1
 * accepts {"k": ..., "p": ...}. */
LPR_API lpr_status lpr_experiment(lpr_context* ctx, const char* name,
                                  const char* spec_json, lpr_report** out);

/* ---- reports ---- */
/* Pretty-printed JSON; deterministic for identical inputs. */
LPR_API const char* lpr_report_json(const lpr_report* r);
LPR_API const char* lpr_report_csv(const lpr_report* r);
/* Named extra output, or NULL. */
LPR_API const char* lpr_report_attachment(const lpr_report* r, const char* name);
LPR_API double lpr_report_wall_time(const lpr_report* r);
LPR_API void lpr_report_destroy(lpr_report* r);

#ifdef __cplusplus
}
#endif

#endif /* LPREC_C_API_H */
