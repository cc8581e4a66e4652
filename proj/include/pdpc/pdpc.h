/*
 * Copyright 2026 The PDPC Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface of libpdpc: HEVC intra prediction with position-dependent
 * prediction combination, predictor training and predictor-matrix
 * visualization.
 *
 * All objects are opaque handles owned by the caller and released with the
 * matching *_free function (passing NULL is allowed). Every fallible call
 * returns a pdpc_status; on failure pdpc_last_error() describes the problem
 * for the calling thread until its next failing call.
 */

#ifndef PDPC_PDPC_H_
#define PDPC_PDPC_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define PDPC_API __declspec(dllexport)
#else
#define PDPC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pdpc_status {
  PDPC_OK = 0,
  PDPC_ERROR_INVALID_ARGUMENT = 1,
  PDPC_ERROR_OUT_OF_BOUNDS = 2,
  PDPC_ERROR_IO = 3,
  PDPC_ERROR_FORMAT = 4,
  PDPC_ERROR_CONDITIONING = 5,
  PDPC_ERROR_INTERNAL = 6
} pdpc_status;

typedef enum pdpc_normalization {
  PDPC_NORMALIZE_GLOBAL = 0,
  PDPC_NORMALIZE_PER_MATRIX = 1
} pdpc_normalization;

typedef enum pdpc_matrix_kind {
  PDPC_MATRIX_ORACLE = 0,
  PDPC_MATRIX_PDPC = 1,
  PDPC_MATRIX_HEVC = 2
} pdpc_matrix_kind;

typedef struct pdpc_image pdpc_image;
typedef struct pdpc_stats pdpc_stats;
typedef struct pdpc_matrices pdpc_matrices;
typedef struct pdpc_library pdpc_library;
typedef struct pdpc_report pdpc_report;

typedef struct pdpc_policy {
  int smoothing;    /* HEVC [1 2 1] reference smoothing table */
  int edge_filters; /* DC / horizontal / vertical boundary filters */
} pdpc_policy;

typedef struct pdpc_params {
  double c1v, c2v, c1h, c2h;
  int dv, dh;
  double a;
  int k;
} pdpc_params;

typedef struct pdpc_corpus_options {
  const int* sizes; /* block sizes, each 4, 8, 16 or 32 */
  size_t num_sizes;
  int stride; /* 0: use N */
  int skip_padded;
  int centered;
  pdpc_policy policy;
  int threads;
} pdpc_corpus_options;

typedef struct pdpc_fit_options {
  int num_sets;          /* 2 or 4 (including the identity set) */
  int grid_denominator;  /* fine c step 1/grid_denominator: 8, 16 or 32 */
  int max_iterations;
  double ridge;          /* regularization of the oracle bound in fit reports */
  int threads;
  pdpc_policy policy;
} pdpc_fit_options;

typedef struct pdpc_totals {
  uint64_t blocks;
  int64_t hevc_sse;
  int64_t selected_sse;
  int64_t oracle_sse; /* 0 unless an oracle was evaluated */
  double reduction_percent;
} pdpc_totals;

PDPC_API const char* pdpc_version(void);
PDPC_API const char* pdpc_last_error(void);
PDPC_API const char* pdpc_status_name(pdpc_status status);

/* Defaults: smoothing and edge filters on, stride N, one thread. */
PDPC_API void pdpc_policy_init(pdpc_policy* policy);
PDPC_API void pdpc_corpus_options_init(pdpc_corpus_options* options);
PDPC_API void pdpc_fit_options_init(pdpc_fit_options* options);

/* Images ------------------------------------------------------------------ */

PDPC_API pdpc_status pdpc_image_create(int width, int height, int bit_depth,
                                       const uint16_t* samples, pdpc_image** out);
PDPC_API pdpc_status pdpc_image_load_pgm(const char* path, pdpc_image** out);
PDPC_API pdpc_status pdpc_image_load_yuv(const char* path, int width, int height,
                                         int bit_depth, int frame_index,
                                         pdpc_image** out);
PDPC_API pdpc_status pdpc_image_save_pgm(const pdpc_image* image, const char* path);
PDPC_API void pdpc_image_free(pdpc_image* image);
PDPC_API int pdpc_image_width(const pdpc_image* image);
PDPC_API int pdpc_image_height(const pdpc_image* image);
PDPC_API int pdpc_image_bit_depth(const pdpc_image* image);

/* Single-block prediction ------------------------------------------------- */

/* HEVC mode decision for the block at (x0, y0). */
PDPC_API pdpc_status pdpc_classify_block(const pdpc_image* image, int x0, int y0,
                                         int n, pdpc_policy policy, int* mode);

/* Finalized prediction (n*n samples, raster order). params == NULL gives
 * plain HEVC prediction. */
PDPC_API pdpc_status pdpc_predict_block(const pdpc_image* image, int x0, int y0,
                                        int n, int mode, const pdpc_params* params,
                                        pdpc_policy policy, int* out);

/* Statistics -------------------------------------------------------------- */

PDPC_API pdpc_status pdpc_stats_accumulate(const pdpc_image* const* images,
                                           size_t num_images,
                                           const pdpc_corpus_options* options,
                                           pdpc_stats** out);
PDPC_API pdpc_status pdpc_stats_load(const char* path, pdpc_stats** out);
PDPC_API pdpc_status pdpc_stats_save(const pdpc_stats* stats, const char* path);
PDPC_API pdpc_status pdpc_stats_merge(pdpc_stats* into, const pdpc_stats* from);
PDPC_API void pdpc_stats_free(pdpc_stats* stats);
PDPC_API size_t pdpc_stats_num_records(const pdpc_stats* stats);
/* Block count of (n, mode); 0 when absent. */
PDPC_API uint64_t pdpc_stats_count(const pdpc_stats* stats, int n, int mode);

/* Predictor matrices ------------------------------------------------------ */

/* Optimal linear predictor for every (N, mode) with data. Records that stay
 * singular after regularization are left out and listed in the report
 * (pdpc_matrices_report). */
PDPC_API pdpc_status pdpc_oracle_solve(const pdpc_stats* stats, double ridge,
                                       pdpc_matrices** out);
/* PDPC matrices of parameter set `set` for all 35 modes of size n. */
PDPC_API pdpc_status pdpc_library_realize(const pdpc_library* library, int n, int set,
                                          pdpc_policy policy, pdpc_matrices** out);
PDPC_API pdpc_status pdpc_matrices_load(const char* path, pdpc_matrices** out);
PDPC_API pdpc_status pdpc_matrices_save(const pdpc_matrices* matrices, const char* path);
PDPC_API void pdpc_matrices_free(pdpc_matrices* matrices);
PDPC_API size_t pdpc_matrices_count(const pdpc_matrices* matrices);
PDPC_API pdpc_status pdpc_matrices_info(const pdpc_matrices* matrices, size_t index,
                                        int* n, int* mode, int* kind);
/* Copies the n*n x (4n+1) row-major entries of matrix `index`.
 * PDPC_ERROR_OUT_OF_BOUNDS when `capacity` is too small. */
PDPC_API pdpc_status pdpc_matrices_entries(const pdpc_matrices* matrices, size_t index,
                                           double* out, size_t capacity);
/* Conditioning / solve report text; empty for loaded matrices. */
PDPC_API const char* pdpc_matrices_report(const pdpc_matrices* matrices);

/* Renders the matrices of size n as an 8-bit PGM at `path`. */
PDPC_API pdpc_status pdpc_render_matrices(const pdpc_matrices* matrices, int n,
                                          pdpc_normalization normalization,
                                          int gutter, const char* path);

/* Parameter libraries ----------------------------------------------------- */

PDPC_API pdpc_status pdpc_library_fit_stats(const pdpc_stats* stats,
                                            const pdpc_fit_options* options,
                                            pdpc_library** out);
/* base may be NULL; otherwise its sets are kept and only new sets trained. */
PDPC_API pdpc_status pdpc_library_fit_corpus(const pdpc_image* const* images,
                                             size_t num_images,
                                             const pdpc_corpus_options* corpus,
                                             const pdpc_fit_options* options,
                                             const pdpc_library* base,
                                             pdpc_library** out);
PDPC_API pdpc_status pdpc_library_identity(pdpc_library** out);
PDPC_API pdpc_status pdpc_library_load(const char* path, pdpc_library** out);
PDPC_API pdpc_status pdpc_library_save(const pdpc_library* library, const char* path);
PDPC_API void pdpc_library_free(pdpc_library* library);
PDPC_API int pdpc_library_num_sets(const pdpc_library* library);
PDPC_API pdpc_status pdpc_library_params(const pdpc_library* library, int n, int mode,
                                         int set, pdpc_params* out);
/* Fit summary text (per-group objectives); empty for loaded libraries. */
PDPC_API const char* pdpc_library_report(const pdpc_library* library);

/* Evaluation -------------------------------------------------------------- */

/* oracle may be NULL. */
PDPC_API pdpc_status pdpc_evaluate(const pdpc_image* const* images, size_t num_images,
                                   const pdpc_library* library,
                                   const pdpc_matrices* oracle,
                                   const pdpc_corpus_options* options,
                                   pdpc_report** out);
PDPC_API void pdpc_report_free(pdpc_report* report);
PDPC_API const char* pdpc_report_text(const pdpc_report* report);
PDPC_API const char* pdpc_report_json(const pdpc_report* report);
PDPC_API pdpc_status pdpc_report_totals(const pdpc_report* report, pdpc_totals* out);

#ifdef __cplusplus
}  /* extern "C" */
#endif

#endif  /* PDPC_PDPC_H_ */
