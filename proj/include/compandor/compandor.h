/*
 * C interface to the spline compandor library.
 *
 * Designs are opaque handles created by cmpd_design_create() or
 * cmpd_design_from_json() and released with cmpd_design_destroy(). Every
 * fallible call returns a cmpd_status; on failure cmpd_last_error() gives a
 * message for the calling thread, valid until that thread's next call.
 *
 * All designs use the unit-variance Laplacian source. Segment counts are per
 * quadrant (L); the CLI's --segments flag is 2L.
 *
 * Buffer queries follow one pattern: pass the capacity of `out`, receive the
 * required element count in `*count`. Passing out == NULL with capacity 0
 * only queries the count.
 */
#ifndef COMPANDOR_H
#define COMPANDOR_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(COMPANDOR_BUILDING_LIBRARY)
#    define CMPD_API __declspec(dllexport)
#  else
#    define CMPD_API __declspec(dllimport)
#  endif
#else
#  define CMPD_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cmpd_status {
  CMPD_OK = 0,
  CMPD_ERR_INVALID_ARGUMENT = 1,
  CMPD_ERR_INVALID_CONFIG = 2,
  CMPD_ERR_PARSE = 3,
  CMPD_ERR_BUFFER_TOO_SMALL = 4,
  CMPD_ERR_INTERNAL = 5
} cmpd_status;

typedef struct cmpd_design cmpd_design;

typedef struct cmpd_report {
  double granular;
  double overload;
  double total;
  double sqnr_db;
} cmpd_report;

typedef struct cmpd_design_info {
  int n_levels;
  int segments_per_quadrant;
  double x_max;
  double x_max_design;
  double step;
  double overload_level;
} cmpd_design_info;

typedef struct cmpd_optimum {
  double x_opt;
  double d_min;
  double x_frozen;
  int last_cells;
} cmpd_optimum;

typedef struct cmpd_comparison {
  double x_max_fixed;
  double x_max_optimized;
  cmpd_report fixed;
  cmpd_report optimized;
  cmpd_report optimal;
} cmpd_comparison;

CMPD_API const char* cmpd_version(void);
CMPD_API const char* cmpd_last_error(void);
CMPD_API const char* cmpd_status_string(cmpd_status status);

/* (3 / sqrt 2) ln((N + 1) / 3); NaN for n_levels < 2. */
CMPD_API double cmpd_default_support_threshold(int n_levels);

/* x_max <= 0 selects the default threshold. Otherwise the support ends at
 * x_max while the inner thresholds and step stay at the default design. */
CMPD_API cmpd_status cmpd_design_create(int n_levels, int segments_per_quadrant, double x_max,
                                        cmpd_design** out);
CMPD_API void cmpd_design_destroy(cmpd_design* design);

CMPD_API cmpd_status cmpd_design_info_get(const cmpd_design* design, cmpd_design_info* out);
/* L + 1 entries, x_0 = 0 through x_L = x_max. */
CMPD_API cmpd_status cmpd_design_thresholds(const cmpd_design* design, double* out,
                                            size_t capacity, size_t* count);
CMPD_API cmpd_status cmpd_design_cell_widths(const cmpd_design* design, double* out,
                                             size_t capacity, size_t* count);
CMPD_API cmpd_status cmpd_design_allocation(const cmpd_design* design, int* out, size_t capacity,
                                            size_t* count);
CMPD_API cmpd_status cmpd_design_slopes(const cmpd_design* design, double* out, size_t capacity,
                                        size_t* count);

/* High-rate (w^2/12) model. */
CMPD_API cmpd_status cmpd_design_evaluate(const cmpd_design* design, cmpd_report* out);
/* Exact midpoint-reproduction error power. */
CMPD_API cmpd_status cmpd_design_evaluate_exact(const cmpd_design* design, cmpd_report* out);
CMPD_API cmpd_status cmpd_design_monte_carlo(const cmpd_design* design, uint64_t n, uint64_t seed,
                                             unsigned workers, double* mse, double* std_error);

/* Indices follow the design's layout: 0 and N-1 are the overload cells. */
CMPD_API cmpd_status cmpd_design_encode(const cmpd_design* design, const double* samples,
                                        size_t n, uint32_t* indices);
CMPD_API cmpd_status cmpd_design_decode(const cmpd_design* design, const uint32_t* indices,
                                        size_t n, double* samples);

/* Design file, schema v1. `*length` excludes the terminating NUL, which is
 * written when capacity allows. */
CMPD_API cmpd_status cmpd_design_to_json(const cmpd_design* design, char* out, size_t capacity,
                                         size_t* length);
CMPD_API cmpd_status cmpd_design_from_json(const char* text, size_t length, cmpd_design** out);

CMPD_API cmpd_status cmpd_optimize_support(int n_levels, int segments_per_quadrant,
                                           cmpd_optimum* out);
/* x_max and D_L over lo + k step, k = 0 .. floor((hi - lo) / step). */
CMPD_API cmpd_status cmpd_sweep(int n_levels, int segments_per_quadrant, double lo, double hi,
                                double step, double* x_max, double* d_last, size_t capacity,
                                size_t* count);
CMPD_API cmpd_status cmpd_optimal_compandor_report(int n_levels, double x_max, cmpd_report* out);
CMPD_API cmpd_status cmpd_compare(int n_levels, int segments_per_quadrant, cmpd_comparison* out);
CMPD_API cmpd_status cmpd_compare_json(int n_levels, int segments_per_quadrant, char* out,
                                       size_t capacity, size_t* length);

/* Laplacian draws, mt19937_64 + inverse CDF; deterministic in (seed, n). */
CMPD_API cmpd_status cmpd_sample_laplacian(double variance, uint64_t seed, size_t n, double* out);

#ifdef __cplusplus
}
#endif

#endif /* COMPANDOR_H */
