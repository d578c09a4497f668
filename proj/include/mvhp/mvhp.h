#ifndef MVHP_MVHP_H
#define MVHP_MVHP_H

#include <stddef.h>

#if defined(MVHP_BUILDING_LIBRARY)
#define MVHP_API __attribute__((visibility("default")))
#else
#define MVHP_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes. Every nonzero code maps to one process exit code through
 * mvhp_exit_code: 1 for bad input, 2 for numerical failure, 3 for internal. */
typedef enum mvhp_status {
  MVHP_OK = 0,
  MVHP_INVALID_ARGUMENT,
  MVHP_PARSE_ERROR,
  MVHP_MISSING_HEADER,
  MVHP_NON_NUMERIC_CELL,
  MVHP_TOO_SHORT,
  MVHP_DIMENSION_MISMATCH,
  MVHP_NOT_SYMMETRIC,
  MVHP_MISSING_AGGREGATE,
  MVHP_LAG_TOO_LARGE,
  MVHP_IO_ERROR,
  MVHP_NOT_POSITIVE_DEFINITE,
  MVHP_NO_CONVERGENCE,
  MVHP_DEGENERATE_LEADING_COEFFICIENT,
  MVHP_NEGATIVE_SNR,
  MVHP_OUT_OF_INVERTIBLE_RANGE,
  MVHP_ZERO_RESIDUAL_VARIANCE,
  MVHP_NEGATIVE_SNR_EIGENVALUE,
  MVHP_INTERNAL_ERROR
} mvhp_status;

MVHP_API int mvhp_exit_code(mvhp_status status);
MVHP_API const char* mvhp_status_name(mvhp_status status);

/* Message of the last failed call on the calling thread ("" if none). */
MVHP_API const char* mvhp_last_error(void);

/* Strings returned through char** out-parameters are owned by the caller. */
MVHP_API void mvhp_string_free(char* s);

/* ---- panels: N x d observations with series names and optional dates ---- */

typedef struct mvhp_panel mvhp_panel;

MVHP_API mvhp_status mvhp_panel_load_csv(const char* path, mvhp_panel** out);
MVHP_API mvhp_status mvhp_panel_parse_csv(const char* text, mvhp_panel** out);
/* `data` is row-major, rows * cols values; names become y1..yd. */
MVHP_API mvhp_status mvhp_panel_from_array(size_t rows, size_t cols, const double* data, mvhp_panel** out);
MVHP_API mvhp_status mvhp_panel_write_csv(const mvhp_panel* panel, const char* path);
MVHP_API mvhp_status mvhp_panel_format_csv(const mvhp_panel* panel, char** out);
MVHP_API size_t mvhp_panel_rows(const mvhp_panel* panel);
MVHP_API size_t mvhp_panel_cols(const mvhp_panel* panel);
MVHP_API double mvhp_panel_get(const mvhp_panel* panel, size_t row, size_t col);
MVHP_API const char* mvhp_panel_name(const mvhp_panel* panel, size_t col);
MVHP_API void mvhp_panel_free(mvhp_panel* panel);

/* ---- models: a fitted estimate, or a decoupling loaded from a report ---- */

typedef struct mvhp_model mvhp_model;

/* META estimate. target_min_snr is the floor on the smallest signal-noise
 * eigenvalue (1/14400 for monthly data); threads = 0 means MVHP_THREADS or
 * the hardware concurrency. */
MVHP_API mvhp_status mvhp_estimate(const mvhp_panel* panel, double target_min_snr, unsigned threads,
                                   mvhp_model** out);
MVHP_API mvhp_status mvhp_model_from_report(const char* report_json, mvhp_model** out);
/* Full estimation report; MVHP_INVALID_ARGUMENT for models loaded from a report. */
MVHP_API mvhp_status mvhp_model_report_json(const mvhp_model* model, char** out);
MVHP_API size_t mvhp_model_dim(const mvhp_model* model);
/* Copies the d signal-noise ratios (descending) into `out`. */
MVHP_API mvhp_status mvhp_model_delta(const mvhp_model* model, double* out, size_t len);
/* Copies the d x d transform P row-major into `out`. */
MVHP_API mvhp_status mvhp_model_transform(const mvhp_model* model, double* out, size_t len);
/* Regularization shift; NaN for models loaded from a report. */
MVHP_API double mvhp_model_alpha(const mvhp_model* model);
MVHP_API void mvhp_model_free(mvhp_model* model);

/* ---- trend extraction ---- */

/* Trend and cycle panels carry the names and dates of `panel`. fixed_lambda
 * <= 0 uses lambda_k = 1/delta_k; a positive value uses it for every component. */
MVHP_API mvhp_status mvhp_detrend(const mvhp_panel* panel, const mvhp_model* model, double fixed_lambda,
                                  unsigned threads, mvhp_panel** trend, mvhp_panel** cycle);

/* One SVG per series in `dir`. fixed_trend may be NULL. */
MVHP_API mvhp_status mvhp_write_plots(const char* dir, const mvhp_panel* raw, const mvhp_panel* trend,
                                      const mvhp_panel* fixed_trend);

/* ---- JSON-in, JSON-out helpers ---- */

/* {"sigma_eps": [[...]], "sigma_xi": [[...]]} -> reduced-form report. */
MVHP_API mvhp_status mvhp_factorize_json(const char* covariances_json, char** out);

/* Simulation config -> observations and true trend. `trend` may be NULL. */
MVHP_API mvhp_status mvhp_simulate_json(const char* config_json, mvhp_panel** y, mvhp_panel** trend);

#ifdef __cplusplus
}
#endif

#endif
