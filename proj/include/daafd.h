/*
 * daafd — adaptive Blaschke-product decomposition on the unit ball of C^N.
 *
 * C interface of the shared library. All objects are opaque handles created
 * and destroyed here; every fallible call returns a daafd_status, and a
 * human-readable message for the most recent failure on the calling thread
 * is available from daafd_last_error(). Strings returned through char**
 * output parameters are heap-allocated and must be released with
 * daafd_string_free().
 *
 * Structured data crosses this boundary as JSON/CSV text; the schemas are
 * documented in the project README.
 */

#ifndef DAAFD_H
#define DAAFD_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum daafd_status {
  DAAFD_OK = 0,
  DAAFD_ERR_PARSE = 1,    /* malformed or invalid input text */
  DAAFD_ERR_DIVISION = 2, /* residual left the factor's range mid-decomposition */
  DAAFD_ERR_INVALID = 3,  /* bad argument (null handle, shape mismatch, ...) */
  DAAFD_ERR_INTERNAL = 4
} daafd_status;

typedef struct daafd_series daafd_series;
typedef struct daafd_config daafd_config;
typedef struct daafd_report daafd_report;

const char* daafd_version(void);
const char* daafd_last_error(void);
void daafd_string_free(char* s);

/* ---- power series (function spec JSON) ---- */

daafd_status daafd_series_parse(const char* json, daafd_series** out);
daafd_status daafd_series_to_json(const daafd_series* s, char** json_out);
void daafd_series_free(daafd_series* s);

int daafd_series_dim(const daafd_series* s);        /* N, or -1 */
int daafd_series_rows(const daafd_series* s);       /* or -1 */
int daafd_series_cols(const daafd_series* s);       /* or -1 */
int daafd_series_max_degree(const daafd_series* s); /* or -1 */

/* z: 2N doubles (re,im per coordinate), ||z|| < 1.
 * out: 2*rows*cols doubles, row-major, re,im per entry. */
daafd_status daafd_series_eval(const daafd_series* s, const double* z, double* out);

/* ---- run configuration ---- */

daafd_status daafd_config_default(daafd_config** out);
daafd_status daafd_config_parse(const char* json, daafd_config** out);
daafd_status daafd_config_set_seed(daafd_config* c, unsigned long long seed);
daafd_status daafd_config_set_threads(daafd_config* c, int threads);
void daafd_config_free(daafd_config* c);

/* ---- adaptive decomposition ---- */

daafd_status daafd_decompose(const daafd_series* f, const daafd_config* c, daafd_report** out);

/* Re-runs the steps recorded in an earlier report (same input, same config)
 * without searching; energies must reproduce exactly. */
daafd_status daafd_decompose_replay(const daafd_series* f, const daafd_config* c,
                                    const char* recorded_report_json, daafd_report** out);

int daafd_report_step_count(const daafd_report* r); /* or -1 */
daafd_status daafd_report_to_json(const daafd_report* r, char** json_out);
daafd_status daafd_report_energies_csv(const daafd_report* r, char** csv_out);

/* Partial reconstruction from the stored factors at an interior point.
 * upto: last step included, -1 for none. out as in daafd_series_eval. */
daafd_status daafd_report_reconstruct(const daafd_report* r, const double* z, int upto,
                                      double* out);
void daafd_report_free(daafd_report* r);

/* ---- one-shot drivers ---- */

/* Tangential interpolation: problem JSON in, factor-chain JSON out. */
daafd_status daafd_interp(const char* problem_json, char** chain_json_out);

/* Randomized property suites; CSV table out, *all_pass_out set to 0/1.
 * inject_fault != 0 perturbs every residual (negative control). */
daafd_status daafd_verify(int ncases, unsigned long long seed, int inject_fault, char** csv_out,
                          int* all_pass_out);

/* Partial-product convergence diagnostics for a point sequence. */
daafd_status daafd_infprod(const char* points_json, const char* z_json, int m_max,
                           char** csv_out);

#ifdef __cplusplus
}
#endif

#endif /* DAAFD_H */
