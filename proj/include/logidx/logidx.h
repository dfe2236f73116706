/*
 * logidx: log-based download indexes for author download corpora.
 *
 * C interface over the C++ core. Every fallible call returns a
 * logidx_status; on failure a message for the calling thread is
 * available from logidx_last_error(). Objects are opaque handles owned by
 * the caller and released with the matching *_free function. Strings
 * returned through `char** out` are heap allocated and released with
 * logidx_string_free().
 */
#ifndef LOGIDX_LOGIDX_H
#define LOGIDX_LOGIDX_H

#include <stddef.h>
#include <stdint.h>

#if defined(LOGIDX_BUILDING_LIBRARY)
#define LOGIDX_API __attribute__((visibility("default")))
#else
#define LOGIDX_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum logidx_status {
  LOGIDX_OK = 0,
  LOGIDX_E_INVALID_ARGUMENT = 1,
  LOGIDX_E_IO = 2,
  LOGIDX_E_PARSE = 3,
  LOGIDX_E_DUPLICATE = 4,
  LOGIDX_E_SINGULAR = 5,
  LOGIDX_E_DEGENERATE = 6,
  LOGIDX_E_NO_INFLECTION = 7,
  LOGIDX_E_NO_CONVERGENCE = 8,
  LOGIDX_E_UNDEFINED = 9,
  LOGIDX_E_INTERNAL = 100
} logidx_status;

typedef enum logidx_format {
  LOGIDX_FORMAT_CSV = 0,
  LOGIDX_FORMAT_JSON = 1
} logidx_format;

typedef enum logidx_sanity {
  LOGIDX_SANITY_PASS = 0,
  LOGIDX_SANITY_FAIL = 1,
  LOGIDX_SANITY_SKIPPED = 2
} logidx_sanity;

typedef struct logidx_corpus logidx_corpus;
typedef struct logidx_reports logidx_reports;
typedef struct logidx_fit logidx_fit;
typedef struct logidx_density logidx_density;

typedef struct logidx_k_result {
  uint64_t k;
  double k_star;
  double d_star;
} logidx_k_result;

typedef struct logidx_kappa_result {
  uint64_t kappa;
  double kappa_star;
  double f_star;
} logidx_kappa_result;

/* One author's indexes. Optional diagnostics carry a has_* flag. */
typedef struct logidx_report {
  const char* author_id; /* valid while the owning logidx_reports lives */
  uint64_t d_tot, n_tot, n_pos;
  uint64_t k;
  double k_star, d_star;
  uint64_t kappa;
  double kappa_star, f_star;
  uint64_t h, g;
  double w, omega, u, mu, v, T;
  int has_w, has_omega, has_u, has_mu, has_v, has_T;
  double composite;
} logidx_report;

typedef struct logidx_synth_params {
  uint64_t n_authors;
  double paper_count_mean_log;
  double paper_count_sd_log;
  double author_quality_mean;
  double author_quality_sd;
  double paper_noise_sd;
  uint64_t seed;
} logidx_synth_params;

typedef struct logidx_gaussian {
  double mean;
  double sd;
  double peak;
  double residual_sse;
} logidx_gaussian;

/* Errors and memory */
LOGIDX_API const char* logidx_status_name(logidx_status status);
LOGIDX_API const char* logidx_last_error(void);
LOGIDX_API void logidx_string_free(char* s);
LOGIDX_API logidx_status logidx_parse_format(const char* name, logidx_format* out);

/* Indexes on a raw vector of counts (any order; zeros allowed) */
LOGIDX_API logidx_status logidx_k_star(const uint64_t* counts, size_t n, double gamma,
                                       logidx_k_result* out);
LOGIDX_API logidx_status logidx_kappa_star(const uint64_t* counts, size_t n, double gamma,
                                           logidx_kappa_result* out);
LOGIDX_API logidx_status logidx_h_index(const uint64_t* counts, size_t n, uint64_t* out);
LOGIDX_API logidx_status logidx_g_index(const uint64_t* counts, size_t n, uint64_t* out);

/* Statistics helpers */
LOGIDX_API logidx_status logidx_inflection(double a, double b, double c, double* lower,
                                           double* upper);
LOGIDX_API logidx_status logidx_gamma_heuristic(const double* v, size_t n, double* out);
LOGIDX_API logidx_status logidx_yong_estimate(double c_tot, double* out);

/* Corpus */
LOGIDX_API logidx_status logidx_corpus_parse(const char* data, size_t len, logidx_format format,
                                             logidx_corpus** out);
/* `author_id,declared_total` CSV; *unknown receives the count of rows
 * naming authors absent from the corpus (may be NULL). */
LOGIDX_API logidx_status logidx_corpus_apply_totals(logidx_corpus* corpus, const char* data,
                                                    size_t len, size_t* unknown);
LOGIDX_API size_t logidx_corpus_author_count(const logidx_corpus* corpus);
LOGIDX_API size_t logidx_corpus_warning_count(const logidx_corpus* corpus);
LOGIDX_API logidx_status logidx_corpus_author_id(const logidx_corpus* corpus, size_t index,
                                                 const char** out);
LOGIDX_API logidx_status logidx_corpus_sanity(const logidx_corpus* corpus, size_t index,
                                              logidx_sanity* state, int64_t* delta);
LOGIDX_API logidx_status logidx_corpus_to_string(const logidx_corpus* corpus,
                                                 logidx_format format, char** out);
LOGIDX_API void logidx_corpus_free(logidx_corpus* corpus);

/* Synthetic corpora */
LOGIDX_API void logidx_synth_default_params(logidx_synth_params* out);
LOGIDX_API logidx_status logidx_synth_generate(const logidx_synth_params* params,
                                               logidx_corpus** out);

/* Reports. as_of is YYYY-MM-DD or NULL. */
LOGIDX_API logidx_status logidx_reports_build(const logidx_corpus* corpus, double gamma,
                                              const char* as_of, logidx_reports** out);
/* Accepts either a corpus or a report file; corpora are indexed with the
 * given gamma and as_of. */
LOGIDX_API logidx_status logidx_reports_load(const char* data, size_t len, logidx_format format,
                                             double gamma, const char* as_of,
                                             logidx_reports** out);
LOGIDX_API size_t logidx_reports_count(const logidx_reports* reports);
LOGIDX_API logidx_status logidx_reports_get(const logidx_reports* reports, size_t index,
                                            logidx_report* out);
LOGIDX_API logidx_status logidx_reports_to_string(const logidx_reports* reports,
                                                  logidx_format format, char** out);
LOGIDX_API logidx_status logidx_summary_to_string(const logidx_reports* reports,
                                                  logidx_format format, char** out);
/* key: "k_star", "kappa_star" or "composite". */
LOGIDX_API logidx_status logidx_top_to_string(const logidx_reports* reports, const char* key,
                                              size_t top_n, logidx_format format, char** out);
LOGIDX_API void logidx_reports_free(logidx_reports* reports);

/* Regressions. A fit handle holds one or more regression blocks. */
LOGIDX_API logidx_status logidx_fit_rank(const logidx_reports* reports, logidx_fit** out);
LOGIDX_API logidx_status logidx_regress(const logidx_reports* reports, const char* response,
                                        const char* const* regressors, size_t n_regressors,
                                        logidx_fit** out);
/* family: "informativeness" or "time". */
LOGIDX_API logidx_status logidx_regress_family(const logidx_reports* reports, const char* family,
                                               logidx_fit** out);
LOGIDX_API size_t logidx_fit_block_count(const logidx_fit* fit);
LOGIDX_API size_t logidx_fit_coefficient_count(const logidx_fit* fit, size_t block);
LOGIDX_API logidx_status logidx_fit_coefficient(const logidx_fit* fit, size_t block, size_t i,
                                                double* estimate, double* std_error,
                                                double* t_statistic);
LOGIDX_API logidx_status logidx_fit_stats(const logidx_fit* fit, size_t block, double* r_squared,
                                          double* adj_r_squared, double* f_statistic,
                                          uint64_t* n_obs, int* has_inference);
/* Fails with LOGIDX_E_NO_INFLECTION when the block has none. */
LOGIDX_API logidx_status logidx_fit_inflection(const logidx_fit* fit, size_t block,
                                               double* lower, double* upper);
LOGIDX_API logidx_status logidx_fit_to_string(const logidx_fit* fit, logidx_format format,
                                              char** out);
LOGIDX_API void logidx_fit_free(logidx_fit* fit);

/* Density of ln(d_tot / n_tot) and its Gaussian fit */
LOGIDX_API logidx_status logidx_density_from_reports(const logidx_reports* reports,
                                                     size_t grid_size, logidx_density** out);
LOGIDX_API logidx_status logidx_density_from_samples(const double* samples, size_t n,
                                                     size_t grid_size, logidx_density** out);
LOGIDX_API size_t logidx_density_size(const logidx_density* density);
LOGIDX_API double logidx_density_bandwidth(const logidx_density* density);
LOGIDX_API logidx_status logidx_density_fit(const logidx_density* density, logidx_gaussian* out);
/* "x,y" lines: the density itself, or the fitted curve on the same grid. */
LOGIDX_API logidx_status logidx_density_points(const logidx_density* density, char** out);
LOGIDX_API logidx_status logidx_gaussian_points(const logidx_density* density,
                                                const logidx_gaussian* fit, char** out);
LOGIDX_API logidx_status logidx_gaussian_to_string(const logidx_gaussian* fit,
                                                   const logidx_density* density,
                                                   logidx_format format, char** out);
LOGIDX_API void logidx_density_free(logidx_density* density);

#ifdef __cplusplus
}
#endif

#endif /* LOGIDX_LOGIDX_H */
