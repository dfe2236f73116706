#include "logidx/logidx.h"

#include "logidx/corpus.hpp"
#include "logidx/error.hpp"
#include "logidx/synth.hpp"
#include "logidx/tables.hpp"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>
#include <vector>

struct logidx_corpus
{
  std::vector<logidx::AuthorProfile> profiles;
  std::size_t warnings = 0;
};

struct logidx_reports
{
  std::vector<logidx::IndexReport> reports;
};

struct logidx_fit
{
  std::vector<logidx::RegressionBlock> blocks;
};

struct logidx_density
{
  logidx::DensityCurve curve;
};

namespace {

thread_local std::string last_error;

logidx_status to_status(logidx::Errc code)
{
  using logidx::Errc;
  switch (code) {
    case Errc::invalid_argument: return LOGIDX_E_INVALID_ARGUMENT;
    case Errc::io: return LOGIDX_E_IO;
    case Errc::parse: return LOGIDX_E_PARSE;
    case Errc::duplicate: return LOGIDX_E_DUPLICATE;
    case Errc::singular: return LOGIDX_E_SINGULAR;
    case Errc::degenerate: return LOGIDX_E_DEGENERATE;
    case Errc::no_inflection: return LOGIDX_E_NO_INFLECTION;
    case Errc::no_convergence: return LOGIDX_E_NO_CONVERGENCE;
    case Errc::undefined: return LOGIDX_E_UNDEFINED;
  }
  return LOGIDX_E_INTERNAL;
}

template <typename F>
logidx_status guarded(F&& body)
{
  try {
    body();
    last_error.clear();
    return LOGIDX_OK;
  } catch (const logidx::Error& e) {
    last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return LOGIDX_E_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return LOGIDX_E_INTERNAL;
  }
}

void require(bool ok, const char* what)
{
  if (!ok)
    throw logidx::Error(logidx::Errc::invalid_argument, what);
}

char* duplicate_string(const std::string& s)
{
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out)
    throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

logidx::Format to_format(logidx_format f)
{
  switch (f) {
    case LOGIDX_FORMAT_CSV: return logidx::Format::csv;
    case LOGIDX_FORMAT_JSON: return logidx::Format::json;
  }
  throw logidx::Error(logidx::Errc::invalid_argument, "unknown format");
}

logidx::DownloadVector to_vector(const uint64_t* counts, size_t n)
{
  require(counts || n == 0, "counts is null");
  return logidx::DownloadVector(std::vector<std::uint64_t>(counts, counts + n));
}

std::optional<logidx::Date> to_date(const char* as_of)
{
  if (!as_of || !*as_of)
    return std::nullopt;
  return logidx::Date::parse(as_of);
}

std::string_view to_view(const char* data, size_t len)
{
  require(data || len == 0, "data is null");
  return data ? std::string_view(data, len) : std::string_view();
}

const logidx::RegressionBlock& block_at(const logidx_fit* fit, size_t block)
{
  require(fit, "fit is null");
  require(block < fit->blocks.size(), "block index out of range");
  return fit->blocks[block];
}

} // namespace

extern "C" {

const char* logidx_status_name(logidx_status status)
{
  switch (status) {
    case LOGIDX_OK: return "ok";
    case LOGIDX_E_INVALID_ARGUMENT: return "invalid argument";
    case LOGIDX_E_IO: return "i/o error";
    case LOGIDX_E_PARSE: return "parse error";
    case LOGIDX_E_DUPLICATE: return "duplicate entry";
    case LOGIDX_E_SINGULAR: return "singular design";
    case LOGIDX_E_DEGENERATE: return "degenerate data";
    case LOGIDX_E_NO_INFLECTION: return "no inflection";
    case LOGIDX_E_NO_CONVERGENCE: return "no convergence";
    case LOGIDX_E_UNDEFINED: return "undefined value";
    case LOGIDX_E_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* logidx_last_error(void)
{
  return last_error.c_str();
}

void logidx_string_free(char* s)
{
  std::free(s);
}

logidx_status logidx_parse_format(const char* name, logidx_format* out)
{
  return guarded([&] {
    require(name && out, "null argument");
    *out = logidx::parse_format(name) == logidx::Format::csv ? LOGIDX_FORMAT_CSV
                                                              : LOGIDX_FORMAT_JSON;
  });
}

logidx_status logidx_k_star(const uint64_t* counts, size_t n, double gamma, logidx_k_result* out)
{
  return guarded([&] {
    require(out, "out is null");
    const auto r = logidx::k_star(to_vector(counts, n), logidx::GammaConfig(gamma));
    *out = { r.k, r.k_star, r.d_star };
  });
}

logidx_status logidx_kappa_star(const uint64_t* counts, size_t n, double gamma,
                                logidx_kappa_result* out)
{
  return guarded([&] {
    require(out, "out is null");
    const auto r = logidx::kappa_star(to_vector(counts, n), logidx::GammaConfig(gamma));
    *out = { r.kappa, r.kappa_star, r.f_star };
  });
}

logidx_status logidx_h_index(const uint64_t* counts, size_t n, uint64_t* out)
{
  return guarded([&] {
    require(out, "out is null");
    *out = logidx::h_index(to_vector(counts, n));
  });
}

logidx_status logidx_g_index(const uint64_t* counts, size_t n, uint64_t* out)
{
  return guarded([&] {
    require(out, "out is null");
    *out = logidx::g_index(to_vector(counts, n));
  });
}

logidx_status logidx_inflection(double a, double b, double c, double* lower, double* upper)
{
  return guarded([&] {
    const auto r = logidx::inflection_points(a, b, c);
    if (lower)
      *lower = r.lower;
    if (upper)
      *upper = r.upper;
  });
}

logidx_status logidx_gamma_heuristic(const double* v, size_t n, double* out)
{
  return guarded([&] {
    require(out && (v || n == 0), "null argument");
    *out = logidx::gamma_heuristic(std::span<const double>(v, n));
  });
}

logidx_status logidx_yong_estimate(double c_tot, double* out)
{
  return guarded([&] {
    require(out, "out is null");
    *out = logidx::yong_estimate(c_tot);
  });
}

logidx_status logidx_corpus_parse(const char* data, size_t len, logidx_format format,
                                  logidx_corpus** out)
{
  return guarded([&] {
    require(out, "out is null");
    auto parsed = logidx::parse_corpus(to_view(data, len), to_format(format));
    *out = new logidx_corpus{ std::move(parsed.profiles), parsed.warnings };
  });
}

logidx_status logidx_corpus_apply_totals(logidx_corpus* corpus, const char* data, size_t len,
                                         size_t* unknown)
{
  return guarded([&] {
    require(corpus, "corpus is null");
    const auto n = logidx::apply_totals(corpus->profiles, to_view(data, len));
    corpus->warnings += n;
    if (unknown)
      *unknown = n;
  });
}

size_t logidx_corpus_author_count(const logidx_corpus* corpus)
{
  return corpus ? corpus->profiles.size() : 0;
}

size_t logidx_corpus_warning_count(const logidx_corpus* corpus)
{
  return corpus ? corpus->warnings : 0;
}

logidx_status logidx_corpus_author_id(const logidx_corpus* corpus, size_t index, const char** out)
{
  return guarded([&] {
    require(corpus && out, "null argument");
    require(index < corpus->profiles.size(), "author index out of range");
    *out = corpus->profiles[index].author_id.c_str();
  });
}

logidx_status logidx_corpus_sanity(const logidx_corpus* corpus, size_t index, logidx_sanity* state,
                                   int64_t* delta)
{
  return guarded([&] {
    require(corpus && state, "null argument");
    require(index < corpus->profiles.size(), "author index out of range");
    const auto r = logidx::sanity_check(corpus->profiles[index]);
    switch (r.status) {
      case logidx::SanityResult::Status::pass: *state = LOGIDX_SANITY_PASS; break;
      case logidx::SanityResult::Status::fail: *state = LOGIDX_SANITY_FAIL; break;
      case logidx::SanityResult::Status::skipped: *state = LOGIDX_SANITY_SKIPPED; break;
    }
    if (delta)
      *delta = r.delta;
  });
}

logidx_status logidx_corpus_to_string(const logidx_corpus* corpus, logidx_format format,
                                      char** out)
{
  return guarded([&] {
    require(corpus && out, "null argument");
    *out = duplicate_string(logidx::write_corpus(corpus->profiles, to_format(format)));
  });
}

void logidx_corpus_free(logidx_corpus* corpus)
{
  delete corpus;
}

void logidx_synth_default_params(logidx_synth_params* out)
{
  if (!out)
    return;
  const auto p = logidx::default_params();
  *out = { p.n_authors,         p.paper_count_mean_log, p.paper_count_sd_log,
           p.author_quality_mean, p.author_quality_sd,  p.paper_noise_sd,
           p.seed };
}

logidx_status logidx_synth_generate(const logidx_synth_params* params, logidx_corpus** out)
{
  return guarded([&] {
    require(params && out, "null argument");
    logidx::SynthParams p;
    p.n_authors = params->n_authors;
    p.paper_count_mean_log = params->paper_count_mean_log;
    p.paper_count_sd_log = params->paper_count_sd_log;
    p.author_quality_mean = params->author_quality_mean;
    p.author_quality_sd = params->author_quality_sd;
    p.paper_noise_sd = params->paper_noise_sd;
    p.seed = params->seed;
    *out = new logidx_corpus{ logidx::generate(p), 0 };
  });
}

logidx_status logidx_reports_build(const logidx_corpus* corpus, double gamma, const char* as_of,
                                   logidx_reports** out)
{
  return guarded([&] {
    require(corpus && out, "null argument");
    auto reports =
      logidx::build_reports(corpus->profiles, logidx::GammaConfig(gamma), to_date(as_of));
    *out = new logidx_reports{ std::move(reports) };
  });
}

logidx_status logidx_reports_load(const char* data, size_t len, logidx_format format, double gamma,
                                  const char* as_of, logidx_reports** out)
{
  return guarded([&] {
    require(out, "out is null");
    const auto text = to_view(data, len);
    const auto fmt = to_format(format);
    if (logidx::looks_like_reports(text, fmt)) {
      *out = new logidx_reports{ logidx::parse_reports(text, fmt) };
      return;
    }
    const logidx::GammaConfig cfg(gamma);
    auto parsed = logidx::parse_corpus(text, fmt);
    *out = new logidx_reports{ logidx::build_reports(parsed.profiles, cfg, to_date(as_of)) };
  });
}

size_t logidx_reports_count(const logidx_reports* reports)
{
  return reports ? reports->reports.size() : 0;
}

logidx_status logidx_reports_get(const logidx_reports* reports, size_t index, logidx_report* out)
{
  return guarded([&] {
    require(reports && out, "null argument");
    require(index < reports->reports.size(), "report index out of range");
    const auto& r = reports->reports[index];
    logidx_report c{};
    c.author_id = r.author_id.c_str();
    c.d_tot = r.d_tot;
    c.n_tot = r.n_tot;
    c.n_pos = r.n_pos;
    c.k = r.k;
    c.k_star = r.k_star;
    c.d_star = r.d_star;
    c.kappa = r.kappa;
    c.kappa_star = r.kappa_star;
    c.f_star = r.f_star;
    c.h = r.h;
    c.g = r.g;
    auto set = [](const std::optional<double>& x, double& value, int& has) {
      has = x.has_value();
      value = x.value_or(0.0);
    };
    set(r.w, c.w, c.has_w);
    set(r.omega, c.omega, c.has_omega);
    set(r.u, c.u, c.has_u);
    set(r.mu, c.mu, c.has_mu);
    set(r.v, c.v, c.has_v);
    set(r.T, c.T, c.has_T);
    c.composite = r.composite;
    *out = c;
  });
}

logidx_status logidx_reports_to_string(const logidx_reports* reports, logidx_format format,
                                       char** out)
{
  return guarded([&] {
    require(reports && out, "null argument");
    *out = duplicate_string(logidx::write_reports(reports->reports, to_format(format)));
  });
}

logidx_status logidx_summary_to_string(const logidx_reports* reports, logidx_format format,
                                       char** out)
{
  return guarded([&] {
    require(reports && out, "null argument");
    const auto rows = logidx::cross_section(reports->reports);
    *out = duplicate_string(logidx::render_summary(rows, to_format(format)));
  });
}

logidx_status logidx_top_to_string(const logidx_reports* reports, const char* key, size_t top_n,
                                   logidx_format format, char** out)
{
  return guarded([&] {
    require(reports && key && out, "null argument");
    *out = duplicate_string(logidx::render_top(reports->reports, key, top_n, to_format(format)));
  });
}

void logidx_reports_free(logidx_reports* reports)
{
  delete reports;
}

logidx_status logidx_fit_rank(const logidx_reports* reports, logidx_fit** out)
{
  return guarded([&] {
    require(reports && out, "null argument");
    *out = new logidx_fit{ { logidx::rank_regression(reports->reports) } };
  });
}

logidx_status logidx_regress(const logidx_reports* reports, const char* response,
                             const char* const* regressors, size_t n_regressors, logidx_fit** out)
{
  return guarded([&] {
    require(reports && response && out && (regressors || n_regressors == 0), "null argument");
    std::vector<std::string> names;
    for (size_t i = 0; i < n_regressors; ++i) {
      require(regressors[i], "regressor name is null");
      names.emplace_back(regressors[i]);
    }
    *out = new logidx_fit{ { logidx::regress(reports->reports, response, names) } };
  });
}

logidx_status logidx_regress_family(const logidx_reports* reports, const char* family,
                                    logidx_fit** out)
{
  return guarded([&] {
    require(reports && family && out, "null argument");
    *out = new logidx_fit{ logidx::regression_family(reports->reports, family) };
  });
}

size_t logidx_fit_block_count(const logidx_fit* fit)
{
  return fit ? fit->blocks.size() : 0;
}

size_t logidx_fit_coefficient_count(const logidx_fit* fit, size_t block)
{
  if (!fit || block >= fit->blocks.size())
    return 0;
  return fit->blocks[block].fit.coefficients.size();
}

logidx_status logidx_fit_coefficient(const logidx_fit* fit, size_t block, size_t i,
                                     double* estimate, double* std_error, double* t_statistic)
{
  return guarded([&] {
    const auto& b = block_at(fit, block);
    require(i < b.fit.coefficients.size(), "coefficient index out of range");
    if (estimate)
      *estimate = b.fit.coefficients[i];
    if (std_error)
      *std_error = b.fit.std_errors[i];
    if (t_statistic)
      *t_statistic = b.fit.t_stats[i];
  });
}

logidx_status logidx_fit_stats(const logidx_fit* fit, size_t block, double* r_squared,
                               double* adj_r_squared, double* f_statistic, uint64_t* n_obs,
                               int* has_inference)
{
  return guarded([&] {
    const auto& b = block_at(fit, block);
    if (r_squared)
      *r_squared = b.fit.r_squared;
    if (adj_r_squared)
      *adj_r_squared = b.fit.adj_r_squared;
    if (f_statistic)
      *f_statistic = b.fit.f_statistic;
    if (n_obs)
      *n_obs = b.fit.n_obs;
    if (has_inference)
      *has_inference = b.fit.has_inference;
  });
}

logidx_status logidx_fit_inflection(const logidx_fit* fit, size_t block, double* lower,
                                    double* upper)
{
  return guarded([&] {
    const auto& b = block_at(fit, block);
    if (!b.inflection)
      throw logidx::Error(logidx::Errc::no_inflection, "fit has no inflection point");
    if (lower)
      *lower = b.inflection->lower;
    if (upper)
      *upper = b.inflection->upper;
  });
}

logidx_status logidx_fit_to_string(const logidx_fit* fit, logidx_format format, char** out)
{
  return guarded([&] {
    require(fit && out, "null argument");
    *out = duplicate_string(logidx::render(fit->blocks, to_format(format)));
  });
}

void logidx_fit_free(logidx_fit* fit)
{
  delete fit;
}

logidx_status logidx_density_from_reports(const logidx_reports* reports, size_t grid_size,
                                          logidx_density** out)
{
  return guarded([&] {
    require(reports && out, "null argument");
    const auto samples = logidx::log_downloads_per_paper(reports->reports);
    *out = new logidx_density{ logidx::kde(samples, grid_size) };
  });
}

logidx_status logidx_density_from_samples(const double* samples, size_t n, size_t grid_size,
                                          logidx_density** out)
{
  return guarded([&] {
    require(out && (samples || n == 0), "null argument");
    *out = new logidx_density{ logidx::kde(std::span<const double>(samples, n), grid_size) };
  });
}

size_t logidx_density_size(const logidx_density* density)
{
  return density ? density->curve.grid.size() : 0;
}

double logidx_density_bandwidth(const logidx_density* density)
{
  return density ? density->curve.bandwidth : 0.0;
}

logidx_status logidx_density_fit(const logidx_density* density, logidx_gaussian* out)
{
  return guarded([&] {
    require(density && out, "null argument");
    try {
      const auto fit = logidx::fit_gaussian(density->curve);
      *out = { fit.mean, fit.sd, fit.peak, fit.residual_sse };
    } catch (const logidx::ConvergenceError& e) {
      const auto& best = e.best();
      *out = { best.mean, best.sd, best.peak, best.residual_sse };
      throw;
    }
  });
}

logidx_status logidx_density_points(const logidx_density* density, char** out)
{
  return guarded([&] {
    require(density && out, "null argument");
    *out = duplicate_string(logidx::render_points(density->curve.grid, density->curve.values));
  });
}

logidx_status logidx_gaussian_points(const logidx_density* density, const logidx_gaussian* fit,
                                     char** out)
{
  return guarded([&] {
    require(density && fit && out, "null argument");
    const logidx::GaussianFit g{ fit->mean, fit->sd, fit->peak, fit->residual_sse, 0 };
    std::vector<double> ys;
    ys.reserve(density->curve.grid.size());
    for (double x : density->curve.grid)
      ys.push_back(logidx::gaussian_curve(g, x));
    *out = duplicate_string(logidx::render_points(density->curve.grid, ys));
  });
}

logidx_status logidx_gaussian_to_string(const logidx_gaussian* fit, const logidx_density* density,
                                        logidx_format format, char** out)
{
  return guarded([&] {
    require(fit && density && out, "null argument");
    const logidx::GaussianFit g{ fit->mean, fit->sd, fit->peak, fit->residual_sse, 0 };
    *out = duplicate_string(logidx::render_gaussian(g, density->curve, to_format(format)));
  });
}

void logidx_density_free(logidx_density* density)
{
  delete density;
}

} // extern "C"
