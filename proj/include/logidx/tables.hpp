#pragma once

// Analyses over report sets and their tabular renderings.

#include "logidx/corpus.hpp"
#include "logidx/stats.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace logidx {

//! A fitted regression with its term labels, ready for rendering.
struct RegressionBlock
{
  std::string response;
  std::vector<std::string> terms; // "(Intercept)" first
  FitResult fit;
  std::optional<Inflection> inflection;
};

//! ln(rank of d_tot) on ln(d_tot) and its square, plus inflections when
//! the quadratic term is negative. Authors with d_tot = 0 are skipped.
RegressionBlock rank_regression(std::span<const IndexReport> reports);

//! OLS of `response` on `regressors` (names understood by
//! report_variable). Rows with any absent value are dropped, and rows
//! with T < 1 are dropped whenever a variable is derived from T.
RegressionBlock regress(std::span<const IndexReport> reports, std::string_view response,
                        std::span<const std::string> regressors);

//! Named regression families: "informativeness" (k_star, k, kappa_star,
//! kappa on ln_d_tot, then on ln_d_tot + ln_n_tot) and "time"
//! (ln_d_tot, ln_d_per_n, k_star, kappa_star on ln_T).
std::vector<RegressionBlock> regression_family(std::span<const IndexReport> reports,
                                               std::string_view family);

std::string render(const RegressionBlock& block, Format format);
std::string render(std::span<const RegressionBlock> blocks, Format format);

std::string render_summary(std::span<const SummaryRow> rows, Format format);

//! Leaderboard ordered by `key` (k_star, kappa_star or composite)
//! descending, ties by d_tot descending then author_id. Index values are
//! truncated to 3 decimals and the download-scale value to an integer.
std::string render_top(std::span<const IndexReport> reports, std::string_view key,
                       std::size_t top_n, Format format);

//! Samples ln(d_tot / n_tot) for reports where it is defined.
std::vector<double> log_downloads_per_paper(std::span<const IndexReport> reports);

std::string render_points(std::span<const double> xs, std::span<const double> ys);
std::string render_gaussian(const GaussianFit& fit, const DensityCurve& curve, Format format);

} // namespace logidx
