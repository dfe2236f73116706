#include "logidx/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace logidx {

std::vector<std::uint64_t> rank_descending(std::span<const std::uint64_t> values)
{
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{ 0 });
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
  std::vector<std::uint64_t> ranks(n);
  for (std::size_t pos = 0; pos < n; ++pos) {
    const std::size_t i = order[pos];
    if (pos > 0 && values[order[pos - 1]] == values[i])
      ranks[i] = ranks[order[pos - 1]];
    else
      ranks[i] = pos + 1;
  }
  return ranks;
}

double quantile_sorted(std::span<const double> sorted, double p)
{
  if (sorted.empty())
    throw Error(Errc::invalid_argument, "quantile of an empty sample");
  p = std::clamp(p, 0.0, 1.0);
  const double h = static_cast<double>(sorted.size() - 1) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = h - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

SummarySix summary_six(std::span<const double> values)
{
  if (values.empty())
    throw Error(Errc::invalid_argument, "summary of an empty sample");
  std::vector<double> s(values.begin(), values.end());
  std::sort(s.begin(), s.end());
  SummarySix out;
  out.min = s.front();
  out.max = s.back();
  out.q1 = quantile_sorted(s, 0.25);
  out.median = quantile_sorted(s, 0.5);
  out.q3 = quantile_sorted(s, 0.75);
  out.mean = std::accumulate(s.begin(), s.end(), 0.0) / static_cast<double>(s.size());
  // Rounding in the sum can push the mean a hair outside [min, max].
  out.mean = std::clamp(out.mean, out.min, out.max);
  return out;
}

FitResult ols(const Eigen::VectorXd& y, const Eigen::MatrixXd& design)
{
  const Eigen::Index n = design.rows();
  const Eigen::Index cols = design.cols();
  if (y.size() != n)
    throw Error(Errc::invalid_argument, "response length does not match design rows");
  if (cols == 0)
    throw Error(Errc::invalid_argument, "design matrix has no columns");
  if (!(design.col(0).array() == 1.0).all())
    throw Error(Errc::invalid_argument, "design column 0 must be the intercept");
  if (n < cols)
    throw Error(Errc::singular, "fewer observations than coefficients");
  if (!y.allFinite() || !design.allFinite())
    throw Error(Errc::invalid_argument, "non-finite value in regression data");

  // Center and scale the regressors; the intercept column is then
  // orthogonal to the rest and all columns have unit norm.
  Eigen::MatrixXd scaled = design;
  Eigen::VectorXd means = Eigen::VectorXd::Zero(cols);
  Eigen::VectorXd scales = Eigen::VectorXd::Ones(cols);
  for (Eigen::Index j = 1; j < cols; ++j) {
    means(j) = design.col(j).mean();
    scaled.col(j).array() -= means(j);
    scales(j) = scaled.col(j).norm();
    if (!(scales(j) > 0.0))
      throw Error(Errc::singular, "design column " + std::to_string(j) + " is constant");
    scaled.col(j) /= scales(j);
  }
  scales(0) = std::sqrt(static_cast<double>(n));
  scaled.col(0) /= scales(0);

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(scaled);
  qr.setThreshold(1e-10);
  if (qr.rank() < cols)
    throw Error(Errc::singular, "design matrix is rank deficient");

  const Eigen::VectorXd beta_scaled = qr.solve(y);

  // beta = A * S^-1 * beta_scaled, with A undoing the centering.
  Eigen::MatrixXd transform = Eigen::MatrixXd::Identity(cols, cols);
  for (Eigen::Index j = 1; j < cols; ++j)
    transform(0, j) = -means(j);
  transform = transform * scales.cwiseInverse().asDiagonal();
  const Eigen::VectorXd beta = transform * beta_scaled;

  FitResult fit;
  fit.n_obs = static_cast<std::size_t>(n);
  fit.coefficients.assign(beta.data(), beta.data() + cols);
  const Eigen::VectorXd resid = y - design * beta;
  fit.residuals.assign(resid.data(), resid.data() + n);

  const double sse = resid.squaredNorm();
  const double sst = (y.array() - y.mean()).square().sum();
  if (sst > 0.0)
    fit.r_squared = std::clamp(1.0 - sse / sst, 0.0, 1.0);
  else
    fit.r_squared = sse == 0.0 ? 1.0 : 0.0;

  const double nan = std::numeric_limits<double>::quiet_NaN();
  const auto p = static_cast<std::size_t>(cols - 1);
  fit.df_residual = static_cast<std::size_t>(n - cols);
  fit.std_errors.assign(static_cast<std::size_t>(cols), nan);
  fit.t_stats.assign(static_cast<std::size_t>(cols), nan);
  fit.adj_r_squared = nan;
  fit.f_statistic = nan;
  fit.residual_se = nan;
  if (fit.df_residual == 0)
    return fit;

  fit.has_inference = true;
  const double df = static_cast<double>(fit.df_residual);
  const double sigma2 = sse / df;
  fit.residual_se = std::sqrt(sigma2);

  // (X'X)^-1 in scaled coordinates is P R^-1 R^-T P'.
  const Eigen::MatrixXd r =
    qr.matrixQR().topLeftCorner(cols, cols).triangularView<Eigen::Upper>();
  const Eigen::MatrixXd r_inv =
    r.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(cols, cols));
  const Eigen::MatrixXd perm = qr.colsPermutation();
  const Eigen::MatrixXd inv_gram_scaled = perm * r_inv * r_inv.transpose() * perm.transpose();
  const Eigen::MatrixXd inv_gram = transform * inv_gram_scaled * transform.transpose();

  for (Eigen::Index j = 0; j < cols; ++j) {
    const double se = std::sqrt(sigma2 * inv_gram(j, j));
    fit.std_errors[j] = se;
    fit.t_stats[j] = se > 0.0 ? fit.coefficients[j] / se : nan;
  }
  const double nd = static_cast<double>(n);
  fit.adj_r_squared = 1.0 - (1.0 - fit.r_squared) * (nd - 1.0) / df;
  if (p > 0) {
    fit.f_statistic = fit.r_squared < 1.0
                        ? (fit.r_squared / static_cast<double>(p)) / ((1.0 - fit.r_squared) / df)
                        : std::numeric_limits<double>::infinity();
  }
  return fit;
}

FitResult fit_rank_curve(std::span<const std::uint64_t> downloads)
{
  if (downloads.size() < 10)
    throw Error(Errc::invalid_argument, "rank curve fit needs at least 10 observations");
  if (std::find(downloads.begin(), downloads.end(), std::uint64_t{ 0 }) != downloads.end())
    throw Error(Errc::invalid_argument, "rank curve fit needs positive download counts");

  const auto ranks = rank_descending(downloads);
  const auto n = static_cast<Eigen::Index>(downloads.size());
  Eigen::VectorXd y(n);
  Eigen::MatrixXd x(n, 3);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double ld = std::log(static_cast<double>(downloads[i]));
    y(i) = std::log(static_cast<double>(ranks[i]));
    x(i, 0) = 1.0;
    x(i, 1) = ld;
    x(i, 2) = ld * ld;
  }
  return ols(y, x);
}

Inflection inflection_points(double a, double b, double c)
{
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c))
    throw Error(Errc::invalid_argument, "non-finite curve coefficient");
  if (!(c < 0.0))
    throw Error(Errc::no_inflection, "no inflection: quadratic coefficient must be negative");
  // r'' = r ((b + 2 c x)^2 + 2 c) vanishes at b + 2 c x = +-sqrt(-2 c).
  const double root = std::sqrt(-2.0 * c);
  const double denom = -2.0 * c;
  return { std::exp((b - root) / denom), std::exp((b + root) / denom) };
}

double inflection_point(double a, double b, double c)
{
  return inflection_points(a, b, c).upper;
}

} // namespace logidx
