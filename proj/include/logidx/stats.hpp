#pragma once

#include "logidx/error.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace logidx {

//! Competition ranking on descending order: 1 + #{j : v_j > v_i}.
std::vector<std::uint64_t> rank_descending(std::span<const std::uint64_t> values);

struct SummarySix
{
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double mean = 0.0;
  double q3 = 0.0;
  double max = 0.0;
};

//! Quantile by linear interpolation of order statistics at h = (n - 1) p.
//! `sorted` must be ascending and non-empty.
double quantile_sorted(std::span<const double> sorted, double p);

SummarySix summary_six(std::span<const double> values);

struct FitResult
{
  std::vector<double> coefficients; // intercept first
  std::vector<double> std_errors;
  std::vector<double> t_stats;
  std::vector<double> residuals;
  double r_squared = 0.0;
  double adj_r_squared = 0.0;
  double f_statistic = 0.0;
  double residual_se = 0.0;
  std::size_t n_obs = 0;
  std::size_t df_residual = 0;
  // False when n - p - 1 <= 0; the inference fields are then NaN.
  bool has_inference = false;
};

//! Ordinary least squares. Column 0 of `design` must be the intercept
//! (all ones). Throws Errc::singular for a rank-deficient design.
FitResult ols(const Eigen::VectorXd& y, const Eigen::MatrixXd& design);

//! Quadratic fit ln(r) = a + b ln(d) + c ln(d)^2 with r the competition
//! rank of each count. Needs at least 10 positive counts.
FitResult fit_rank_curve(std::span<const std::uint64_t> downloads);

//! Inflection points of r(x) = exp(a + b x + c x^2), reported on the
//! downloads scale (exp(x)).
struct Inflection
{
  double lower = 0.0;
  double upper = 0.0;
};

Inflection inflection_points(double a, double b, double c);

//! The larger inflection, the one inside the bulk of the rank curve.
double inflection_point(double a, double b, double c);

struct DensityCurve
{
  std::vector<double> grid;
  std::vector<double> values;
  double bandwidth = 0.0;
};

//! Bandwidth 0.9 * min(sd, IQR / 1.34) * n^(-1/5).
double kde_bandwidth(std::span<const double> samples);

//! Gaussian-kernel density on `grid_size` evenly spaced points spanning
//! [min - 3 bw, max + 3 bw].
DensityCurve kde(std::span<const double> samples, std::size_t grid_size = 512);

//! Trapezoid integral of the curve over its grid.
double trapezoid_integral(const DensityCurve& curve);

struct GaussianFit
{
  double mean = 0.0;
  double sd = 1.0;
  double peak = 1.0;
  double residual_sse = 0.0;
  std::size_t iterations = 0;
};

double gaussian_curve(const GaussianFit& fit, double x);

//! Thrown by fit_gaussian when the simplex does not converge; carries
//! the best point found.
class ConvergenceError : public Error
{
public:
  ConvergenceError(const GaussianFit& best, const std::string& what)
    : Error(Errc::no_convergence, what)
    , best_(best)
  {
  }
  const GaussianFit& best() const noexcept { return best_; }

private:
  GaussianFit best_;
};

//! Least-squares fit of peak * exp(-(x - mean)^2 / (2 sd^2)) to the curve
//! with a Nelder-Mead simplex.
GaussianFit fit_gaussian(const DensityCurve& curve, std::size_t max_iterations = 10000);

} // namespace logidx
