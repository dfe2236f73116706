#include "logidx/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace logidx {

double kde_bandwidth(std::span<const double> samples)
{
  const std::size_t n = samples.size();
  if (n < 2)
    throw Error(Errc::degenerate, "density estimate needs at least two samples");
  std::vector<double> s(samples.begin(), samples.end());
  std::sort(s.begin(), s.end());
  if (s.front() == s.back())
    throw Error(Errc::degenerate, "density estimate needs at least two distinct samples");

  const double mean = std::accumulate(s.begin(), s.end(), 0.0) / static_cast<double>(n);
  double ss = 0.0;
  for (double x : s)
    ss += (x - mean) * (x - mean);
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));
  const double iqr = quantile_sorted(s, 0.75) - quantile_sorted(s, 0.25);

  // A zero IQR (heavy ties) falls back to the standard deviation.
  double spread = std::min(sd, iqr / 1.34);
  if (!(spread > 0.0))
    spread = sd;
  return 0.9 * spread * std::pow(static_cast<double>(n), -0.2);
}

DensityCurve kde(std::span<const double> samples, std::size_t grid_size)
{
  if (grid_size < 2)
    throw Error(Errc::invalid_argument, "density grid needs at least two points");
  for (double x : samples)
    if (!std::isfinite(x))
      throw Error(Errc::invalid_argument, "non-finite density sample");

  DensityCurve curve;
  curve.bandwidth = kde_bandwidth(samples);
  const double bw = curve.bandwidth;
  const auto [lo_it, hi_it] = std::minmax_element(samples.begin(), samples.end());
  const double lo = *lo_it - 3.0 * bw;
  const double hi = *hi_it + 3.0 * bw;
  const double step = (hi - lo) / static_cast<double>(grid_size - 1);

  curve.grid.resize(grid_size);
  curve.values.resize(grid_size);
  const double norm =
    1.0 / (static_cast<double>(samples.size()) * bw * std::sqrt(2.0 * std::numbers::pi));
  for (std::size_t g = 0; g < grid_size; ++g) {
    const double x = g + 1 == grid_size ? hi : lo + step * static_cast<double>(g);
    double acc = 0.0;
    for (double s : samples) {
      const double z = (x - s) / bw;
      acc += std::exp(-0.5 * z * z);
    }
    curve.grid[g] = x;
    curve.values[g] = acc * norm;
  }
  return curve;
}

double trapezoid_integral(const DensityCurve& curve)
{
  double total = 0.0;
  for (std::size_t i = 1; i < curve.grid.size(); ++i)
    total += 0.5 * (curve.values[i] + curve.values[i - 1]) * (curve.grid[i] - curve.grid[i - 1]);
  return total;
}

} // namespace logidx
