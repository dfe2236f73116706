#include "logidx/diagnostics.hpp"

#include "logidx/error.hpp"
#include "logidx/stats.hpp"

#include <cmath>
#include <numbers>

namespace logidx {

double w_ratio(const DownloadVector& d, std::uint64_t k)
{
  if (k == 0)
    throw Error(Errc::undefined, "w is undefined for k = 0");
  if (k > d.n_positive())
    throw Error(Errc::invalid_argument, "k exceeds the number of papers with downloads");
  return static_cast<double>(d.total()) /
         (static_cast<double>(k) * static_cast<double>(d[k]));
}

double omega_ratio(const DownloadVector& d, std::uint64_t kappa)
{
  if (kappa == 0)
    throw Error(Errc::undefined, "omega is undefined for kappa = 0");
  if (kappa > d.n_positive())
    throw Error(Errc::invalid_argument, "kappa exceeds the number of papers with downloads");
  // kappa * f_kappa is the integer sum of the top kappa counts.
  std::uint64_t top = 0;
  for (std::uint64_t i = 1; i <= kappa; ++i)
    top += d[i];
  return static_cast<double>(d.total()) / static_cast<double>(top);
}

double v_quantity(std::uint64_t d_tot, std::uint64_t n_tot)
{
  if (n_tot == 0)
    throw Error(Errc::undefined, "v is undefined for n_tot = 0");
  if (d_tot == 0)
    throw Error(Errc::undefined, "v is undefined for d_tot = 0");
  const double n = static_cast<double>(n_tot);
  return std::log(static_cast<double>(d_tot) / n) / n;
}

double gamma_heuristic(std::span<const double> v_values)
{
  if (v_values.empty())
    throw Error(Errc::invalid_argument, "gamma heuristic needs at least one v value");
  const double med = summary_six(v_values).median;
  if (!(med > 0.0))
    throw Error(Errc::degenerate, "median(v) is not positive; corpus is degenerate");
  return 1.0 / med;
}

double yong_estimate(double c_tot)
{
  if (!(c_tot >= 0.0))
    throw Error(Errc::invalid_argument, "total citations must be non-negative");
  constexpr double factor = std::numbers::sqrt3 * std::numbers::sqrt2 * std::numbers::ln2 /
                            std::numbers::pi;
  return factor * std::sqrt(c_tot);
}

double time_normalized(double index_value, double years)
{
  if (!(years >= 1.0))
    throw Error(Errc::invalid_argument, "career length must be at least one year");
  return index_value / years;
}

DiagnosticSet diagnose(const DownloadVector& d, std::uint64_t k, std::uint64_t kappa)
{
  DiagnosticSet s;
  s.n_pos = d.n_positive();
  s.n_tot = d.size();
  const double n_tot = static_cast<double>(s.n_tot);
  if (k > 0) {
    s.w = w_ratio(d, k);
    s.u = static_cast<double>(k) / n_tot;
  }
  if (kappa > 0) {
    s.omega = omega_ratio(d, kappa);
    s.mu = static_cast<double>(kappa) / n_tot;
  }
  if (s.n_tot > 0 && d.total() > 0)
    s.v = v_quantity(d.total(), s.n_tot);
  return s;
}

} // namespace logidx
