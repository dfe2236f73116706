#pragma once

#include "logidx/indexes.hpp"

#include <cstdint>
#include <optional>
#include <span>

namespace logidx {

//! Ratios reported next to the indexes. Fields that are undefined for a
//! given portfolio (k = 0, kappa = 0, n_tot = 0) are left empty.
struct DiagnosticSet
{
  std::optional<double> w;
  std::optional<double> omega;
  std::optional<double> u;
  std::optional<double> mu;
  std::optional<double> v;
  std::uint64_t n_pos = 0;
  std::uint64_t n_tot = 0;
};

//! d_tot / (k * d_k). Throws Errc::undefined for k = 0.
double w_ratio(const DownloadVector& d, std::uint64_t k);

//! d_tot / (kappa * f_kappa). Throws Errc::undefined for kappa = 0.
double omega_ratio(const DownloadVector& d, std::uint64_t kappa);

//! ln(d_tot / n_tot) / n_tot.
double v_quantity(std::uint64_t d_tot, std::uint64_t n_tot);

//! 1 / median(v), with the same median as summary_six().
double gamma_heuristic(std::span<const double> v_values);

//! Yong's estimate of the h-index from total citations,
//! (sqrt(6) ln 2 / pi) sqrt(c_tot).
double yong_estimate(double c_tot);

//! m-quotient analog: an index divided by career length in years (T >= 1).
double time_normalized(double index_value, double years);

DiagnosticSet diagnose(const DownloadVector& d, std::uint64_t k, std::uint64_t kappa);

} // namespace logidx
