#include "logidx/indexes.hpp"

#include "logidx/error.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

namespace logidx {

DownloadVector::DownloadVector(std::vector<std::uint64_t> counts)
  : counts_(std::move(counts))
{
  std::sort(counts_.begin(), counts_.end(), std::greater<>());
  n_pos_ = static_cast<std::size_t>(
    std::find(counts_.begin(), counts_.end(), std::uint64_t{ 0 }) - counts_.begin());
  total_ = std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{ 0 });
}

DownloadVector::DownloadVector(std::initializer_list<std::uint64_t> counts)
  : DownloadVector(std::vector<std::uint64_t>(counts))
{
}

GammaConfig::GammaConfig(double gamma)
  : gamma_(gamma)
{
  if (!(gamma > 0.0) || !std::isfinite(gamma))
    throw Error(Errc::invalid_argument, "gamma must be a positive finite number");
}

namespace {

// Plain floor: values just below an integer are never rounded up.
std::int64_t floor_to_int(double x)
{
  return static_cast<std::int64_t>(std::floor(x));
}

std::uint64_t max_min_rank(std::span<const std::int64_t> q)
{
  std::int64_t best = 0;
  for (std::size_t i = 0; i < q.size(); ++i)
    best = std::max(best, std::min(q[i], static_cast<std::int64_t>(i + 1)));
  return static_cast<std::uint64_t>(best);
}

// The point (x, x) on the segment from (m, upper) to (m + 1, next).
// The result is pinned into [m, m + 1) so floor() recovers m exactly.
double crossing(std::uint64_t m, double upper, double next)
{
  const double lo = static_cast<double>(m);
  const double r = ((lo + 1.0) * upper - lo * next) / (1.0 + upper - next);
  return std::clamp(r, lo, std::nextafter(lo + 1.0, lo));
}

// Shared by k_star and kappa_star: `logs` holds gamma * ln(x_i) for the
// sequence the integer index was computed from.
double interpolated_index(std::uint64_t m, std::span<const double> logs)
{
  if (logs.empty())
    return 0.0;
  if (m == 0)
    return crossing(0, logs[0], logs[0]);
  const double upper = logs[m - 1];
  const double next = m < logs.size() ? logs[m] : static_cast<double>(m);
  return crossing(m, upper, next);
}

std::vector<double> scaled_logs(std::span<const double> xs, double gamma)
{
  std::vector<double> out(xs.size());
  std::transform(xs.begin(), xs.end(), out.begin(),
                 [gamma](double x) { return gamma * std::log(x); });
  return out;
}

std::vector<double> positive_as_double(const DownloadVector& d)
{
  auto pos = d.positive();
  return { pos.begin(), pos.end() };
}

} // namespace

std::vector<std::int64_t> log_counts(const DownloadVector& d, GammaConfig cfg)
{
  const auto logs = scaled_logs(positive_as_double(d), cfg.gamma());
  std::vector<std::int64_t> q(logs.size());
  std::transform(logs.begin(), logs.end(), q.begin(), floor_to_int);
  return q;
}

std::vector<double> running_means(const DownloadVector& d)
{
  auto pos = d.positive();
  std::vector<double> f(pos.size());
  // Integer prefix sums keep f_i exact up to the final division.
  std::uint64_t sum = 0;
  for (std::size_t i = 0; i < pos.size(); ++i) {
    sum += pos[i];
    f[i] = static_cast<double>(sum) / static_cast<double>(i + 1);
  }
  return f;
}

std::uint64_t k_index(const DownloadVector& d, GammaConfig cfg)
{
  return max_min_rank(log_counts(d, cfg));
}

KResult k_star(const DownloadVector& d, GammaConfig cfg)
{
  KResult r;
  if (d.empty())
    return r;
  const auto logs = scaled_logs(positive_as_double(d), cfg.gamma());
  r.k = k_index(d, cfg);
  r.k_star = interpolated_index(r.k, logs);
  r.d_star = std::exp(r.k_star / cfg.gamma());
  return r;
}

std::uint64_t kappa_index(const DownloadVector& d, GammaConfig cfg)
{
  const auto logs = scaled_logs(running_means(d), cfg.gamma());
  std::vector<std::int64_t> t(logs.size());
  std::transform(logs.begin(), logs.end(), t.begin(), floor_to_int);
  return max_min_rank(t);
}

KappaResult kappa_star(const DownloadVector& d, GammaConfig cfg)
{
  KappaResult r;
  if (d.empty())
    return r;
  const auto logs = scaled_logs(running_means(d), cfg.gamma());
  r.kappa = kappa_index(d, cfg);
  r.kappa_star = interpolated_index(r.kappa, logs);
  r.f_star = std::exp(r.kappa_star / cfg.gamma());
  return r;
}

std::uint64_t h_index(const DownloadVector& d)
{
  auto c = d.counts();
  std::uint64_t h = 0;
  while (h < c.size() && c[h] >= h + 1)
    ++h;
  return h;
}

std::uint64_t g_index(const DownloadVector& d)
{
  auto pos = d.positive();
  std::uint64_t g = 0;
  unsigned __int128 sum = 0;
  for (std::size_t i = 0; i < pos.size(); ++i) {
    sum += pos[i];
    const unsigned __int128 m = i + 1;
    if (sum >= m * m)
      g = i + 1;
  }
  return g;
}

double composite_index(const KResult& kr, const KappaResult& cr)
{
  return std::sqrt(kr.k_star * cr.kappa_star);
}

} // namespace logidx
