#include "logidx/stats.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace logidx {

double gaussian_curve(const GaussianFit& fit, double x)
{
  const double z = (x - fit.mean) / fit.sd;
  return fit.peak * std::exp(-0.5 * z * z);
}

namespace {

using Point = std::array<double, 3>; // mean, sd, peak

struct Vertex
{
  Point x;
  double f;
};

double sse(const DensityCurve& curve, const Point& p)
{
  if (!(p[1] > 0.0) || !(p[2] > 0.0))
    return std::numeric_limits<double>::infinity();
  const GaussianFit g{ p[0], p[1], p[2], 0.0, 0 };
  double total = 0.0;
  for (std::size_t i = 0; i < curve.grid.size(); ++i) {
    const double r = curve.values[i] - gaussian_curve(g, curve.grid[i]);
    total += r * r;
  }
  return total;
}

Point combine(const Point& a, const Point& b, double t)
{
  // a + t (b - a)
  return { a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]), a[2] + t * (b[2] - a[2]) };
}

bool same_point(const Point& a, const Point& b, double rel_tol)
{
  for (std::size_t j = 0; j < 3; ++j)
    if (std::abs(a[j] - b[j]) > rel_tol * std::max(1.0, std::abs(b[j])))
      return false;
  return true;
}

bool collapsed(const std::array<Vertex, 4>& simplex, double rel_tol)
{
  for (std::size_t v = 1; v < simplex.size(); ++v)
    if (!same_point(simplex[v].x, simplex[0].x, rel_tol))
      return false;
  return true;
}

std::array<Vertex, 4> initial_simplex(const DensityCurve& curve, const Point& start)
{
  std::array<Vertex, 4> s;
  s[0] = { start, sse(curve, start) };
  const std::array<double, 3> steps = { 0.1 * start[1], 0.1 * start[1], 0.1 * start[2] };
  for (std::size_t j = 0; j < 3; ++j) {
    Point p = start;
    p[j] += steps[j];
    s[j + 1] = { p, sse(curve, p) };
  }
  return s;
}

// One Nelder-Mead run; returns true on convergence.
bool nelder_mead(const DensityCurve& curve, std::array<Vertex, 4>& s, std::size_t& budget,
                 std::size_t& used)
{
  constexpr double tol = 1e-8;
  auto by_value = [](const Vertex& a, const Vertex& b) { return a.f < b.f; };
  while (budget > 0) {
    std::sort(s.begin(), s.end(), by_value);
    if (collapsed(s, tol))
      return true;
    --budget;
    ++used;

    Point centroid{ 0.0, 0.0, 0.0 };
    for (std::size_t v = 0; v < 3; ++v)
      for (std::size_t j = 0; j < 3; ++j)
        centroid[j] += s[v].x[j] / 3.0;

    Vertex& worst = s[3];
    const Point xr = combine(centroid, worst.x, -1.0);
    const double fr = sse(curve, xr);
    if (fr < s[0].f) {
      const Point xe = combine(centroid, worst.x, -2.0);
      const double fe = sse(curve, xe);
      worst = fe < fr ? Vertex{ xe, fe } : Vertex{ xr, fr };
      continue;
    }
    if (fr < s[2].f) {
      worst = { xr, fr };
      continue;
    }
    const bool outside = fr < worst.f;
    const Point xc = outside ? combine(centroid, xr, 0.5) : combine(centroid, worst.x, 0.5);
    const double fc = sse(curve, xc);
    if (fc < (outside ? fr : worst.f)) {
      worst = { xc, fc };
      continue;
    }
    for (std::size_t v = 1; v < 4; ++v) {
      s[v].x = combine(s[0].x, s[v].x, 0.5);
      s[v].f = sse(curve, s[v].x);
    }
  }
  std::sort(s.begin(), s.end(), by_value);
  return false;
}

} // namespace

GaussianFit fit_gaussian(const DensityCurve& curve, std::size_t max_iterations)
{
  if (curve.grid.size() < 10 || curve.values.size() != curve.grid.size())
    throw Error(Errc::invalid_argument, "Gaussian fit needs a curve with at least 10 points");

  double mass = 0.0, first = 0.0;
  for (std::size_t i = 0; i < curve.grid.size(); ++i) {
    mass += curve.values[i];
    first += curve.values[i] * curve.grid[i];
  }
  if (!(mass > 0.0))
    throw Error(Errc::degenerate, "density curve has no positive values");
  const double mean0 = first / mass;
  double second = 0.0;
  for (std::size_t i = 0; i < curve.grid.size(); ++i)
    second += curve.values[i] * (curve.grid[i] - mean0) * (curve.grid[i] - mean0);
  double sd0 = std::sqrt(second / mass);
  if (!(sd0 > 0.0))
    sd0 = curve.grid.back() - curve.grid.front();
  const double peak0 = *std::max_element(curve.values.begin(), curve.values.end());

  std::size_t budget = max_iterations;
  std::size_t used = 0;
  auto simplex = initial_simplex(curve, { mean0, sd0, peak0 });
  bool converged = nelder_mead(curve, simplex, budget, used);
  // Restart from the best vertex until a fresh simplex no longer moves it.
  for (int restart = 0; converged && restart < 20; ++restart) {
    const Vertex before = simplex[0];
    simplex = initial_simplex(curve, before.x);
    converged = nelder_mead(curve, simplex, budget, used);
    if (!(simplex[0].f < before.f)) {
      simplex[0] = before;
      break;
    }
    if (same_point(simplex[0].x, before.x, 1e-8))
      break;
  }

  const Vertex& best = simplex[0];
  GaussianFit fit{ best.x[0], best.x[1], best.x[2], best.f, used };
  if (!converged)
    throw ConvergenceError(fit, "Gaussian fit did not converge within " +
                                  std::to_string(max_iterations) + " iterations");
  return fit;
}

} // namespace logidx
