#include "logidx/stats.hpp"
#include "logidx/synth.hpp"

#include "random_vectors.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <set>

using namespace logidx;

namespace {

std::vector<double> normal_sample(std::size_t n, double mean, double sd, std::uint64_t seed)
{
  Xoshiro256StarStar rng(seed);
  std::vector<double> out(n);
  for (auto& x : out)
    x = mean + sd * rng.normal();
  return out;
}

DensityCurve exact_gaussian(double mean, double sd, double peak, std::size_t n = 400)
{
  DensityCurve c;
  const double lo = mean - 5 * sd, hi = mean + 5 * sd;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    const double z = (x - mean) / sd;
    c.grid.push_back(x);
    c.values.push_back(peak * std::exp(-0.5 * z * z));
  }
  c.bandwidth = 1.0;
  return c;
}

} // namespace

TEST_CASE("rank_descending examples")
{
  CHECK(rank_descending(std::vector<std::uint64_t>{ 5, 3, 9 }) ==
        std::vector<std::uint64_t>{ 2, 3, 1 });
  CHECK(rank_descending(std::vector<std::uint64_t>{ 5, 5, 3 }) ==
        std::vector<std::uint64_t>{ 1, 1, 3 });
  CHECK(rank_descending(std::vector<std::uint64_t>{ 7 }) == std::vector<std::uint64_t>{ 1 });
}

TEST_CASE("rank_descending matches counting and the n + 1 - ascending-rank form")
{
  testutil::VectorSource source(31);
  for (int trial = 0; trial < 200; ++trial) {
    auto values = source.next(60);
    if (trial % 2)
      for (auto& v : values)
        v %= 7; // many ties
    const auto ranks = rank_descending(values);
    for (std::size_t i = 0; i < values.size(); ++i) {
      std::uint64_t greater = 0;
      for (auto v : values)
        greater += v > values[i];
      REQUIRE(ranks[i] == greater + 1);
    }
    const std::set<std::uint64_t> distinct(values.begin(), values.end());
    if (distinct.size() == values.size()) {
      std::vector<std::uint64_t> sorted(values);
      std::sort(sorted.begin(), sorted.end());
      for (std::size_t i = 0; i < values.size(); ++i) {
        const auto asc = static_cast<std::uint64_t>(
          std::lower_bound(sorted.begin(), sorted.end(), values[i]) - sorted.begin() + 1);
        REQUIRE(ranks[i] == values.size() + 1 - asc);
      }
    }
  }
}

TEST_CASE("summary_six")
{
  const auto a = summary_six(std::vector<double>{ 1, 2, 3, 4, 5 });
  CHECK(a.min == 1);
  CHECK(a.q1 == 2);
  CHECK(a.median == 3);
  CHECK(a.mean == 3);
  CHECK(a.q3 == 4);
  CHECK(a.max == 5);

  const auto b = summary_six(std::vector<double>{ 4, 1, 3, 2 });
  CHECK(b.q1 == doctest::Approx(1.75));
  CHECK(b.median == doctest::Approx(2.5));
  CHECK(b.q3 == doctest::Approx(3.25));

  const auto c = summary_six(std::vector<double>{ 7, 7, 7 });
  CHECK(c.min == 7);
  CHECK(c.q1 == 7);
  CHECK(c.mean == 7);
  CHECK(c.max == 7);

  CHECK_THROWS_AS(summary_six(std::vector<double>{}), Error);
}

TEST_CASE("ols exact fits")
{
  Eigen::MatrixXd x(5, 3);
  Eigen::VectorXd y(5);
  for (int i = 0; i < 5; ++i) {
    x.row(i) << 1.0, i, i * i;
    y(i) = 2.0 * i + 1.0;
  }
  const auto line = ols(y, x);
  CHECK(line.coefficients[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(line.coefficients[1] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(std::abs(line.coefficients[2]) < 1e-12);
  CHECK(line.r_squared == 1.0);

  Eigen::MatrixXd x3(3, 3);
  Eigen::VectorXd y3(3);
  for (int i = 0; i < 3; ++i) {
    x3.row(i) << 1.0, i, i * i;
    y3(i) = 1.0 + 2.0 * i - i * i;
  }
  const auto quad = ols(y3, x3);
  CHECK(std::abs(quad.coefficients[0] - 1.0) < 1e-9);
  CHECK(std::abs(quad.coefficients[1] - 2.0) < 1e-9);
  CHECK(std::abs(quad.coefficients[2] + 1.0) < 1e-9);
  CHECK_FALSE(quad.has_inference);
  CHECK(std::isnan(quad.std_errors[0]));
  CHECK(std::isnan(quad.f_statistic));
}

TEST_CASE("ols errors")
{
  Eigen::MatrixXd x(4, 2);
  x << 1, 3, 1, 3, 1, 3, 1, 3;
  Eigen::VectorXd y(4);
  y << 1, 2, 3, 4;
  CHECK_THROWS_AS(ols(y, x), Error);

  Eigen::MatrixXd collinear(5, 3);
  for (int i = 0; i < 5; ++i)
    collinear.row(i) << 1.0, i, 2.0 * i + 1.0;
  Eigen::VectorXd y5 = Eigen::VectorXd::LinSpaced(5, 0, 4);
  try {
    ols(y5, collinear);
    FAIL("expected singular design");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::singular);
  }

  Eigen::MatrixXd no_intercept = Eigen::MatrixXd::Random(5, 2);
  CHECK_THROWS_AS(ols(y5, no_intercept), Error);
  CHECK_THROWS_AS(ols(Eigen::VectorXd::Zero(4), collinear), Error);
}

TEST_CASE("ols residuals are orthogonal to the design")
{
  Xoshiro256StarStar rng(2718);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 20 + trial * 3, p = 1 + trial % 4;
    Eigen::MatrixXd x(n, p + 1);
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) {
      x(i, 0) = 1.0;
      for (int j = 1; j <= p; ++j)
        x(i, j) = 100.0 * j + 10.0 * rng.normal();
      y(i) = 3.0 + rng.normal() * 5.0 + 0.5 * x(i, 1);
    }
    const auto fit = ols(y, x);
    const Eigen::Map<const Eigen::VectorXd> r(fit.residuals.data(), n);
    for (int j = 0; j <= p; ++j) {
      const double scale = x.col(j).norm() * y.norm();
      REQUIRE(std::abs(x.col(j).dot(r)) / scale < 1e-8);
    }
    REQUIRE(fit.r_squared >= 0.0);
    REQUIRE(fit.r_squared <= 1.0);
    for (std::size_t j = 0; j < fit.coefficients.size(); ++j)
      REQUIRE(fit.t_stats[j] == doctest::Approx(fit.coefficients[j] / fit.std_errors[j]));
  }
}

TEST_CASE("ols standard errors match the textbook formula")
{
  // Simple regression: se(b) = s / sqrt(Sxx), se(a) = s sqrt(1/n + xbar^2 / Sxx).
  Eigen::MatrixXd x(6, 2);
  Eigen::VectorXd y(6);
  const double xs[] = { 1, 2, 4, 5, 7, 9 };
  const double ys[] = { 2.1, 3.9, 8.2, 9.8, 14.5, 17.7 };
  for (int i = 0; i < 6; ++i) {
    x.row(i) << 1.0, xs[i];
    y(i) = ys[i];
  }
  const auto fit = ols(y, x);
  const double xbar = 28.0 / 6.0;
  double sxx = 0, sxy = 0;
  for (int i = 0; i < 6; ++i) {
    sxx += (xs[i] - xbar) * (xs[i] - xbar);
    sxy += (xs[i] - xbar) * (ys[i] - y.mean());
  }
  const double b = sxy / sxx, a = y.mean() - b * xbar;
  double sse = 0;
  for (int i = 0; i < 6; ++i)
    sse += std::pow(ys[i] - a - b * xs[i], 2);
  const double s = std::sqrt(sse / 4.0);
  CHECK(fit.coefficients[0] == doctest::Approx(a).epsilon(1e-12));
  CHECK(fit.coefficients[1] == doctest::Approx(b).epsilon(1e-12));
  CHECK(fit.std_errors[1] == doctest::Approx(s / std::sqrt(sxx)).epsilon(1e-10));
  CHECK(fit.std_errors[0] == doctest::Approx(s * std::sqrt(1.0 / 6 + xbar * xbar / sxx)).epsilon(1e-10));
  const double r2 = fit.r_squared;
  CHECK(fit.f_statistic == doctest::Approx(r2 / ((1 - r2) / 4.0)).epsilon(1e-10));
  CHECK(fit.adj_r_squared == doctest::Approx(1 - (1 - r2) * 5.0 / 4.0).epsilon(1e-12));
}

TEST_CASE("ols recovers a noisy quadratic within three standard errors")
{
  Xoshiro256StarStar rng(8);
  const double a = 4.704, b = 2.009, c = -0.182;
  const int n = 3000;
  Eigen::MatrixXd x(n, 3);
  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i) {
    const double t = 2.0 + 11.0 * i / n;
    x.row(i) << 1.0, t, t * t;
    y(i) = a + b * t + c * t * t + 1e-3 * rng.normal();
  }
  const auto fit = ols(y, x);
  const double truth[] = { a, b, c };
  for (int j = 0; j < 3; ++j)
    CHECK(std::abs(fit.coefficients[j] - truth[j]) < 3 * fit.std_errors[j]);
}

TEST_CASE("fit_rank_curve on counts laid out along a known rank curve")
{
  const double a = 4.704, b = 2.009, c = -0.182;
  std::vector<std::uint64_t> downloads;
  for (int r = 1; r <= 2000; ++r) {
    // Upper branch of a + b x + c x^2 = ln r.
    const double disc = b * b - 4 * c * (a - std::log(r));
    const double x = (-b - std::sqrt(disc)) / (2 * c);
    downloads.push_back(static_cast<std::uint64_t>(std::llround(std::exp(x))));
  }
  const auto fit = fit_rank_curve(downloads);
  CHECK(fit.coefficients[2] < 0.0);
  CHECK(fit.r_squared > 0.9999);
  const double truth[] = { a, b, c };
  for (int j = 0; j < 3; ++j)
    CHECK(std::abs(fit.coefficients[j] - truth[j]) < 3 * fit.std_errors[j]);
}

TEST_CASE("fit_rank_curve degenerate inputs")
{
  CHECK_THROWS_AS(fit_rank_curve(std::vector<std::uint64_t>(20, 55)), Error);
  std::vector<std::uint64_t> two_values;
  for (int i = 0; i < 20; ++i)
    two_values.push_back(i % 2 ? 10 : 1000);
  try {
    fit_rank_curve(two_values);
    FAIL("expected a singular design");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::singular);
  }
  CHECK_THROWS_AS(fit_rank_curve(std::vector<std::uint64_t>{ 1, 2, 3 }), Error);
}

TEST_CASE("inflection points")
{
  CHECK(inflection_point(4.704, 2.009, -0.182) == doctest::Approx(1308.60194605273).epsilon(1e-10));
  CHECK(inflection_points(4.704, 2.009, -0.182).lower ==
        doctest::Approx(47.5483414806396).epsilon(1e-10));
  CHECK(inflection_point(11.18, 0.492, -0.138) == doctest::Approx(39.888025446086).epsilon(1e-10));
  CHECK(inflection_point(4.375, 1.952, -0.199) == doctest::Approx(658.279211847586).epsilon(1e-10));
  CHECK(inflection_point(12.17, 0.612, -0.133) == doctest::Approx(69.3848619031704).epsilon(1e-10));

  try {
    inflection_point(1.0, 1.0, 0.1);
    FAIL("expected no inflection");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::no_inflection);
  }
  CHECK_THROWS_AS(inflection_point(1.0, 1.0, 0.0), Error);
}

TEST_CASE("second derivative changes sign across each inflection")
{
  const double coeffs[][3] = {
    { 4.704, 2.009, -0.182 }, { 11.18, 0.492, -0.138 }, { 4.375, 1.952, -0.199 }, { 1, -3, -0.5 }
  };
  for (const auto& k : coeffs) {
    auto r2 = [&](double x) {
      const double g1 = k[1] + 2 * k[2] * x;
      return std::exp(k[0] + k[1] * x + k[2] * x * x) * (g1 * g1 + 2 * k[2]);
    };
    const auto pts = inflection_points(k[0], k[1], k[2]);
    for (double d : { pts.lower, pts.upper }) {
      const double x = std::log(d);
      CHECK(r2(x - 1e-3) * r2(x + 1e-3) < 0.0);
    }
  }
}

TEST_CASE("kde of a standard normal sample")
{
  const auto sample = normal_sample(10000, 0.0, 1.0, 1);
  const auto curve = kde(sample);
  CHECK(curve.grid.size() == 512);
  const double peak = *std::max_element(curve.values.begin(), curve.values.end());
  CHECK(std::abs(peak - 1.0 / std::sqrt(2 * std::numbers::pi)) < 0.05 * 0.3989);
  CHECK(std::abs(trapezoid_integral(curve) - 1.0) < 0.02);
  for (std::size_t i = 1; i < curve.grid.size(); ++i)
    REQUIRE(curve.grid[i] > curve.grid[i - 1]);
}

TEST_CASE("kde normalization and degenerate input")
{
  Xoshiro256StarStar rng(5);
  std::vector<double> uniform(5000);
  for (auto& u : uniform)
    u = rng.uniform_open();
  CHECK(std::abs(trapezoid_integral(kde(uniform)) - 1.0) < 0.02);

  const auto two = kde(std::vector<double>{ 0.0, 10.0 });
  CHECK(std::abs(trapezoid_integral(two) - 1.0) < 0.02);
  // Bimodal: the midpoint sits below both modes.
  const auto mid = two.values[two.values.size() / 2];
  const double peak = *std::max_element(two.values.begin(), two.values.end());
  CHECK(mid < 0.5 * peak);

  CHECK_THROWS_AS(kde(std::vector<double>{ 3.0, 3.0, 3.0 }), Error);
  CHECK_THROWS_AS(kde(std::vector<double>{ 3.0 }), Error);
}

TEST_CASE("kde bandwidth rule")
{
  const std::vector<double> s{ 1, 2, 3, 4, 10 };
  // sd = sqrt(12.5), IQR = 4 - 2 = 2.
  const double expected = 0.9 * std::min(std::sqrt(12.5), 2.0 / 1.34) * std::pow(5.0, -0.2);
  CHECK(kde_bandwidth(s) == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("fit_gaussian on exact curves")
{
  const auto fig = fit_gaussian(exact_gaussian(5.329, 0.961, 0.409));
  CHECK(std::abs(fig.mean - 5.329) < 1e-3);
  CHECK(std::abs(fig.sd - 0.961) < 1e-3);
  CHECK(std::abs(fig.peak - 0.409) < 1e-3);
  CHECK(fig.residual_sse < 1e-10);

  const auto std_normal = fit_gaussian(exact_gaussian(0.0, 1.0, 1.0 / std::sqrt(2 * std::numbers::pi)));
  CHECK(std::abs(std_normal.mean) < 1e-3);
  CHECK(std::abs(std_normal.sd - 1.0) < 1e-3);
  CHECK(std::abs(std_normal.peak - 0.3989) < 1e-3);
  CHECK(std_normal.residual_sse < 1e-10);
}

TEST_CASE("fit_gaussian on a KDE of a normal sample")
{
  const auto sample = normal_sample(30000, 5.406, 1.016, 77);
  const auto fit = fit_gaussian(kde(sample));
  CHECK(std::abs(fit.mean - 5.406) < 0.05);
  CHECK(std::abs(fit.sd - 1.016) < 0.05);
}

TEST_CASE("fit_gaussian reports the best point when out of iterations")
{
  try {
    fit_gaussian(exact_gaussian(5.0, 2.0, 0.2), 3);
    FAIL("expected non-convergence");
  } catch (const ConvergenceError& e) {
    CHECK(e.code() == Errc::no_convergence);
    CHECK(e.best().sd > 0.0);
  }
  DensityCurve tiny;
  tiny.grid = { 0, 1, 2 };
  tiny.values = { 0, 1, 0 };
  CHECK_THROWS_AS(fit_gaussian(tiny), Error);
}
