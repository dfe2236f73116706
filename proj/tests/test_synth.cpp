#include "logidx/synth.hpp"
#include "logidx/corpus.hpp"
#include "logidx/tables.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

using namespace logidx;

namespace {

double mean_log_downloads_per_paper(const std::vector<AuthorProfile>& corpus)
{
  const auto xs = log_downloads_per_paper(build_reports(corpus));
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

} // namespace

TEST_CASE("splitmix64 reference output")
{
  SplitMix64 sm(0);
  CHECK(sm.next() == 0xe220a8397b1dcdafULL);
  CHECK(sm.next() == 0x6e789e6aa1b965f4ULL);
  CHECK(sm.next() == 0x06c45d188009454fULL);
}

TEST_CASE("xoshiro256** reference output")
{
  Xoshiro256StarStar x(std::array<std::uint64_t, 4>{ 1, 2, 3, 4 });
  CHECK(x.next() == 11520ULL);
  CHECK(x.next() == 0ULL);
  CHECK(x.next() == 1509978240ULL);
  CHECK(x.next() == 1215971899390074240ULL);
}

TEST_CASE("uniform draws stay inside the open unit interval")
{
  Xoshiro256StarStar x(9);
  for (int i = 0; i < 100000; ++i) {
    const double u = x.uniform_open();
    REQUIRE(u > 0.0);
    REQUIRE(u < 1.0);
  }
}

TEST_CASE("normal quantile against reference values")
{
  const std::pair<double, double> cases[] = {
    { 1e-300, -37.0470962993612 },   { 1e-20, -9.262340089798409 },
    { 1e-10, -6.361340902404056 },   { 0.001, -3.090232306167813 },
    { 0.02425, -1.972961051311885 }, { 0.1, -1.2815515655446004 },
    { 0.3, -0.5244005127080409 },    { 0.6, 0.2533471031357997 },
    { 0.975, 1.959963984540054 },    { 0.999999, 4.753424308817087 },
    { 1 - 1e-12, 7.0344869100478356 },
  };
  for (auto [p, z] : cases)
    CHECK(normal_quantile(p) == doctest::Approx(z).epsilon(1e-14));
  CHECK(normal_quantile(0.5) == 0.0);
  for (double p : { 0.01, 0.2, 0.4 })
    CHECK(normal_quantile(p) == doctest::Approx(-normal_quantile(1 - p)).epsilon(1e-14));
  CHECK_THROWS_AS(normal_quantile(0.0), Error);
  CHECK_THROWS_AS(normal_quantile(1.0), Error);
}

TEST_CASE("default_params")
{
  const auto a = default_params();
  CHECK(a.seed == 42);
  CHECK(a.n_authors == 30000);
  CHECK(a.author_quality_mean == 5.35);
  CHECK(a.author_quality_sd == 1.0);
  CHECK(a.paper_noise_sd == 0.8);
  CHECK(a.paper_count_mean_log == 2.0);
  CHECK(a.paper_count_sd_log == 1.0);
  const auto b = default_params();
  CHECK(a.seed == b.seed);
  CHECK(a.n_authors == b.n_authors);
}

TEST_CASE("parameter validation")
{
  auto p = default_params();
  p.paper_noise_sd = 0.0;
  CHECK_THROWS_AS(validate(p), Error);
  p = default_params();
  p.n_authors = 0;
  CHECK_THROWS_AS(generate(p), Error);
  p = default_params();
  p.author_quality_sd = -1.0;
  CHECK_THROWS_AS(generate(p), Error);
}

TEST_CASE("single author with tiny spreads")
{
  SynthParams p = default_params();
  p.n_authors = 1;
  p.paper_count_mean_log = 0.0;
  p.paper_count_sd_log = 1e-9;
  p.author_quality_mean = 0.0;
  p.author_quality_sd = 1e-9;
  p.paper_noise_sd = 1e-9;
  const auto corpus = generate(p);
  REQUIRE(corpus.size() == 1);
  REQUIRE(corpus[0].papers.size() == 1);
  CHECK(corpus[0].papers[0].downloads == 1u);
}

TEST_CASE("generation is deterministic and bounded below by one")
{
  SynthParams p = default_params();
  p.n_authors = 500;
  const auto a = generate(p);
  const auto b = generate(p);
  CHECK(write_corpus(a, Format::csv) == write_corpus(b, Format::csv));
  for (const auto& author : a) {
    REQUIRE(author.papers.size() >= 1);
    REQUIRE(author.declared_total.has_value());
    REQUIRE(sanity_check(author).status == SanityResult::Status::pass);
    for (const auto& paper : author.papers)
      REQUIRE(*paper.downloads >= 1);
  }
  p.seed = 43;
  CHECK(write_corpus(generate(p), Format::csv) != write_corpus(a, Format::csv));
  CHECK(a.front().author_id == "A000001");
  CHECK(a.front().papers.front().paper_id == "A000001-P1");
}

TEST_CASE("the first authors of the default stream are stable")
{
  // Frozen from the first run; guards the draw order.
  SynthParams p = default_params();
  p.n_authors = 3;
  const auto corpus = generate(p);
  REQUIRE(corpus.size() == 3);
  CHECK(corpus[0].papers.size() == 2);
  CHECK(corpus[1].papers.size() == 81);
  CHECK(corpus[2].papers.size() == 17);
  CHECK(corpus[0].papers[0].downloads == 225u);
  CHECK(corpus[1].papers[0].downloads == 701u);
  CHECK(corpus[2].papers[0].downloads == 65u);
}

TEST_CASE("default corpus: mean, unimodality and the quality shift")
{
  const auto params = default_params();
  const auto corpus = generate(params);
  CHECK(corpus.size() == 30000);

  // Pilot value for seed 42.
  const double base = mean_log_downloads_per_paper(corpus);
  CHECK(std::abs(base - 5.59322) < 0.1);

  // One mode. Isolated tail samples leave bumps about one kernel high
  // (1 / (n bw sqrt(2 pi)), ~3e-4 of the peak); those are not counted.
  const auto curve = kde(log_downloads_per_paper(build_reports(corpus)));
  const double peak = *std::max_element(curve.values.begin(), curve.values.end());
  int modes = 0;
  for (std::size_t i = 1; i + 1 < curve.values.size(); ++i)
    modes += curve.values[i] > curve.values[i - 1] && curve.values[i] >= curve.values[i + 1] &&
             curve.values[i] > 1e-3 * peak;
  CHECK(modes == 1);

  for (double delta : { -0.5, 0.25, 1.0 }) {
    auto shifted = params;
    shifted.author_quality_mean += delta;
    CHECK(std::abs(mean_log_downloads_per_paper(generate(shifted)) - base - delta) < 0.05);
  }
}
