#include "logidx/synth.hpp"

#include "logidx/error.hpp"

#include <cmath>
#include <cstdio>

namespace logidx {

std::uint64_t SplitMix64::next() noexcept
{
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Xoshiro256StarStar::Xoshiro256StarStar(std::uint64_t seed)
{
  SplitMix64 sm(seed);
  for (auto& word : s_)
    word = sm.next();
}

namespace {

constexpr std::uint64_t rotl(std::uint64_t x, int k)
{
  return (x << k) | (x >> (64 - k));
}

} // namespace

std::uint64_t Xoshiro256StarStar::next() noexcept
{
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Xoshiro256StarStar::uniform_open() noexcept
{
  return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
}

double Xoshiro256StarStar::normal() noexcept
{
  return normal_quantile(uniform_open());
}

double normal_quantile(double p)
{
  if (!(p > 0.0 && p < 1.0))
    throw Error(Errc::invalid_argument, "normal quantile needs 0 < p < 1");

  const double q = p - 0.5;
  if (std::abs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    const double num =
      ((((((2.5090809287301226727e+3 * r + 3.3430575583588128105e+4) * r +
           6.7265770927008700853e+4) * r + 4.5921953931549871457e+4) * r +
         1.3731693765509461125e+4) * r + 1.9715909503065514427e+3) * r +
       1.3314166789178437745e+2) * r + 3.3871328727963666080e0;
    const double den =
      ((((((5.2264952788528545610e+3 * r + 2.8729085735721942674e+4) * r +
           3.9307895800092710610e+4) * r + 2.1213794301586595867e+4) * r +
         5.3941960214247511077e+3) * r + 6.8718700749205790830e+2) * r +
       4.2313330701600911252e+1) * r + 1.0;
    return q * num / den;
  }

  double r = std::sqrt(-std::log(q < 0.0 ? p : 1.0 - p));
  double value;
  if (r <= 5.0) {
    r -= 1.6;
    const double num =
      ((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
           2.41780725177450611770e-1) * r + 1.27045825245236838258e0) * r +
         3.64784832476320460504e0) * r + 5.76949722146069140550e0) * r +
       4.63033784615654529590e0) * r + 1.42343711074968357734e0;
    const double den =
      ((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
           1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
         6.89767334985100004550e-1) * r + 1.67638483018380384940e0) * r +
       2.05319162663775882187e0) * r + 1.0;
    value = num / den;
  } else {
    r -= 5.0;
    const double num =
      ((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
           1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
         2.96560571828504891230e-1) * r + 1.78482653991729133580e0) * r +
       5.46378491116411436990e0) * r + 6.65790464350110377720e0;
    const double den =
      ((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
           1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
         1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
       5.99832206555887937690e-1) * r + 1.0;
    value = num / den;
  }
  return q < 0.0 ? -value : value;
}

SynthParams default_params()
{
  return SynthParams{};
}

void validate(const SynthParams& params)
{
  if (params.n_authors == 0)
    throw Error(Errc::invalid_argument, "n_authors must be at least 1");
  for (double sd : { params.paper_count_sd_log, params.author_quality_sd, params.paper_noise_sd })
    if (!(sd > 0.0) || !std::isfinite(sd))
      throw Error(Errc::invalid_argument, "standard deviations must be positive");
  if (!std::isfinite(params.paper_count_mean_log) || !std::isfinite(params.author_quality_mean))
    throw Error(Errc::invalid_argument, "means must be finite");
}

namespace {

// max(1, round(exp(x))), saturating far above any realistic count.
std::uint64_t rounded_exp_at_least_one(double x)
{
  const double v = std::round(std::exp(std::min(x, 40.0)));
  return v < 1.0 ? 1 : static_cast<std::uint64_t>(v);
}

constexpr std::uint64_t max_papers_per_author = 1000000;

} // namespace

std::vector<AuthorProfile> generate(const SynthParams& params)
{
  validate(params);
  Xoshiro256StarStar rng(params.seed);
  std::vector<AuthorProfile> out;
  out.reserve(params.n_authors);
  char id[32];
  for (std::uint64_t a = 0; a < params.n_authors; ++a) {
    const auto n_papers = rounded_exp_at_least_one(params.paper_count_mean_log +
                                                   params.paper_count_sd_log * rng.normal());
    if (n_papers > max_papers_per_author)
      throw Error(Errc::invalid_argument, "paper count draw exceeds " +
                                            std::to_string(max_papers_per_author) +
                                            "; lower the paper count parameters");
    const double quality = params.author_quality_mean + params.author_quality_sd * rng.normal();

    AuthorProfile p;
    std::snprintf(id, sizeof id, "A%06llu", static_cast<unsigned long long>(a + 1));
    p.author_id = id;
    p.name = "Author " + std::to_string(a + 1);
    p.papers.reserve(n_papers);
    std::uint64_t total = 0;
    for (std::uint64_t i = 0; i < n_papers; ++i) {
      PaperEntry e;
      e.paper_id = p.author_id + "-P" + std::to_string(i + 1);
      e.downloads = rounded_exp_at_least_one(quality + params.paper_noise_sd * rng.normal());
      total += *e.downloads;
      p.papers.push_back(std::move(e));
    }
    p.declared_total = total;
    out.push_back(std::move(p));
  }
  return out;
}

} // namespace logidx
