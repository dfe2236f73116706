#pragma once

#include "logidx/corpus.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace logidx {

//! SplitMix64 (Steele, Lea, Flood 2014). Used to expand a 64-bit seed.
class SplitMix64
{
public:
  explicit SplitMix64(std::uint64_t seed)
    : state_(seed)
  {
  }
  std::uint64_t next() noexcept;

private:
  std::uint64_t state_;
};

//! xoshiro256** 1.0 (Blackman, Vigna). State seeded from SplitMix64.
class Xoshiro256StarStar
{
public:
  explicit Xoshiro256StarStar(std::uint64_t seed);
  explicit Xoshiro256StarStar(const std::array<std::uint64_t, 4>& state)
    : s_(state)
  {
  }

  std::uint64_t next() noexcept;

  //! Uniform on the open interval (0, 1): ((x >> 11) + 0.5) * 2^-53.
  double uniform_open() noexcept;

  //! Standard normal by inverse CDF; exactly one draw per deviate.
  double normal() noexcept;

private:
  std::array<std::uint64_t, 4> s_;
};

//! Inverse standard normal CDF (Wichura's AS241, ~1e-16 relative).
double normal_quantile(double p);

struct SynthParams
{
  std::uint64_t n_authors = 30000;
  double paper_count_mean_log = 2.0;
  double paper_count_sd_log = 1.0;
  double author_quality_mean = 5.35;
  double author_quality_sd = 1.0;
  double paper_noise_sd = 0.8;
  std::uint64_t seed = 42;
};

SynthParams default_params();

//! Throws Errc::invalid_argument for non-positive sds or n_authors = 0.
void validate(const SynthParams& params);

//! Draw order: authors in index order; per author the paper count, the
//! quality, then one noise draw per paper. Author ids are "A000001", ...
std::vector<AuthorProfile> generate(const SynthParams& params);

} // namespace logidx
