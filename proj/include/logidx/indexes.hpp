#pragma once

#include "logidx/error.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace logidx {

//! Per-paper download counts, kept sorted in non-increasing order.
//!
//! Zero entries stay in storage (they count towards n_tot) but are never
//! fed to the log-based indexes; positive() is the prefix with d_i > 0.
class DownloadVector
{
public:
  DownloadVector() = default;
  explicit DownloadVector(std::vector<std::uint64_t> counts);
  DownloadVector(std::initializer_list<std::uint64_t> counts);

  std::span<const std::uint64_t> counts() const noexcept { return counts_; }
  std::span<const std::uint64_t> positive() const noexcept
  {
    return std::span<const std::uint64_t>(counts_).first(n_pos_);
  }

  std::size_t size() const noexcept { return counts_.size(); }
  std::size_t n_positive() const noexcept { return n_pos_; }
  bool empty() const noexcept { return n_pos_ == 0; }
  std::uint64_t total() const noexcept { return total_; }

  //! 1-based access into the sorted vector, d_1 >= d_2 >= ...
  std::uint64_t operator[](std::size_t i) const { return counts_.at(i - 1); }

private:
  std::vector<std::uint64_t> counts_;
  std::size_t n_pos_ = 0;
  std::uint64_t total_ = 0;
};

//! Overall normalization of the log before flooring. gamma = 1 is the
//! natural log; any other log base b corresponds to gamma = 1 / ln(b).
class GammaConfig
{
public:
  GammaConfig() = default;
  explicit GammaConfig(double gamma);

  double gamma() const noexcept { return gamma_; }

private:
  double gamma_ = 1.0;
};

struct KResult
{
  std::uint64_t k = 0;
  double k_star = 0.0;
  double d_star = 1.0;
};

struct KappaResult
{
  std::uint64_t kappa = 0;
  double kappa_star = 0.0;
  double f_star = 1.0;
};

//! floor(gamma * ln(d_i)) for every positive d_i, in vector order.
std::vector<std::int64_t> log_counts(const DownloadVector& d, GammaConfig cfg = {});

//! Running means f_i = (d_1 + ... + d_i) / i over the positive entries.
std::vector<double> running_means(const DownloadVector& d);

std::uint64_t k_index(const DownloadVector& d, GammaConfig cfg = {});
KResult k_star(const DownloadVector& d, GammaConfig cfg = {});

std::uint64_t kappa_index(const DownloadVector& d, GammaConfig cfg = {});
KappaResult kappa_star(const DownloadVector& d, GammaConfig cfg = {});

std::uint64_t h_index(const DownloadVector& d);

//! Largest g <= n such that the top g counts sum to at least g^2.
std::uint64_t g_index(const DownloadVector& d);

//! Geometric mean of k_star and kappa_star.
double composite_index(const KResult& kr, const KappaResult& cr);

} // namespace logidx
