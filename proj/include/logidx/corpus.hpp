#pragma once

#include "logidx/diagnostics.hpp"
#include "logidx/indexes.hpp"
#include "logidx/stats.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace logidx {

enum class Format
{
  csv,
  json,
};

Format parse_format(std::string_view name);

//! Calendar date; validated on parse.
struct Date
{
  int year = 1970;
  int month = 1;
  int day = 1;

  //! Strict YYYY-MM-DD. Throws Errc::invalid_argument.
  static Date parse(std::string_view text);
  std::string str() const;

  auto operator<=>(const Date&) const = default;
};

struct PaperEntry
{
  std::string paper_id;
  std::optional<std::uint64_t> downloads; // empty = blank downloads field
  std::optional<Date> posted_date;
  bool is_other = false;
};

struct AuthorProfile
{
  std::string author_id;
  std::string name;
  std::vector<PaperEntry> papers;
  std::optional<std::uint64_t> declared_total;
};

struct ParsedCorpus
{
  std::vector<AuthorProfile> profiles; // ascending author_id
  std::size_t warnings = 0;            // ignored columns, unknown totals rows
};

//! Reads the canonical corpus schema. Throws ParseError (with the line
//! number) for malformed rows and Errc::duplicate for repeated
//! (author_id, paper_id) pairs.
ParsedCorpus parse_corpus(std::string_view text, Format format);

//! Applies an `author_id,declared_total` file. Returns the number of rows
//! naming authors that are not in the corpus (they are skipped).
std::size_t apply_totals(std::vector<AuthorProfile>& profiles, std::string_view text);

struct CleanedPortfolio
{
  DownloadVector downloads;
  std::uint64_t n_pos = 0;
  std::uint64_t n_tot = 0;
};

//! Drops "other" papers and papers without a downloads value.
CleanedPortfolio clean(const AuthorProfile& profile);

struct SanityResult
{
  enum class Status
  {
    pass,
    fail,
    skipped,
  };
  Status status = Status::skipped;
  std::int64_t delta = 0; // retained sum - declared total
};

SanityResult sanity_check(const AuthorProfile& profile);

//! Years from the earliest posted date to `as_of`, counting whole months
//! plus days at 30 days per month. Empty when no paper has a date.
std::optional<double> career_length(const AuthorProfile& profile, const Date& as_of);

struct IndexReport
{
  std::string author_id;
  std::uint64_t d_tot = 0;
  std::uint64_t n_tot = 0;
  std::uint64_t n_pos = 0;
  std::uint64_t k = 0;
  double k_star = 0.0;
  double d_star = 1.0;
  std::uint64_t kappa = 0;
  double kappa_star = 0.0;
  double f_star = 1.0;
  std::uint64_t h = 0;
  std::uint64_t g = 0;
  std::optional<double> w;
  std::optional<double> omega;
  std::optional<double> u;
  std::optional<double> mu;
  std::optional<double> v;
  std::optional<double> T;
  double composite = 0.0;
};

IndexReport build_report(const AuthorProfile& profile, GammaConfig cfg = {},
                         std::optional<Date> as_of = std::nullopt);

//! Reports for every profile, in ascending author_id order.
std::vector<IndexReport> build_reports(std::span<const AuthorProfile> profiles,
                                       GammaConfig cfg = {},
                                       std::optional<Date> as_of = std::nullopt);

//! Named per-report quantity used by summaries and regressions. Plain
//! column names (k_star, d_tot, T, ...), `d_per_n` for d_tot / n_tot, and
//! `ln_<name>` for the log of any of them. Empty when undefined.
std::optional<double> report_variable(const IndexReport& r, std::string_view name);

struct SummaryRow
{
  std::string quantity;
  std::size_t count = 0; // values present
  std::optional<SummarySix> summary;
};

//! Cross-sectional summaries of the standard report quantities; absent
//! values are omitted per row.
std::vector<SummaryRow> cross_section(std::span<const IndexReport> reports);

// Serialization (corpus_io.cpp).

std::string format_real(double x); // 6 significant digits

std::string write_corpus(std::span<const AuthorProfile> profiles, Format format);
std::string write_reports(std::span<const IndexReport> reports, Format format);

//! Reads a report file produced by write_reports.
std::vector<IndexReport> parse_reports(std::string_view text, Format format);

//! True when the text is a report file rather than a corpus.
bool looks_like_reports(std::string_view text, Format format);

} // namespace logidx
