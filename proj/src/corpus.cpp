#include "logidx/corpus.hpp"

#include "logidx/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>

namespace logidx {

Format parse_format(std::string_view name)
{
  if (name == "csv")
    return Format::csv;
  if (name == "json")
    return Format::json;
  throw Error(Errc::invalid_argument, "unknown format '" + std::string(name) + "'");
}

namespace {

bool is_leap(int y)
{
  return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
}

int days_in_month(int y, int m)
{
  static constexpr int days[] = { 31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31 };
  return m == 2 && is_leap(y) ? 29 : days[m - 1];
}

int parse_fixed(std::string_view text, std::size_t pos, std::size_t len)
{
  int value = 0;
  const char* first = text.data() + pos;
  const auto [ptr, ec] = std::from_chars(first, first + len, value);
  if (ec != std::errc() || ptr != first + len)
    throw Error(Errc::invalid_argument, "bad date '" + std::string(text) + "'");
  return value;
}

// Days since 1970-01-01 (proleptic Gregorian).
long days_from_civil(const Date& d)
{
  const int y = d.month <= 2 ? d.year - 1 : d.year;
  const int era = (y >= 0 ? y : y - 399) / 400;
  const int yoe = y - era * 400;
  const int mp = (d.month + 9) % 12;
  const int doy = (153 * mp + 2) / 5 + d.day - 1;
  const int doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return static_cast<long>(era) * 146097 + doe - 719468;
}

} // namespace

Date Date::parse(std::string_view text)
{
  if (text.size() != 10 || text[4] != '-' || text[7] != '-')
    throw Error(Errc::invalid_argument, "bad date '" + std::string(text) + "', want YYYY-MM-DD");
  for (std::size_t i : { 0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u })
    if (text[i] < '0' || text[i] > '9')
      throw Error(Errc::invalid_argument, "bad date '" + std::string(text) + "'");
  Date d{ parse_fixed(text, 0, 4), parse_fixed(text, 5, 2), parse_fixed(text, 8, 2) };
  if (d.month < 1 || d.month > 12 || d.day < 1 || d.day > days_in_month(d.year, d.month))
    throw Error(Errc::invalid_argument, "date out of range '" + std::string(text) + "'");
  return d;
}

std::string Date::str() const
{
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", year, month, day);
  return buf;
}

CleanedPortfolio clean(const AuthorProfile& profile)
{
  std::vector<std::uint64_t> kept;
  kept.reserve(profile.papers.size());
  for (const auto& p : profile.papers)
    if (!p.is_other && p.downloads)
      kept.push_back(*p.downloads);
  CleanedPortfolio out;
  out.downloads = DownloadVector(std::move(kept));
  out.n_tot = out.downloads.size();
  out.n_pos = out.downloads.n_positive();
  return out;
}

SanityResult sanity_check(const AuthorProfile& profile)
{
  SanityResult r;
  if (!profile.declared_total)
    return r;
  const auto sum = clean(profile).downloads.total();
  r.delta = static_cast<std::int64_t>(sum) - static_cast<std::int64_t>(*profile.declared_total);
  r.status = r.delta == 0 ? SanityResult::Status::pass : SanityResult::Status::fail;
  return r;
}

std::optional<double> career_length(const AuthorProfile& profile, const Date& as_of)
{
  std::optional<Date> earliest;
  for (const auto& p : profile.papers) {
    // Same retention rule as clean(): the career spans the counted papers.
    if (p.is_other || !p.downloads || !p.posted_date)
      continue;
    if (*p.posted_date > as_of)
      throw Error(Errc::invalid_argument, "paper " + p.paper_id + " of author " +
                                            profile.author_id + " is posted after " +
                                            as_of.str());
    if (!earliest || *p.posted_date < *earliest)
      earliest = p.posted_date;
  }
  if (!earliest)
    return std::nullopt;

  // Whole months first: the largest m with earliest + m months <= as_of,
  // where the day clamps to the end of a shorter month. The remainder is
  // counted in calendar days.
  int months = (as_of.year - earliest->year) * 12 + (as_of.month - earliest->month);
  auto shifted = [&](int m) {
    const int index = earliest->year * 12 + (earliest->month - 1) + m;
    Date d{ index / 12, index % 12 + 1, 1 };
    d.day = std::min(earliest->day, days_in_month(d.year, d.month));
    return d;
  };
  Date anchor = shifted(months);
  if (anchor > as_of)
    anchor = shifted(--months);
  const auto days = days_from_civil(as_of) - days_from_civil(anchor);
  return (static_cast<double>(months) + static_cast<double>(days) / 30.0) / 12.0;
}

IndexReport build_report(const AuthorProfile& profile, GammaConfig cfg, std::optional<Date> as_of)
{
  const auto cleaned = clean(profile);
  const auto& d = cleaned.downloads;

  IndexReport r;
  r.author_id = profile.author_id;
  r.d_tot = d.total();
  r.n_tot = cleaned.n_tot;
  r.n_pos = cleaned.n_pos;

  const KResult kr = k_star(d, cfg);
  const KappaResult cr = kappa_star(d, cfg);
  r.k = kr.k;
  r.k_star = kr.k_star;
  r.d_star = kr.d_star;
  r.kappa = cr.kappa;
  r.kappa_star = cr.kappa_star;
  r.f_star = cr.f_star;
  r.h = h_index(d);
  r.g = g_index(d);
  r.composite = composite_index(kr, cr);

  const DiagnosticSet diag = diagnose(d, kr.k, cr.kappa);
  r.w = diag.w;
  r.omega = diag.omega;
  r.u = diag.u;
  r.mu = diag.mu;
  r.v = diag.v;
  if (as_of)
    r.T = career_length(profile, *as_of);
  return r;
}

std::vector<IndexReport> build_reports(std::span<const AuthorProfile> profiles, GammaConfig cfg,
                                       std::optional<Date> as_of)
{
  std::vector<IndexReport> out;
  out.reserve(profiles.size());
  for (const auto& p : profiles)
    out.push_back(build_report(p, cfg, as_of));
  std::stable_sort(out.begin(), out.end(),
                   [](const IndexReport& a, const IndexReport& b) { return a.author_id < b.author_id; });
  return out;
}

std::optional<double> report_variable(const IndexReport& r, std::string_view name)
{
  if (name.starts_with("ln_")) {
    const auto base = report_variable(r, name.substr(3));
    if (!base || !(*base > 0.0))
      return std::nullopt;
    return std::log(*base);
  }
  auto real = [](std::uint64_t x) { return static_cast<double>(x); };
  if (name == "d_tot")
    return real(r.d_tot);
  if (name == "n_tot")
    return real(r.n_tot);
  if (name == "n_pos")
    return real(r.n_pos);
  if (name == "d_per_n") {
    if (r.n_tot == 0)
      return std::nullopt;
    return real(r.d_tot) / real(r.n_tot);
  }
  if (name == "k")
    return real(r.k);
  if (name == "k_star")
    return r.k_star;
  if (name == "d_star")
    return r.d_star;
  if (name == "kappa")
    return real(r.kappa);
  if (name == "kappa_star")
    return r.kappa_star;
  if (name == "f_star")
    return r.f_star;
  if (name == "h")
    return real(r.h);
  if (name == "g")
    return real(r.g);
  if (name == "composite")
    return r.composite;
  if (name == "w")
    return r.w;
  if (name == "omega")
    return r.omega;
  if (name == "u")
    return r.u;
  if (name == "mu")
    return r.mu;
  if (name == "v")
    return r.v;
  if (name == "T")
    return r.T;
  throw Error(Errc::invalid_argument, "unknown report variable '" + std::string(name) + "'");
}

std::vector<SummaryRow> cross_section(std::span<const IndexReport> reports)
{
  static constexpr std::string_view quantities[] = {
    "d_tot", "ln_d_tot", "n_tot",      "ln_n_tot", "d_per_n", "ln_d_per_n", "k_star",  "u",
    "w",     "ln_w",     "v",          "kappa_star", "mu",    "omega",      "ln_omega",
  };
  std::vector<SummaryRow> rows;
  for (auto q : quantities) {
    std::vector<double> values;
    values.reserve(reports.size());
    for (const auto& r : reports)
      if (auto x = report_variable(r, q))
        values.push_back(*x);
    SummaryRow row{ std::string(q), values.size(), std::nullopt };
    if (!values.empty())
      row.summary = summary_six(values);
    rows.push_back(std::move(row));
  }
  return rows;
}

} // namespace logidx
