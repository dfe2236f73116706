#include "logidx/tables.hpp"

#include "csv.hpp"
#include "logidx/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace logidx {

using nlohmann::json;

namespace {

std::string cell(double x)
{
  return std::isfinite(x) ? format_real(x) : std::string();
}

json number_or_null(double x)
{
  return std::isfinite(x) ? json(x) : json(nullptr);
}

bool uses_career_length(std::string_view name)
{
  return name == "T" || name == "ln_T";
}

double truncate_places(double x, int places)
{
  const double scale = std::pow(10.0, places);
  // The epsilon keeps values parsed from 6-digit text (8.376 -> 8.37599...)
  // from dropping a unit in the last place.
  return std::floor(x * scale + 1e-9) / scale;
}

} // namespace

RegressionBlock rank_regression(std::span<const IndexReport> reports)
{
  std::vector<std::uint64_t> totals;
  totals.reserve(reports.size());
  for (const auto& r : reports)
    if (r.d_tot > 0)
      totals.push_back(r.d_tot);

  RegressionBlock block;
  block.response = "ln_rank";
  block.terms = { "(Intercept)", "ln_d_tot", "ln_d_tot^2" };
  block.fit = fit_rank_curve(totals);
  const auto& c = block.fit.coefficients;
  if (c[2] < 0.0)
    block.inflection = inflection_points(c[0], c[1], c[2]);
  return block;
}

RegressionBlock regress(std::span<const IndexReport> reports, std::string_view response,
                        std::span<const std::string> regressors)
{
  if (regressors.empty())
    throw Error(Errc::invalid_argument, "regression needs at least one regressor");
  bool time_filter = uses_career_length(response);
  for (const auto& name : regressors)
    time_filter = time_filter || uses_career_length(name);

  const auto p = static_cast<Eigen::Index>(regressors.size());
  std::vector<double> ys;
  std::vector<double> xs; // row-major, p per row
  std::vector<double> row(regressors.size());
  for (const auto& r : reports) {
    if (time_filter && !(r.T && *r.T >= 1.0))
      continue;
    const auto y = report_variable(r, response);
    if (!y)
      continue;
    bool complete = true;
    for (std::size_t j = 0; j < regressors.size() && complete; ++j) {
      const auto x = report_variable(r, regressors[j]);
      complete = x.has_value();
      if (complete)
        row[j] = *x;
    }
    if (!complete)
      continue;
    ys.push_back(*y);
    xs.insert(xs.end(), row.begin(), row.end());
  }

  const auto n = static_cast<Eigen::Index>(ys.size());
  Eigen::VectorXd y = Eigen::Map<const Eigen::VectorXd>(ys.data(), n);
  Eigen::MatrixXd design(n, p + 1);
  design.col(0).setOnes();
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < p; ++j)
      design(i, j + 1) = xs[static_cast<std::size_t>(i * p + j)];

  RegressionBlock block;
  block.response = std::string(response);
  block.terms.push_back("(Intercept)");
  block.terms.insert(block.terms.end(), regressors.begin(), regressors.end());
  block.fit = ols(y, design);
  return block;
}

std::vector<RegressionBlock> regression_family(std::span<const IndexReport> reports,
                                               std::string_view family)
{
  std::vector<RegressionBlock> out;
  if (family == "informativeness") {
    static const std::vector<std::string> one = { "ln_d_tot" };
    static const std::vector<std::string> two = { "ln_d_tot", "ln_n_tot" };
    for (auto response : { "k_star", "k", "kappa_star", "kappa" })
      out.push_back(regress(reports, response, one));
    for (auto response : { "k_star", "k", "kappa_star", "kappa" })
      out.push_back(regress(reports, response, two));
    return out;
  }
  if (family == "time") {
    static const std::vector<std::string> time = { "ln_T" };
    for (auto response : { "ln_d_tot", "ln_d_per_n", "k_star", "kappa_star" })
      out.push_back(regress(reports, response, time));
    return out;
  }
  throw Error(Errc::invalid_argument, "unknown regression family '" + std::string(family) + "'");
}

std::string render(std::span<const RegressionBlock> blocks, Format format)
{
  if (format == Format::json) {
    json doc = json::array();
    for (const auto& b : blocks) {
      json coefs = json::array();
      for (std::size_t i = 0; i < b.terms.size(); ++i) {
        coefs.push_back({ { "term", b.terms[i] },
                          { "estimate", number_or_null(b.fit.coefficients[i]) },
                          { "std_error", number_or_null(b.fit.std_errors[i]) },
                          { "t_statistic", number_or_null(b.fit.t_stats[i]) } });
      }
      json j = { { "response", b.response },
                 { "coefficients", std::move(coefs) },
                 { "n_obs", b.fit.n_obs },
                 { "df_residual", b.fit.df_residual },
                 { "has_inference", b.fit.has_inference },
                 { "residual_se", number_or_null(b.fit.residual_se) },
                 { "r_squared", number_or_null(b.fit.r_squared) },
                 { "adj_r_squared", number_or_null(b.fit.adj_r_squared) },
                 { "f_statistic", number_or_null(b.fit.f_statistic) } };
      if (b.inflection)
        j["inflection"] = { { "lower", b.inflection->lower }, { "upper", b.inflection->upper } };
      doc.push_back(std::move(j));
    }
    return doc.dump(2) + "\n";
  }

  std::string out = "response,term,estimate,std_error,t_statistic\n";
  for (const auto& b : blocks) {
    auto line = [&](std::string_view term, const std::string& value, const std::string& se,
                    const std::string& t) {
      csv::append_field(out, b.response);
      out.push_back(',');
      csv::append_field(out, term);
      out += "," + value + "," + se + "," + t + "\n";
    };
    for (std::size_t i = 0; i < b.terms.size(); ++i)
      line(b.terms[i], cell(b.fit.coefficients[i]), cell(b.fit.std_errors[i]),
           cell(b.fit.t_stats[i]));
    line("n_obs", std::to_string(b.fit.n_obs), "", "");
    line("df_residual", std::to_string(b.fit.df_residual), "", "");
    line("residual_se", cell(b.fit.residual_se), "", "");
    line("r_squared", cell(b.fit.r_squared), "", "");
    line("adj_r_squared", cell(b.fit.adj_r_squared), "", "");
    line("f_statistic", cell(b.fit.f_statistic), "", "");
    if (b.inflection) {
      line("inflection_lower", cell(b.inflection->lower), "", "");
      line("inflection_upper", cell(b.inflection->upper), "", "");
    }
  }
  return out;
}

std::string render(const RegressionBlock& block, Format format)
{
  return render(std::span<const RegressionBlock>(&block, 1), format);
}

std::string render_summary(std::span<const SummaryRow> rows, Format format)
{
  if (format == Format::json) {
    json doc = json::array();
    for (const auto& r : rows) {
      json j = { { "quantity", r.quantity }, { "count", r.count } };
      if (r.summary) {
        const auto& s = *r.summary;
        j.update({ { "min", s.min },
                   { "q1", s.q1 },
                   { "median", s.median },
                   { "mean", s.mean },
                   { "q3", s.q3 },
                   { "max", s.max } });
      } else {
        for (auto key : { "min", "q1", "median", "mean", "q3", "max" })
          j[key] = nullptr;
      }
      doc.push_back(std::move(j));
    }
    return doc.dump(2) + "\n";
  }
  std::string out = "quantity,count,min,q1,median,mean,q3,max\n";
  for (const auto& r : rows) {
    out += r.quantity + "," + std::to_string(r.count);
    if (r.summary) {
      const auto& s = *r.summary;
      for (double x : { s.min, s.q1, s.median, s.mean, s.q3, s.max })
        out += "," + format_real(x);
    } else {
      out += ",,,,,,";
    }
    out.push_back('\n');
  }
  return out;
}

std::string render_top(std::span<const IndexReport> reports, std::string_view key,
                       std::size_t top_n, Format format)
{
  double IndexReport::*index_field = nullptr;
  std::string integer_name, scale_name;
  if (key == "k_star") {
    index_field = &IndexReport::k_star;
    integer_name = "k";
    scale_name = "d_star";
  } else if (key == "kappa_star") {
    index_field = &IndexReport::kappa_star;
    integer_name = "kappa";
    scale_name = "f_star";
  } else if (key == "composite") {
    index_field = &IndexReport::composite;
  } else {
    throw Error(Errc::invalid_argument, "unknown sort key '" + std::string(key) + "'");
  }

  std::vector<std::uint64_t> totals;
  totals.reserve(reports.size());
  for (const auto& r : reports)
    totals.push_back(r.d_tot);
  const auto ranks = rank_descending(totals);

  std::vector<std::size_t> order(reports.size());
  for (std::size_t i = 0; i < order.size(); ++i)
    order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& ra = reports[a];
    const auto& rb = reports[b];
    if (ra.*index_field != rb.*index_field)
      return ra.*index_field > rb.*index_field;
    if (ra.d_tot != rb.d_tot)
      return ra.d_tot > rb.d_tot;
    return ra.author_id < rb.author_id;
  });
  order.resize(std::min(top_n, order.size()));

  auto three_places = [](double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", truncate_places(x, 3));
    return std::string(buf);
  };
  auto whole = [](double x) {
    return std::to_string(static_cast<std::uint64_t>(std::floor(x + 1e-9)));
  };

  if (format == Format::json) {
    json doc = json::array();
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
      const auto& r = reports[order[pos]];
      json j = { { "author_id", r.author_id },
                 { std::string(key), truncate_places(r.*index_field, 3) } };
      if (key == "k_star") {
        j["k"] = r.k;
        j["d_star"] = std::floor(r.d_star + 1e-9);
      } else if (key == "kappa_star") {
        j["kappa"] = r.kappa;
        j["f_star"] = std::floor(r.f_star + 1e-9);
      } else {
        j["k_star"] = truncate_places(r.k_star, 3);
        j["kappa_star"] = truncate_places(r.kappa_star, 3);
      }
      j["d_tot"] = r.d_tot;
      j["n_pos"] = r.n_pos;
      j["rank"] = ranks[order[pos]];
      doc.push_back(std::move(j));
    }
    return doc.dump(2) + "\n";
  }

  std::string out = "author_id," + std::string(key);
  out += key == "composite" ? ",k_star,kappa_star" : "," + integer_name + "," + scale_name;
  out += ",d_tot,n_pos,rank\n";
  for (std::size_t i : order) {
    const auto& r = reports[i];
    csv::append_field(out, r.author_id);
    out += "," + three_places(r.*index_field);
    if (key == "k_star")
      out += "," + std::to_string(r.k) + "," + whole(r.d_star);
    else if (key == "kappa_star")
      out += "," + std::to_string(r.kappa) + "," + whole(r.f_star);
    else
      out += "," + three_places(r.k_star) + "," + three_places(r.kappa_star);
    out += "," + std::to_string(r.d_tot) + "," + std::to_string(r.n_pos) + "," +
           std::to_string(ranks[i]) + "\n";
  }
  return out;
}

std::vector<double> log_downloads_per_paper(std::span<const IndexReport> reports)
{
  std::vector<double> out;
  out.reserve(reports.size());
  for (const auto& r : reports)
    if (auto x = report_variable(r, "ln_d_per_n"))
      out.push_back(*x);
  return out;
}

std::string render_points(std::span<const double> xs, std::span<const double> ys)
{
  std::string out;
  char buf[64];
  for (std::size_t i = 0; i < xs.size() && i < ys.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.9g,%.9g\n", xs[i], ys[i]);
    out += buf;
  }
  return out;
}

std::string render_gaussian(const GaussianFit& fit, const DensityCurve& curve, Format format)
{
  if (format == Format::json) {
    const json j = { { "mean", fit.mean },
                     { "sd", fit.sd },
                     { "peak", fit.peak },
                     { "residual_sse", fit.residual_sse },
                     { "bandwidth", curve.bandwidth },
                     { "grid_size", curve.grid.size() } };
    return j.dump(2) + "\n";
  }
  return "mean,sd,peak,residual_sse,bandwidth,grid_size\n" + format_real(fit.mean) + "," +
         format_real(fit.sd) + "," + format_real(fit.peak) + "," +
         format_real(fit.residual_sse) + "," + format_real(curve.bandwidth) + "," +
         std::to_string(curve.grid.size()) + "\n";
}

} // namespace logidx
