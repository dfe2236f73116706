// Command-line front end. Talks to the library only through logidx.h.

#include "logidx/logidx.h"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace {

struct CliError : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

void check(logidx_status status)
{
  if (status != LOGIDX_OK)
    throw CliError(std::string(logidx_status_name(status)) + ": " + logidx_last_error());
}

template <typename T, void (*Free)(T*)>
struct Deleter
{
  void operator()(T* p) const { Free(p); }
};

using Corpus = std::unique_ptr<logidx_corpus, Deleter<logidx_corpus, logidx_corpus_free>>;
using Reports = std::unique_ptr<logidx_reports, Deleter<logidx_reports, logidx_reports_free>>;
using Fit = std::unique_ptr<logidx_fit, Deleter<logidx_fit, logidx_fit_free>>;
using Density = std::unique_ptr<logidx_density, Deleter<logidx_density, logidx_density_free>>;

// Takes ownership of a library-allocated string.
std::string take(char* s)
{
  std::string out(s ? s : "");
  logidx_string_free(s);
  return out;
}

std::string read_input(const std::string& path)
{
  if (path == "-") {
    return { std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>() };
  }
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw CliError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text)
{
  if (path == "-") {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text))
    throw CliError("cannot write '" + path + "'");
}

logidx_format format_from_name(const std::string& name)
{
  logidx_format f;
  check(logidx_parse_format(name.c_str(), &f));
  return f;
}

struct Options
{
  std::string input = "-";
  std::string output = "-";
  std::string format;
  std::string input_format;
  double gamma = 1.0;
  std::string as_of;
  std::string totals;
  std::size_t top_n = 20;
  std::string by = "k_star";
  std::size_t grid_size = 512;
  std::string points;
  std::string fit_points;
  double a = 0.0, b = 0.0, c = 0.0;
  std::string family;
  std::string response;
  std::vector<std::string> regressors;
  logidx_synth_params synth{};
};

logidx_format output_format(const Options& o)
{
  if (!o.format.empty())
    return format_from_name(o.format);
  if (const char* env = std::getenv("LOGIDX_FORMAT"); env && *env)
    return format_from_name(env);
  return LOGIDX_FORMAT_CSV;
}

logidx_format input_format(const Options& o)
{
  if (!o.input_format.empty())
    return format_from_name(o.input_format);
  const auto& p = o.input;
  if (p.size() >= 5 && p.compare(p.size() - 5, 5, ".json") == 0)
    return LOGIDX_FORMAT_JSON;
  return LOGIDX_FORMAT_CSV;
}

const char* as_of_or_null(const Options& o)
{
  return o.as_of.empty() ? nullptr : o.as_of.c_str();
}

Reports load_reports(const Options& o)
{
  const auto text = read_input(o.input);
  logidx_reports* raw = nullptr;
  check(logidx_reports_load(text.data(), text.size(), input_format(o), o.gamma, as_of_or_null(o),
                            &raw));
  return Reports(raw);
}

void run_index(const Options& o)
{
  const auto text = read_input(o.input);
  logidx_corpus* raw = nullptr;
  check(logidx_corpus_parse(text.data(), text.size(), input_format(o), &raw));
  Corpus corpus(raw);
  if (auto w = logidx_corpus_warning_count(corpus.get()))
    std::cerr << "warning: " << w << " unknown column(s) ignored\n";

  if (!o.totals.empty()) {
    const auto totals = read_input(o.totals);
    std::size_t unknown = 0;
    check(logidx_corpus_apply_totals(corpus.get(), totals.data(), totals.size(), &unknown));
    if (unknown)
      std::cerr << "warning: " << unknown << " totals row(s) name unknown authors\n";
    for (std::size_t i = 0; i < logidx_corpus_author_count(corpus.get()); ++i) {
      logidx_sanity state;
      int64_t delta = 0;
      check(logidx_corpus_sanity(corpus.get(), i, &state, &delta));
      if (state == LOGIDX_SANITY_FAIL) {
        const char* id = nullptr;
        check(logidx_corpus_author_id(corpus.get(), i, &id));
        std::cerr << "sanity check failed for " << id << ": delta " << delta << "\n";
      }
    }
  }

  logidx_reports* reports = nullptr;
  check(logidx_reports_build(corpus.get(), o.gamma, as_of_or_null(o), &reports));
  Reports owned(reports);
  char* out = nullptr;
  check(logidx_reports_to_string(owned.get(), output_format(o), &out));
  write_output(o.output, take(out));
}

void run_summary(const Options& o)
{
  auto reports = load_reports(o);
  char* out = nullptr;
  check(logidx_summary_to_string(reports.get(), output_format(o), &out));
  write_output(o.output, take(out));
}

void run_top(const Options& o)
{
  auto reports = load_reports(o);
  char* out = nullptr;
  check(logidx_top_to_string(reports.get(), o.by.c_str(), o.top_n, output_format(o), &out));
  write_output(o.output, take(out));
}

void run_fit_rank(const Options& o)
{
  auto reports = load_reports(o);
  logidx_fit* raw = nullptr;
  check(logidx_fit_rank(reports.get(), &raw));
  Fit fit(raw);
  char* out = nullptr;
  check(logidx_fit_to_string(fit.get(), output_format(o), &out));
  write_output(o.output, take(out));
}

void run_fit_gauss(const Options& o)
{
  auto reports = load_reports(o);
  logidx_density* raw = nullptr;
  check(logidx_density_from_reports(reports.get(), o.grid_size, &raw));
  Density density(raw);
  logidx_gaussian fit{};
  check(logidx_density_fit(density.get(), &fit));
  char* out = nullptr;
  if (!o.points.empty()) {
    check(logidx_density_points(density.get(), &out));
    write_output(o.points, take(out));
  }
  if (!o.fit_points.empty()) {
    check(logidx_gaussian_points(density.get(), &fit, &out));
    write_output(o.fit_points, take(out));
  }
  check(logidx_gaussian_to_string(&fit, density.get(), output_format(o), &out));
  write_output(o.output, take(out));
}

void run_inflect(const Options& o)
{
  double lower = 0.0, upper = 0.0;
  check(logidx_inflection(o.a, o.b, o.c, &lower, &upper));
  char buf[128];
  if (output_format(o) == LOGIDX_FORMAT_JSON)
    std::snprintf(buf, sizeof buf, "{\"inflection\": %.17g, \"lower\": %.17g, \"upper\": %.17g}\n",
                  upper, lower, upper);
  else
    std::snprintf(buf, sizeof buf, "inflection,lower,upper\n%.6g,%.6g,%.6g\n", upper, lower,
                  upper);
  write_output(o.output, buf);
}

void run_synth(const Options& o)
{
  logidx_corpus* raw = nullptr;
  check(logidx_synth_generate(&o.synth, &raw));
  Corpus corpus(raw);
  char* out = nullptr;
  check(logidx_corpus_to_string(corpus.get(), output_format(o), &out));
  write_output(o.output, take(out));
}

void run_regress(const Options& o)
{
  auto reports = load_reports(o);
  logidx_fit* raw = nullptr;
  if (!o.family.empty()) {
    check(logidx_regress_family(reports.get(), o.family.c_str(), &raw));
  } else {
    if (o.response.empty() || o.regressors.empty())
      throw CliError("regress needs --family, or --response with --regressors");
    std::vector<const char*> names;
    for (const auto& r : o.regressors)
      names.push_back(r.c_str());
    check(logidx_regress(reports.get(), o.response.c_str(), names.data(), names.size(), &raw));
  }
  Fit fit(raw);
  char* out = nullptr;
  check(logidx_fit_to_string(fit.get(), output_format(o), &out));
  write_output(o.output, take(out));
}

void add_io(CLI::App* cmd, Options& o, bool with_input = true)
{
  if (with_input) {
    cmd->add_option("-i,--input", o.input, "Input file, '-' for stdin")->capture_default_str();
    cmd->add_option("--input-format", o.input_format, "csv or json (default: by extension)");
  }
  cmd->add_option("-o,--output", o.output, "Output file, '-' for stdout")->capture_default_str();
  cmd->add_option("-f,--format", o.format, "Output format csv or json (env LOGIDX_FORMAT)");
}

void add_indexing(CLI::App* cmd, Options& o)
{
  cmd->add_option("--gamma", o.gamma, "Log normalization factor")
    ->capture_default_str()
    ->check(CLI::PositiveNumber);
  cmd->add_option("--as-of", o.as_of, "Date (YYYY-MM-DD) for career length T");
}

} // namespace

int main(int argc, char** argv)
{
  CLI::App app{ "Log-based download indexes for author download corpora" };
  app.require_subcommand(1);
  Options o;
  logidx_synth_default_params(&o.synth);

  auto* index = app.add_subcommand("index", "Compute per-author index reports from a corpus");
  add_io(index, o);
  add_indexing(index, o);
  index->add_option("--totals", o.totals, "author_id,declared_total file for the sanity check");

  auto* summary = app.add_subcommand("summary", "Cross-sectional summaries of report quantities");
  add_io(summary, o);
  add_indexing(summary, o);

  auto* fit_rank = app.add_subcommand("fit-rank", "Quadratic fit of ln(rank) on ln(d_tot)");
  add_io(fit_rank, o);
  add_indexing(fit_rank, o);

  auto* fit_gauss = app.add_subcommand("fit-gauss", "Gaussian fit to the ln(d_tot/n_tot) density");
  add_io(fit_gauss, o);
  add_indexing(fit_gauss, o);
  fit_gauss->add_option("--grid-size", o.grid_size, "Density grid points")
    ->capture_default_str()
    ->check(CLI::Range(10, 1000000));
  fit_gauss->add_option("--points", o.points, "Write density points (x,y) here");
  fit_gauss->add_option("--fit-points", o.fit_points, "Write fitted curve points (x,y) here");

  auto* inflect = app.add_subcommand("inflect", "Inflection of r = exp(a + b x + c x^2)");
  add_io(inflect, o, false);
  inflect->add_option("--a", o.a, "Intercept")->required();
  inflect->add_option("--b", o.b, "Linear coefficient")->required();
  inflect->add_option("--c", o.c, "Quadratic coefficient")->required();

  auto* top = app.add_subcommand("top", "Leaderboard by an index");
  add_io(top, o);
  add_indexing(top, o);
  top->add_option("--by", o.by, "k_star, kappa_star or composite")->capture_default_str();
  top->add_option("-n,--top", o.top_n, "Number of rows")->capture_default_str();

  auto* synth = app.add_subcommand("synth", "Generate a seeded synthetic corpus");
  add_io(synth, o, false);
  synth->add_option("--authors", o.synth.n_authors, "Number of authors")->capture_default_str();
  synth->add_option("--seed", o.synth.seed, "PRNG seed")->capture_default_str();
  synth->add_option("--paper-count-mean-log", o.synth.paper_count_mean_log)->capture_default_str();
  synth->add_option("--paper-count-sd-log", o.synth.paper_count_sd_log)->capture_default_str();
  synth->add_option("--quality-mean", o.synth.author_quality_mean)->capture_default_str();
  synth->add_option("--quality-sd", o.synth.author_quality_sd)->capture_default_str();
  synth->add_option("--noise-sd", o.synth.paper_noise_sd)->capture_default_str();

  auto* regress = app.add_subcommand("regress", "Linear regressions over report quantities");
  add_io(regress, o);
  add_indexing(regress, o);
  regress->add_option("--family", o.family, "informativeness or time");
  regress->add_option("--response", o.response, "Response variable, e.g. k_star");
  regress->add_option("--regressors", o.regressors, "Explanatory variables, e.g. ln_d_tot")
    ->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (index->parsed())
      run_index(o);
    else if (summary->parsed())
      run_summary(o);
    else if (fit_rank->parsed())
      run_fit_rank(o);
    else if (fit_gauss->parsed())
      run_fit_gauss(o);
    else if (inflect->parsed())
      run_inflect(o);
    else if (top->parsed())
      run_top(o);
    else if (synth->parsed())
      run_synth(o);
    else if (regress->parsed())
      run_regress(o);
  } catch (const std::exception& e) {
    std::cerr << "logidx: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
