#include "logidx/corpus.hpp"

#include "csv.hpp"
#include "logidx/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>

namespace logidx {

using nlohmann::json;

namespace {

constexpr std::string_view report_columns[] = {
  "author_id", "d_tot", "n_tot", "n_pos", "k", "k_star", "d_star", "kappa", "kappa_star",
  "f_star",    "h",     "g",     "w",     "omega", "u", "mu",   "v",      "T",     "composite",
};

std::uint64_t parse_count(std::string_view text, std::size_t line, std::string_view what)
{
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size())
    throw ParseError(line, "bad " + std::string(what) + " '" + std::string(text) + "'");
  return value;
}

double parse_double(std::string_view text, std::size_t line, std::string_view what)
{
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size())
    throw ParseError(line, "bad " + std::string(what) + " '" + std::string(text) + "'");
  return value;
}

// Column lookup for a CSV header; -1 when missing.
class Header
{
public:
  explicit Header(const std::vector<std::string>& names)
  {
    for (std::size_t i = 0; i < names.size(); ++i)
      index_.emplace(names[i], static_cast<int>(i));
    width_ = names.size();
  }

  int find(std::string_view name) const
  {
    const auto it = index_.find(std::string(name));
    return it == index_.end() ? -1 : it->second;
  }

  int require(std::string_view name) const
  {
    const int i = find(name);
    if (i < 0)
      throw ParseError(1, "missing required column '" + std::string(name) + "'");
    return i;
  }

  std::size_t width() const noexcept { return width_; }

  std::size_t unknown(std::span<const std::string_view> known) const
  {
    std::size_t n = 0;
    for (const auto& [name, i] : index_)
      if (std::find(known.begin(), known.end(), name) == known.end())
        ++n;
    return n;
  }

private:
  std::map<std::string, int> index_;
  std::size_t width_ = 0;
};

// Collects papers per author and rejects duplicate (author, paper) pairs.
class CorpusBuilder
{
public:
  AuthorProfile& author(const std::string& id, std::string_view name)
  {
    auto& p = profiles_[id];
    if (p.author_id.empty())
      p.author_id = id;
    if (p.name.empty())
      p.name = name;
    return p;
  }

  void add_paper(AuthorProfile& author, PaperEntry paper, std::size_t line)
  {
    if (!seen_.emplace(author.author_id, paper.paper_id).second) {
      throw Error(Errc::duplicate, "line " + std::to_string(line) + ": duplicate paper '" +
                                     paper.paper_id + "' for author '" + author.author_id + "'");
    }
    author.papers.push_back(std::move(paper));
  }

  std::vector<AuthorProfile> finish()
  {
    std::vector<AuthorProfile> out;
    out.reserve(profiles_.size());
    for (auto& [id, p] : profiles_)
      out.push_back(std::move(p));
    return out;
  }

private:
  std::map<std::string, AuthorProfile> profiles_;
  std::set<std::pair<std::string, std::string>> seen_;
};

ParsedCorpus parse_corpus_csv(std::string_view text)
{
  static constexpr std::string_view known[] = { "author_id",   "author_name", "paper_id",
                                                "downloads",   "posted_date", "is_other" };
  csv::Reader reader(text);
  std::vector<std::string> fields;
  if (!reader.next(fields))
    throw ParseError(1, "missing header");
  const Header header(fields);
  const int c_author = header.require("author_id");
  const int c_paper = header.require("paper_id");
  const int c_downloads = header.require("downloads");
  const int c_name = header.find("author_name");
  const int c_posted = header.find("posted_date");
  const int c_other = header.find("is_other");

  ParsedCorpus parsed;
  parsed.warnings = header.unknown(known);
  CorpusBuilder builder;
  auto cell = [&](int col) -> std::string_view {
    return col < 0 ? std::string_view{} : std::string_view(fields[col]);
  };

  while (reader.next(fields)) {
    const std::size_t line = reader.line();
    if (fields.size() != header.width())
      throw ParseError(line, "expected " + std::to_string(header.width()) + " fields, got " +
                               std::to_string(fields.size()));
    const std::string author_id(cell(c_author));
    if (author_id.empty())
      throw ParseError(line, "empty author_id");
    auto& author = builder.author(author_id, cell(c_name));

    PaperEntry paper;
    paper.paper_id = std::string(cell(c_paper));
    if (!cell(c_downloads).empty())
      paper.downloads = parse_count(cell(c_downloads), line, "downloads");
    if (!cell(c_posted).empty()) {
      try {
        paper.posted_date = Date::parse(cell(c_posted));
      } catch (const Error& e) {
        throw ParseError(line, e.what());
      }
    }
    const auto other = cell(c_other);
    if (other == "true")
      paper.is_other = true;
    else if (!other.empty() && other != "false")
      throw ParseError(line, "bad is_other '" + std::string(other) + "'");

    if (paper.paper_id.empty()) {
      // Author-only row: registers an author without papers.
      if (paper.downloads || paper.posted_date || paper.is_other)
        throw ParseError(line, "paper fields given without a paper_id");
      continue;
    }
    builder.add_paper(author, std::move(paper), line);
  }
  parsed.profiles = builder.finish();
  return parsed;
}

template <typename T>
std::optional<T> optional_field(const json& obj, const char* key)
{
  const auto it = obj.find(key);
  if (it == obj.end() || it->is_null())
    return std::nullopt;
  if constexpr (std::is_same_v<T, std::uint64_t>) {
    if (!it->is_number_unsigned())
      throw Error(Errc::parse, std::string("'") + key + "' must be a non-negative integer");
  }
  return it->get<T>();
}

ParsedCorpus parse_corpus_json(std::string_view text)
{
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(Errc::parse, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_array())
    throw Error(Errc::parse, "corpus JSON must be an array of authors");

  ParsedCorpus parsed;
  CorpusBuilder builder;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const json& a = doc[i];
    const std::string where = "author #" + std::to_string(i + 1);
    try {
      if (!a.is_object())
        throw Error(Errc::parse, "not an object");
      const auto id = a.at("author_id").get<std::string>();
      if (id.empty())
        throw Error(Errc::parse, "empty author_id");
      std::string name = optional_field<std::string>(a, "name").value_or("");
      auto& author = builder.author(id, name);
      if (auto total = optional_field<std::uint64_t>(a, "declared_total"))
        author.declared_total = total;
      if (const auto it = a.find("papers"); it != a.end() && !it->is_null()) {
        for (const json& p : *it) {
          PaperEntry paper;
          paper.paper_id = p.at("paper_id").get<std::string>();
          if (paper.paper_id.empty())
            throw Error(Errc::parse, "empty paper_id");
          paper.downloads = optional_field<std::uint64_t>(p, "downloads");
          if (auto posted = optional_field<std::string>(p, "posted_date"))
            paper.posted_date = Date::parse(*posted);
          paper.is_other = optional_field<bool>(p, "is_other").value_or(false);
          builder.add_paper(author, std::move(paper), i + 1);
        }
      }
    } catch (const json::exception& e) {
      throw Error(Errc::parse, where + ": " + e.what());
    } catch (const Error& e) {
      if (e.code() == Errc::duplicate)
        throw;
      throw Error(Errc::parse, where + ": " + e.what());
    }
  }
  parsed.profiles = builder.finish();
  return parsed;
}

void append_optional(std::string& out, const std::optional<double>& x)
{
  out.push_back(',');
  if (x)
    out += format_real(*x);
}

json optional_json(const std::optional<double>& x)
{
  return x ? json(*x) : json(nullptr);
}

std::vector<IndexReport> parse_reports_csv(std::string_view text)
{
  csv::Reader reader(text);
  std::vector<std::string> fields;
  if (!reader.next(fields))
    throw ParseError(1, "missing header");
  const Header header(fields);
  std::map<std::string_view, int> col;
  for (auto name : report_columns)
    col[name] = header.require(name);

  std::vector<IndexReport> out;
  while (reader.next(fields)) {
    const std::size_t line = reader.line();
    if (fields.size() != header.width())
      throw ParseError(line, "expected " + std::to_string(header.width()) + " fields");
    auto text_of = [&](std::string_view name) -> std::string_view { return fields[col[name]]; };
    auto count = [&](std::string_view name) { return parse_count(text_of(name), line, name); };
    auto real = [&](std::string_view name) { return parse_double(text_of(name), line, name); };
    auto optional = [&](std::string_view name) -> std::optional<double> {
      if (text_of(name).empty())
        return std::nullopt;
      return real(name);
    };
    IndexReport r;
    r.author_id = std::string(text_of("author_id"));
    r.d_tot = count("d_tot");
    r.n_tot = count("n_tot");
    r.n_pos = count("n_pos");
    r.k = count("k");
    r.k_star = real("k_star");
    r.d_star = real("d_star");
    r.kappa = count("kappa");
    r.kappa_star = real("kappa_star");
    r.f_star = real("f_star");
    r.h = count("h");
    r.g = count("g");
    r.w = optional("w");
    r.omega = optional("omega");
    r.u = optional("u");
    r.mu = optional("mu");
    r.v = optional("v");
    r.T = optional("T");
    r.composite = real("composite");
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<IndexReport> parse_reports_json(std::string_view text)
{
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(Errc::parse, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_array())
    throw Error(Errc::parse, "report JSON must be an array");
  std::vector<IndexReport> out;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const json& j = doc[i];
    try {
      IndexReport r;
      r.author_id = j.at("author_id").get<std::string>();
      r.d_tot = j.at("d_tot").get<std::uint64_t>();
      r.n_tot = j.at("n_tot").get<std::uint64_t>();
      r.n_pos = j.at("n_pos").get<std::uint64_t>();
      r.k = j.at("k").get<std::uint64_t>();
      r.k_star = j.at("k_star").get<double>();
      r.d_star = j.at("d_star").get<double>();
      r.kappa = j.at("kappa").get<std::uint64_t>();
      r.kappa_star = j.at("kappa_star").get<double>();
      r.f_star = j.at("f_star").get<double>();
      r.h = j.at("h").get<std::uint64_t>();
      r.g = j.at("g").get<std::uint64_t>();
      r.w = optional_field<double>(j, "w");
      r.omega = optional_field<double>(j, "omega");
      r.u = optional_field<double>(j, "u");
      r.mu = optional_field<double>(j, "mu");
      r.v = optional_field<double>(j, "v");
      r.T = optional_field<double>(j, "T");
      r.composite = j.at("composite").get<double>();
      out.push_back(std::move(r));
    } catch (const json::exception& e) {
      throw Error(Errc::parse, "report #" + std::to_string(i + 1) + ": " + e.what());
    }
  }
  return out;
}

} // namespace

ParsedCorpus parse_corpus(std::string_view text, Format format)
{
  return format == Format::csv ? parse_corpus_csv(text) : parse_corpus_json(text);
}

std::size_t apply_totals(std::vector<AuthorProfile>& profiles, std::string_view text)
{
  csv::Reader reader(text);
  std::vector<std::string> fields;
  if (!reader.next(fields))
    throw ParseError(1, "missing header");
  const Header header(fields);
  const int c_author = header.require("author_id");
  const int c_total = header.require("declared_total");

  std::map<std::string_view, AuthorProfile*> by_id;
  for (auto& p : profiles)
    by_id.emplace(p.author_id, &p);

  std::size_t unknown = 0;
  while (reader.next(fields)) {
    const std::size_t line = reader.line();
    if (fields.size() != header.width())
      throw ParseError(line, "expected " + std::to_string(header.width()) + " fields");
    const auto it = by_id.find(fields[c_author]);
    if (it == by_id.end()) {
      ++unknown;
      continue;
    }
    if (fields[c_total].empty())
      it->second->declared_total.reset();
    else
      it->second->declared_total = parse_count(fields[c_total], line, "declared_total");
  }
  return unknown;
}

std::string format_real(double x)
{
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::string write_corpus(std::span<const AuthorProfile> profiles, Format format)
{
  if (format == Format::json) {
    json doc = json::array();
    for (const auto& a : profiles) {
      json papers = json::array();
      for (const auto& p : a.papers) {
        papers.push_back({
          { "paper_id", p.paper_id },
          { "downloads", p.downloads ? json(*p.downloads) : json(nullptr) },
          { "posted_date", p.posted_date ? json(p.posted_date->str()) : json(nullptr) },
          { "is_other", p.is_other },
        });
      }
      doc.push_back({
        { "author_id", a.author_id },
        { "name", a.name },
        { "papers", std::move(papers) },
        { "declared_total", a.declared_total ? json(*a.declared_total) : json(nullptr) },
      });
    }
    return doc.dump(1) + "\n";
  }

  std::string out = "author_id,author_name,paper_id,downloads,posted_date,is_other\n";
  for (const auto& a : profiles) {
    auto row_prefix = [&] {
      csv::append_field(out, a.author_id);
      out.push_back(',');
      csv::append_field(out, a.name);
      out.push_back(',');
    };
    if (a.papers.empty()) {
      row_prefix();
      out += ",,,\n";
      continue;
    }
    for (const auto& p : a.papers) {
      row_prefix();
      csv::append_field(out, p.paper_id);
      out.push_back(',');
      if (p.downloads)
        out += std::to_string(*p.downloads);
      out.push_back(',');
      if (p.posted_date)
        out += p.posted_date->str();
      out += p.is_other ? ",true\n" : ",false\n";
    }
  }
  return out;
}

std::string write_reports(std::span<const IndexReport> reports, Format format)
{
  if (format == Format::json) {
    json doc = json::array();
    for (const auto& r : reports) {
      doc.push_back({
        { "author_id", r.author_id },
        { "d_tot", r.d_tot },
        { "n_tot", r.n_tot },
        { "n_pos", r.n_pos },
        { "k", r.k },
        { "k_star", r.k_star },
        { "d_star", r.d_star },
        { "kappa", r.kappa },
        { "kappa_star", r.kappa_star },
        { "f_star", r.f_star },
        { "h", r.h },
        { "g", r.g },
        { "w", optional_json(r.w) },
        { "omega", optional_json(r.omega) },
        { "u", optional_json(r.u) },
        { "mu", optional_json(r.mu) },
        { "v", optional_json(r.v) },
        { "T", optional_json(r.T) },
        { "composite", r.composite },
      });
    }
    // Preserve the fixed column order rather than nlohmann's sorted keys.
    std::string out = "[";
    for (std::size_t i = 0; i < doc.size(); ++i) {
      out += i == 0 ? "\n  {" : ",\n  {";
      bool first = true;
      for (auto name : report_columns) {
        out += first ? "" : ", ";
        first = false;
        out += json(std::string(name)).dump() + ": " + doc[i][std::string(name)].dump();
      }
      out += "}";
    }
    out += doc.empty() ? "]\n" : "\n]\n";
    return out;
  }

  std::string out;
  for (std::size_t i = 0; i < std::size(report_columns); ++i) {
    out += i == 0 ? "" : ",";
    out += report_columns[i];
  }
  out.push_back('\n');
  for (const auto& r : reports) {
    csv::append_field(out, r.author_id);
    for (auto x : { r.d_tot, r.n_tot, r.n_pos, r.k })
      out += "," + std::to_string(x);
    out += "," + format_real(r.k_star) + "," + format_real(r.d_star);
    out += "," + std::to_string(r.kappa);
    out += "," + format_real(r.kappa_star) + "," + format_real(r.f_star);
    out += "," + std::to_string(r.h) + "," + std::to_string(r.g);
    append_optional(out, r.w);
    append_optional(out, r.omega);
    append_optional(out, r.u);
    append_optional(out, r.mu);
    append_optional(out, r.v);
    append_optional(out, r.T);
    out += "," + format_real(r.composite) + "\n";
  }
  return out;
}

std::vector<IndexReport> parse_reports(std::string_view text, Format format)
{
  return format == Format::csv ? parse_reports_csv(text) : parse_reports_json(text);
}

bool looks_like_reports(std::string_view text, Format format)
{
  if (format == Format::csv) {
    csv::Reader reader(text);
    std::vector<std::string> header;
    if (!reader.next(header))
      return false;
    return std::find(header.begin(), header.end(), "k_star") != header.end();
  }
  const json doc = json::parse(text, nullptr, false);
  return doc.is_array() && !doc.empty() && doc[0].is_object() && doc[0].contains("k_star");
}

} // namespace logidx
