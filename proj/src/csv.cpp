#include "csv.hpp"

#include "logidx/error.hpp"

namespace logidx::csv {

Reader::Reader(std::string_view text)
  : text_(text)
{
  if (text_.starts_with("\xEF\xBB\xBF"))
    pos_ = 3;
}

bool Reader::next(std::vector<std::string>& fields)
{
  while (pos_ < text_.size()) {
    fields.clear();
    record_line_ = current_line_;
    std::string field;
    bool quoted = false;
    bool after_quote = false;
    bool any = false;
    for (;;) {
      if (pos_ >= text_.size()) {
        if (quoted)
          throw ParseError(record_line_, "unterminated quoted field");
        break;
      }
      const char c = text_[pos_++];
      if (quoted) {
        if (c == '"') {
          if (pos_ < text_.size() && text_[pos_] == '"') {
            field.push_back('"');
            ++pos_;
          } else {
            quoted = false;
            after_quote = true;
          }
        } else {
          if (c == '\n')
            ++current_line_;
          field.push_back(c);
        }
        continue;
      }
      if (c == ',') {
        fields.push_back(std::move(field));
        field.clear();
        after_quote = false;
        any = true;
        continue;
      }
      if (c == '\n' || c == '\r') {
        if (c == '\r' && pos_ < text_.size() && text_[pos_] == '\n')
          ++pos_;
        ++current_line_;
        break;
      }
      if (c == '"') {
        if (!field.empty() || after_quote)
          throw ParseError(record_line_, "stray quote inside field");
        quoted = true;
        any = true;
        continue;
      }
      if (after_quote)
        throw ParseError(record_line_, "text after closing quote");
      field.push_back(c);
      any = true;
    }
    if (!any && field.empty())
      continue; // blank line
    fields.push_back(std::move(field));
    return true;
  }
  return false;
}

void append_field(std::string& out, std::string_view field)
{
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
    out.append(field);
    return;
  }
  out.push_back('"');
  for (char c : field) {
    if (c == '"')
      out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
}

} // namespace logidx::csv
