#pragma once

// Minimal RFC-4180 reader/writer shared by the corpus and report codecs.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace logidx::csv {

class Reader
{
public:
  explicit Reader(std::string_view text);

  //! Reads the next non-blank record. Returns false at end of input.
  bool next(std::vector<std::string>& fields);

  //! 1-based line on which the last record started.
  std::size_t line() const noexcept { return record_line_; }

private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t current_line_ = 1;
  std::size_t record_line_ = 0;
};

//! Quotes the field when it contains a separator, quote or line break.
void append_field(std::string& out, std::string_view field);

} // namespace logidx::csv
