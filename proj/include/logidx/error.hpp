#pragma once

#include <stdexcept>
#include <string>

namespace logidx {

enum class Errc {
  invalid_argument = 1,
  io,
  parse,
  duplicate,
  singular,
  degenerate,
  no_inflection,
  no_convergence,
  undefined,
};

//! Base exception for everything thrown by the core library.
class Error : public std::runtime_error
{
public:
  Error(Errc code, const std::string& what)
    : std::runtime_error(what)
    , code_(code)
  {
  }

  Errc code() const noexcept { return code_; }

private:
  Errc code_;
};

//! A malformed input row; line numbers are 1-based and count the header.
class ParseError : public Error
{
public:
  ParseError(std::size_t line, const std::string& what)
    : Error(Errc::parse, "line " + std::to_string(line) + ": " + what)
    , line_(line)
  {
  }

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

} // namespace logidx
