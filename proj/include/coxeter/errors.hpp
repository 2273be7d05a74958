#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace coxeter {

/// Raised when a caller hands in data that violates an operation's
/// precondition (out-of-range vertex, malformed subset, bad flag value).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a request is well formed but exceeds a hard capability cap,
/// e.g. canonical codes above rank 11.
class UnsupportedError : public InputError {
 public:
  using InputError::InputError;
};

/// Diagram text that does not follow the grammar. Line and column are 1-based.
class ParseError : public InputError {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : InputError("line " + std::to_string(line) + ", column " +
                   std::to_string(column) + ": " + what),
        line_(line),
        column_(column),
        reason_(what) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::string& reason() const noexcept { return reason_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string reason_;
};

}  // namespace coxeter
