#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dcov {

/// Raised by the trace and design parsers. `line` is 1-based; 0 means the
/// error is not tied to a particular line.
class ParseError : public std::runtime_error {
public:
  ParseError(std::size_t line, std::string reason)
      : std::runtime_error(format(line, reason)), line_(line), reason_(std::move(reason)) {}

  std::size_t line() const noexcept { return line_; }
  const std::string& reason() const noexcept { return reason_; }

private:
  static std::string format(std::size_t line, const std::string& reason) {
    if (line == 0) {
      return reason;
    }
    return "line " + std::to_string(line) + ": " + reason;
  }

  std::size_t line_;
  std::string reason_;
};

class EmitError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class PatternError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class ReportError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace dcov
