#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace emt {

// Raised when an instance or solution file cannot be read. Carries the
// 1-based line number of the offending token (0 when unknown, e.g. EOF).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

  // Same error with "context: " in front of the message; the line is kept.
  ParseError with_context(const std::string& context) const {
    return ParseError(context + ": " + what(), line_, Prefixed{});
  }

 private:
  struct Prefixed {};
  ParseError(const std::string& full, std::size_t line, Prefixed) : std::runtime_error(full), line_(line) {}

  std::size_t line_;
};

class UnsupportedFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InfeasibleInstanceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace emt
