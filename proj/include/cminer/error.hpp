#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cminer {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text. Carries a 1-based line/column when the parser knows
/// it, or a JSON pointer / CSV row in `location()`.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::string location)
      : Error(location.empty() ? message : location + ": " + message),
        location_(std::move(location)) {}

  const std::string& location() const noexcept { return location_; }

 private:
  std::string location_;
};

/// Well-formed input that breaks a domain rule (unknown element, bad weight,
/// duplicate name, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Caller asked for something the current state does not allow, e.g. a
/// duplicate repository registration or an unknown component name.
class LookupError : public Error {
 public:
  using Error::Error;
};

/// An internal postcondition failed. Seeing one of these is a bug.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

std::string format_location(std::size_t line, std::size_t column);

}  // namespace cminer
