#pragma once

#include <stdexcept>
#include <string>

namespace facetforest {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Structurally invalid input (bad names, unit ideal from user data, ...).
class MalformedInputError : public Error {
 public:
  using Error::Error;
};

/// Text format errors; carries 1-based line/column of the offending token.
class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& msg)
      : Error("parse error at " + std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// Operation applied outside its domain (face not in complex, disconnected
/// input to a connected-only check, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A named element was expected to exist but does not (e.g. not a facet).
class NotFoundError : public Error {
 public:
  using Error::Error;
};

/// A configured enumeration or size cap was exceeded.
class ResourceLimitError : public Error {
 public:
  using Error::Error;
};

/// Random instance generation gave up after bounded retries.
class GenerationError : public Error {
 public:
  using Error::Error;
};

/// Degreewise computation did not stabilize under box enlargement; carries a
/// rendering of the disagreeing result tables.
class BoxUnstableError : public Error {
 public:
  using Error::Error;
};

}  // namespace facetforest
