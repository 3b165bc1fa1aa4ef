#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace farmroute {

// Base for every failure the library reports. Callers that only need a
// message can catch this; the CLI maps it to exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Fewer than three distinct points, all points collinear, or a
// non-finite coordinate.
class DegenerateInput : public Error {
 public:
  using Error::Error;
};

class GenerationFailure : public Error {
 public:
  using Error::Error;
};

// Malformed instance/solution/manifest text. `line` is 1-based, 0 when the
// problem is not tied to a single line (e.g. truncated input).
class FormatError : public Error {
 public:
  FormatError(std::size_t line, const std::string& field, const std::string& what)
      : Error(line == 0 ? field + ": " + what
                        : "line " + std::to_string(line) + ": " + field + ": " + what),
        line_(line),
        field_(field) {}

  std::size_t line() const noexcept { return line_; }
  const std::string& field() const noexcept { return field_; }

 private:
  std::size_t line_;
  std::string field_;
};

class VersionError : public Error {
 public:
  using Error::Error;
};

class RepairImpossible : public Error {
 public:
  using Error::Error;
};

class InvalidK : public Error {
 public:
  using Error::Error;
};

class TooLarge : public Error {
 public:
  using Error::Error;
};

class InvalidSolution : public Error {
 public:
  using Error::Error;
};

}  // namespace farmroute
