#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace triadgraph {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Model parameters out of range or inconsistent with the generation mode.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Operation invoked on a state that cannot support it (e.g. empty edge set).
class StateError : public Error {
 public:
  using Error::Error;
};

/// Growth storage could not be allocated.
class AllocationError : public Error {
 public:
  using Error::Error;
};

/// Metric is undefined for the given graph (e.g. global clustering with no
/// connected triples).
class UndefinedMetricError : public Error {
 public:
  using Error::Error;
};

/// Brute-force oracle refused a graph above its size guard.
class SizeGuardError : public Error {
 public:
  using Error::Error;
};

/// Malformed graph file. Carries the 1-based line number (0 when the error is
/// not tied to a line, e.g. an empty edge body).
class FormatError : public Error {
 public:
  FormatError(std::size_t line, const std::string& what)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Invalid experiment configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// File system failure; the message names the file.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace triadgraph
