#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fmner {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Bad hyperparameters, empty datasets, invalid flags.
class ConfigError : public Error {
public:
  using Error::Error;
};

// Feature index outside the model's feature-space dimension.
class DimensionError : public Error {
public:
  using Error::Error;
};

// Model and feature space disagree on dimension.
class CompatibilityError : public Error {
public:
  using Error::Error;
};

// Caller-supplied data violates a precondition (length mismatch, no positives, ...).
class InputError : public Error {
public:
  using Error::Error;
};

class IoError : public Error {
public:
  using Error::Error;
};

// Malformed file content. Carries the 1-based line number when known.
class ParseError : public Error {
public:
  ParseError(const std::string& source, std::size_t line, const std::string& what)
      : Error(source + ":" + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

} // namespace fmner
