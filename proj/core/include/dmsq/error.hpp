#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dmsq {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A configuration value violates a structural rule. `field()` names the
/// offending entry using parameter-path syntax, e.g. `mechanical[1].gamma`.
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& what)
      : Error(field.empty() ? what : field + ": " + what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Malformed input text. Line and column are 1-based; 0 means unknown.
class ParseError : public Error {
 public:
  ParseError(std::string source, std::size_t line, std::size_t column, const std::string& what)
      : Error(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// A numerical routine failed: eigen-solver breakdown, iteration budget
/// exhausted, residual above tolerance.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Steady state requested for a drift matrix with a non-decaying eigenvalue.
class UnstableSystemError : public Error {
 public:
  explicit UnstableSystemError(double margin)
      : Error("drift matrix is not stable (max Re(lambda) = " + std::to_string(margin) + ")"),
        margin_(margin) {}

  double margin() const noexcept { return margin_; }

 private:
  double margin_;
};

}  // namespace dmsq
