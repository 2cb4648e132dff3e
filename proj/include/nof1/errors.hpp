// Copyright (c) 2026 The nof1 Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef NOF1_ERRORS_HPP
#define NOF1_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace nof1 {

// Mismatched lengths, empty inputs, non-square matrices.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Structurally valid input outside the supported domain: truncation larger
// than the horizon, alpha outside (0, 1), horizons above an enumeration or
// dense-matrix cap, non-finite values.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Bad configuration files or CLI argument combinations.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input data (CSV and friends). Carries a 1-based line number
// when one is known, 0 otherwise.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(what), line_(line) {}
  explicit ParseError(const std::string& what) : ParseError(what, 0) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace nof1

#endif  // NOF1_ERRORS_HPP
