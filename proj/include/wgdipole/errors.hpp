// Copyright 2026 wgdipole contributors
// SPDX-License-Identifier: Apache-2.0

#ifndef WGDIPOLE_ERRORS_HPP
#define WGDIPOLE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace wgdipole {

// Bad user input: malformed config, unknown keys, invalid geometry.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failure: non-convergent sums, singular modes, solver residuals.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

// Filesystem failure while reading inputs or writing outputs.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace wgdipole

#endif
