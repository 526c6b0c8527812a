#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nmjc {

/// Rejected model parameters (non-finite values, negative rates, inconsistent units).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed run configuration. `line()` is 0 when the error is not tied to a line.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& what, std::size_t line = 0)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A paper-literal kernel exponent exceeded the configured clamp.
class DivergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A truncated series did not converge, or lost all significance to cancellation.
class SeriesError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The fixed-step integrator failed its step-halving audit.
class StepSizeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace nmjc
