#pragma once

#include <stdexcept>
#include <string>

namespace prh {

/// Malformed or invalid run configuration (CLI exit code 2).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Iteration failed to reach tolerance (CLI exit code 3).
struct ConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A computed state failed its certification checks (CLI exit code 4).
struct CertificationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace prh
