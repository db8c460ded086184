#pragma once

#include <stdexcept>
#include <string>

namespace orni {

/// Invalid configuration or usage. The CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A mechanism that cannot close its loop at the requested input angle.
class NotAssemblableError : public std::domain_error {
 public:
  NotAssemblableError(const std::string& what, double theta2)
      : std::domain_error(what), theta2_(theta2) {}
  double theta2() const { return theta2_; }

 private:
  double theta2_;
};

/// Degenerate geometry: zero-length diagonal or a toggle (collinear links).
class SingularConfigurationError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed or insufficient input data (logs, series).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace orni
