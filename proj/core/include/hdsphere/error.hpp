#pragma once

#include <stdexcept>
#include <string>

namespace hdsphere {

/// Invalid configuration or out-of-domain input. Maps to CLI exit code 2.
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

/// Numerical breakdown (near-zero denominator, non-convergence). Maps to CLI
/// exit code 3. `order()` is the partial-wave order involved, or -1.
class NumericError : public std::runtime_error {
 public:
  NumericError(const std::string& what, int order = -1)
      : std::runtime_error(what), order_(order) {}

  int order() const noexcept { return order_; }

 private:
  int order_;
};

}  // namespace hdsphere
