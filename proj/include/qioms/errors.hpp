#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace qioms {

/// The frequency-domain response matrix is (numerically) singular, i.e. the
/// driven mode sits on a marginal-stability pole.
class SingularityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Adaptive quadrature exhausted its evaluation budget before reaching the
/// requested tolerance. Carries the best estimate obtained so far.
class AccuracyError : public std::runtime_error {
 public:
  AccuracyError(const std::string& what, std::complex<double> best_value,
                double error_estimate, int evaluations)
      : std::runtime_error(what),
        best_value(best_value),
        error_estimate(error_estimate),
        evaluations(evaluations) {}

  std::complex<double> best_value;
  double error_estimate = 0.0;
  int evaluations = 0;
};

/// A request that is well-formed but outside the supported configuration
/// space (e.g. the analytic delay formula away from C1 = C2).
class UnsupportedConfigurationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Config-file / CLI usage problems. Mapped to exit code 2 by the tool.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qioms
