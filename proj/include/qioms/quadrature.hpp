#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "qioms/params.hpp"

namespace qioms {

struct IntegrationResult {
  std::complex<double> value;
  double error_estimate = 0.0;
  int evaluations = 0;
};

using ComplexIntegrand = std::function<std::complex<double>(double)>;

inline constexpr double kDefaultQuadTol = 1e-9;
inline constexpr int kDefaultQuadBudget = 1'000'000;

/// Adaptive Gauss-Kronrod 7/15 integration of a complex integrand over
/// [lower, upper]. The initial subdivision is split at the supplied
/// breakpoints so that features far narrower than the band are never
/// straddled by one panel. Mixed tolerance: converged when the accumulated
/// error estimate is below tol * max(1, |value|).
///
/// Throws AccuracyError (carrying the best estimate) when the evaluation
/// budget is exhausted, std::domain_error on non-finite integrand values or
/// an empty interval.
IntegrationResult integrate_adaptive(const ComplexIntegrand& f, double lower, double upper,
                                     double tol = kDefaultQuadTol,
                                     std::span<const double> breakpoints = {},
                                     int max_evaluations = kDefaultQuadBudget);

/// Subdivision hints for the output-spectrum integrands on [lower, upper]:
/// the band edges, the resonances at 0 and +-delta, and guard points at
/// +-gamma and +-10 gamma around each of them. Sorted, deduplicated, clipped.
std::vector<double> spectral_breakpoints(const SystemParams& params, double lower, double upper);

}  // namespace qioms
