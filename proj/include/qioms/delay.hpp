#pragma once

#include <functional>

#include "qioms/illumination.hpp"
#include "qioms/params.hpp"

namespace qioms {

/// Delay-scan grid: [t_min, t_max] sampled at `points` before refinement.
struct ScanSpec {
  double t_min = 0.0;
  double t_max = 20.0;
  int points = 2000;
};

struct GridOptimum {
  double argmax = 0.0;
  double value = 0.0;
  bool at_boundary = false;  ///< grid maximum on an interval edge
};

struct DelayResult {
  double t_analytic = 0.0;
  double t_numeric = 0.0;
  double snr_at_analytic = 0.0;
  double snr_at_numeric = 0.0;
  double snr_at_zero = 0.0;
  bool numeric_at_boundary = false;
};

/// Grid scan followed by golden-section refinement (relative width rel_tol
/// around the best grid point). Returns the global maximum over the scanned
/// interval; at_boundary flags a maximum sitting on an edge, which usually
/// means the interval clipped the feature.
GridOptimum maximize_scalar(const std::function<double(double)>& f, const ScanSpec& scan,
                            double rel_tol = 1e-6);

/// Small-bandwidth phase-flattening delay
///   t_opt = (1/gamma) [ 2/(1+4(delta/gamma)^2) + 4 gamma/kappa
///                       + (n_b + 1/2 + C)/((n_b + 1/2 + C)^2 + (delta/gamma)^2) ],
/// defined for C1 = C2 = C and vacuum cavity inputs; otherwise throws
/// UnsupportedConfigurationError.
double optimal_delay_analytic(const SystemParams& params);

/// Delay maximizing snr_qi at the given bandwidth, found by scan + refine.
/// Requires sigma > 0.
GridOptimum optimal_delay_numeric(const SystemParams& params, const IlluminationParams& illum,
                                  double sigma, const ScanSpec& scan = {},
                                  double tol = kDefaultQuadTol);

/// d(arg x')/dw at w = 0 by Richardson-extrapolated central differences
/// (step 1e-6 kappa). Independent check of the analytic delay formula.
double phase_derivative_check(const SystemParams& params);

/// Convenience bundle: analytic and numeric optima plus the SNRs at both and
/// at zero delay.
DelayResult delay_report(const SystemParams& params, const IlluminationParams& illum,
                         double sigma, const ScanSpec& scan = {},
                         double tol = kDefaultQuadTol);

}  // namespace qioms
