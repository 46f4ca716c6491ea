#include "qioms/delay.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "qioms/dynamics.hpp"
#include "qioms/errors.hpp"
#include "snr_internal.hpp"

namespace qioms {

GridOptimum maximize_scalar(const std::function<double(double)>& f, const ScanSpec& scan,
                            double rel_tol) {
  if (!(scan.t_min < scan.t_max) || scan.points < 2) {
    throw std::domain_error("maximize_scalar: need t_min < t_max and at least 2 scan points");
  }

  const double step = (scan.t_max - scan.t_min) / (scan.points - 1);
  int best = 0;
  double best_value = f(scan.t_min);
  for (int i = 1; i < scan.points; ++i) {
    const double v = f(scan.t_min + i * step);
    if (v > best_value) {
      best_value = v;
      best = i;
    }
  }

  GridOptimum result;
  result.at_boundary = (best == 0 || best == scan.points - 1);

  // golden-section refinement inside the bracketing grid cells
  const double inv_phi = 0.6180339887498949;
  double lo = scan.t_min + std::max(0, best - 1) * step;
  double hi = scan.t_min + std::min(scan.points - 1, best + 1) * step;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  const double width_target = rel_tol * std::max(std::abs(scan.t_min + best * step), step);
  while (hi - lo > width_target) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f(x1);
    }
  }
  result.argmax = 0.5 * (lo + hi);
  result.value = f(result.argmax);
  if (result.value < best_value) {  // keep the grid point if refinement lost it
    result.argmax = scan.t_min + best * step;
    result.value = best_value;
  }
  return result;
}

double optimal_delay_analytic(const SystemParams& params) {
  ensure_valid(params);
  const double c1 = params.cooperativity1();
  const double c2 = params.cooperativity2();
  const double scale = std::max(1.0, std::max(c1, c2));
  if (std::abs(c1 - c2) > 1e-9 * scale) {
    throw UnsupportedConfigurationError(
        "optimal_delay_analytic: defined only for C1 = C2 (got C1 = " + std::to_string(c1) +
        ", C2 = " + std::to_string(c2) + ")");
  }
  if (params.n_plus_in != 0.0 || params.n_minus_in != 0.0) {
    throw UnsupportedConfigurationError(
        "optimal_delay_analytic: defined only for vacuum cavity inputs");
  }
  const double c = c1;
  const double r = params.delta / params.gamma;
  const double s = params.n_b + 0.5 + c;
  return (2.0 / (1.0 + 4.0 * r * r) + 4.0 * params.gamma / params.kappa + s / (s * s + r * r)) /
         params.gamma;
}

GridOptimum optimal_delay_numeric(const SystemParams& params, const IlluminationParams& illum,
                                  double sigma, const ScanSpec& scan, double tol) {
  ensure_valid(params);
  ensure_valid(illum);
  if (!(sigma > 0.0)) throw std::domain_error("optimal_delay_numeric: requires sigma > 0");

  const FilterSpec base{sigma, 0.0};
  const detail::SnrMoments moments = detail::snr_moments(params, illum, base, tol);
  const auto snr_of_delay = [&](double t_d) {
    return detail::assemble_snr(illum, moments,
                                conversion_correlator(params, FilterSpec{sigma, t_d}, tol));
  };
  return maximize_scalar(snr_of_delay, scan);
}

double phase_derivative_check(const SystemParams& params) {
  ensure_valid(params);
  const auto x_prime = [&](double w) {
    const ScatteringCoefficients s = scattering_coefficients(params, w);
    return s.b * output_spectra(params, w).x;
  };
  // Richardson-extrapolated central difference of arg(x'); phase increments
  // taken through ratios so no unwrapping is needed.
  const double h = 1e-6 * params.kappa;
  const double d1 = std::arg(x_prime(h) / x_prime(-h));
  const double d2 = std::arg(x_prime(2.0 * h) / x_prime(-2.0 * h));
  return (8.0 * d1 - d2) / (12.0 * h);
}

DelayResult delay_report(const SystemParams& params, const IlluminationParams& illum, double sigma,
                         const ScanSpec& scan, double tol) {
  DelayResult out;
  out.t_analytic = optimal_delay_analytic(params);
  const GridOptimum numeric = optimal_delay_numeric(params, illum, sigma, scan, tol);
  out.t_numeric = numeric.argmax;
  out.snr_at_numeric = numeric.value;
  out.numeric_at_boundary = numeric.at_boundary;
  out.snr_at_analytic = snr_qi(params, illum, FilterSpec{sigma, out.t_analytic}, tol);
  out.snr_at_zero = snr_qi(params, illum, FilterSpec{sigma, 0.0}, tol);
  return out;
}

}  // namespace qioms
