#include "qioms/filters.hpp"

#include <cmath>
#include <stdexcept>

namespace qioms {

cplx filter_amplitude(const FilterSpec& spec, FilterSide side, double omega) {
  if (spec.sigma < 0.0) throw std::domain_error("filter_amplitude: sigma must be >= 0");
  if (spec.sigma == 0.0) {
    throw std::domain_error(
        "filter_amplitude: sigma = 0 is the monochromatic mode; use point evaluation");
  }
  if (std::abs(omega) > spec.sigma / 2.0) return 0.0;
  const double amp = 1.0 / std::sqrt(spec.sigma);
  if (side == FilterSide::Microwave) {
    return std::polar(amp, omega * spec.t_delay);
  }
  return amp;
}

std::array<std::array<double, 4>, 4> CovarianceMatrix::to_matrix() const {
  const double a = v11 + 0.5;
  const double b = v33 + 0.5;
  return {{{a, 0.0, v13, v14},
           {0.0, a, v14, -v13},
           {v13, v14, b, 0.0},
           {v14, -v13, 0.0, b}}};
}

std::pair<double, double> CovarianceMatrix::symplectic_eigenvalues() const {
  const double a = v11 + 0.5;
  const double b = v33 + 0.5;
  const double c2 = v13 * v13 + v14 * v14;
  const double sigma = a * a + b * b - 2.0 * c2;
  const double det = (a * b - c2) * (a * b - c2);
  const double disc = std::sqrt(std::max(0.0, sigma * sigma - 4.0 * det));
  const double lo = std::sqrt(std::max(0.0, (sigma - disc) / 2.0));
  const double hi = std::sqrt(std::max(0.0, (sigma + disc) / 2.0));
  return {lo, hi};
}

bool CovarianceMatrix::is_physical(double slack) const {
  if (v11 < -slack || v33 < -slack) return false;
  return symplectic_eigenvalues().first >= 0.5 - slack;
}

CovarianceMatrix project_covariance(const SystemParams& params, const FilterSpec& spec,
                                    double tol) {
  ensure_valid(params);
  if (spec.sigma < 0.0) throw std::domain_error("project_covariance: sigma must be >= 0");
  if (!(tol > 0.0)) throw std::domain_error("project_covariance: tol must be > 0");

  CovarianceMatrix v;
  if (spec.sigma == 0.0) {
    const SpectralPoint pt = output_spectra(params, 0.0);
    v.v11 = pt.n_plus;
    v.v33 = pt.n_minus;
    v.v13 = pt.x.real();
    v.v14 = pt.x.imag();
    return v;
  }

  const double lo = -spec.sigma / 2.0;
  const double hi = spec.sigma / 2.0;
  const auto breaks = spectral_breakpoints(params, lo, hi);
  const double inv_sigma = 1.0 / spec.sigma;

  v.v11 = inv_sigma * integrate_adaptive(
                          [&](double w) { return cplx(output_spectra(params, w).n_plus, 0.0); },
                          lo, hi, tol, breaks)
                          .value.real();
  v.v33 = inv_sigma * integrate_adaptive(
                          [&](double w) { return cplx(output_spectra(params, w).n_minus, 0.0); },
                          lo, hi, tol, breaks)
                          .value.real();
  const cplx off = inv_sigma * integrate_adaptive(
                                   [&](double w) {
                                     return std::polar(1.0, -w * spec.t_delay) *
                                            output_spectra(params, w).x;
                                   },
                                   lo, hi, tol, breaks)
                                   .value;
  v.v13 = off.real();
  v.v14 = off.imag();
  return v;
}

}  // namespace qioms
