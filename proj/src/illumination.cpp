#include "qioms/illumination.hpp"

#include <cmath>
#include <stdexcept>

#include "qioms/dynamics.hpp"
#include "snr_internal.hpp"

namespace qioms {

namespace detail {

namespace {

constexpr double kSqrtPi = 1.7724538509055160273;

// Maclaurin series for erf, adequate below the crossover.
double erf_series(double x) {
  const double x2 = x * x;
  double term = x;  // (-1)^n x^(2n+1) / n!
  double sum = x;
  for (int n = 1; n < 200; ++n) {
    term *= -x2 / n;
    const double contrib = term / (2 * n + 1);
    sum += contrib;
    if (std::abs(contrib) < 1e-18 * std::abs(sum)) break;
  }
  return 2.0 / kSqrtPi * sum;
}

// Continued fraction erfc(x) = e^{-x^2} / (sqrt(pi) * F),
// F = x + (1/2)/(x + 1/(x + (3/2)/(x + 2/(x + ...)))), by modified Lentz.
double erfc_contfrac(double x) {
  constexpr double tiny = 1e-300;
  double f = x;
  double c = f;
  double d = 0.0;
  for (int n = 1; n < 300; ++n) {
    const double a = 0.5 * n;
    d = x + a * d;
    if (d == 0.0) d = tiny;
    c = x + a / c;
    if (c == 0.0) c = tiny;
    d = 1.0 / d;
    const double ratio = c * d;
    f *= ratio;
    if (std::abs(ratio - 1.0) < 1e-17) break;
  }
  return std::exp(-x * x) / (kSqrtPi * f);
}

}  // namespace

double erfc_local(double x) {
  if (x < 0.0) return 2.0 - erfc_local(-x);
  if (x < 1.5) return 1.0 - erf_series(x);
  return erfc_contfrac(x);
}

double receiver_density(const SystemParams& params, const IlluminationParams& illum,
                        Hypothesis hyp, double omega) {
  const ScatteringCoefficients s = scattering_coefficients(params, omega);
  double n_return = illum.n_background;
  if (hyp == Hypothesis::TargetPresent) {
    n_return += illum.eta * output_spectra(params, omega).n_plus;
  }
  return std::norm(s.b) * (n_return + 1.0) + std::norm(s.c_minus) * (params.n_b + 1.0);
}

SnrMoments snr_moments(const SystemParams& params, const IlluminationParams& illum,
                       const FilterSpec& spec, double tol) {
  SnrMoments m;
  if (spec.sigma == 0.0) {
    const SpectralPoint pt = output_spectra(params, 0.0);
    m.v11 = pt.n_plus;
    m.v33 = pt.n_minus;
    m.m_h0 = receiver_density(params, illum, Hypothesis::TargetAbsent, 0.0);
    m.m_h1 = receiver_density(params, illum, Hypothesis::TargetPresent, 0.0);
    return m;
  }
  const double lo = -spec.sigma / 2.0;
  const double hi = spec.sigma / 2.0;
  const auto breaks = spectral_breakpoints(params, lo, hi);
  const double inv_sigma = 1.0 / spec.sigma;
  const auto band_mean = [&](const std::function<double(double)>& f) {
    return inv_sigma *
           integrate_adaptive([&](double w) { return cplx(f(w), 0.0); }, lo, hi, tol, breaks)
               .value.real();
  };
  m.v11 = band_mean([&](double w) { return output_spectra(params, w).n_plus; });
  m.v33 = band_mean([&](double w) { return output_spectra(params, w).n_minus; });
  m.m_h0 = band_mean(
      [&](double w) { return receiver_density(params, illum, Hypothesis::TargetAbsent, w); });
  m.m_h1 = band_mean(
      [&](double w) { return receiver_density(params, illum, Hypothesis::TargetPresent, w); });
  return m;
}

// Photon-difference receiver statistics for a given conversion correlator.
double assemble_snr(const IlluminationParams& illum, const SnrMoments& m, cplx corr) {
  const double root_eta = std::sqrt(illum.eta);
  const double d1 = 2.0 * root_eta * corr.real();

  const double ncp0 = (m.m_h0 + m.v33) / 2.0;
  const double ncm0 = ncp0;
  const double ncp1 = (m.m_h1 + m.v33 + d1) / 2.0;
  const double ncm1 = (m.m_h1 + m.v33 - d1) / 2.0;

  const double var0 =
      ncp0 * (ncp0 + 1.0) + ncm0 * (ncm0 + 1.0) - (m.m_h0 - m.v33) * (m.m_h0 - m.v33) / 2.0;
  double var1 = ncp1 * (ncp1 + 1.0) + ncm1 * (ncm1 + 1.0) -
                (m.m_h1 - m.v33) * (m.m_h1 - m.v33) / 2.0;
  var1 -= 2.0 * (root_eta * corr.imag()) * (root_eta * corr.imag());

  const double denom_root = std::sqrt(std::max(0.0, var0)) + std::sqrt(std::max(0.0, var1));
  if (denom_root == 0.0) {
    throw std::domain_error("snr_qi: both hypothesis variances vanish (all-vacuum configuration)");
  }
  return 4.0 * illum.m_pairs * d1 * d1 / (denom_root * denom_root);
}

}  // namespace detail

double receiver_output_moment(const SystemParams& params, const IlluminationParams& illum,
                              const FilterSpec& spec, Hypothesis hyp, double tol) {
  ensure_valid(params);
  ensure_valid(illum);
  if (spec.sigma == 0.0) return detail::receiver_density(params, illum, hyp, 0.0);
  const double lo = -spec.sigma / 2.0;
  const double hi = spec.sigma / 2.0;
  const auto breaks = spectral_breakpoints(params, lo, hi);
  return integrate_adaptive(
             [&](double w) { return cplx(detail::receiver_density(params, illum, hyp, w), 0.0); }, lo,
             hi, tol, breaks)
             .value.real() /
         spec.sigma;
}

cplx conversion_correlator(const SystemParams& params, const FilterSpec& spec, double tol) {
  ensure_valid(params);
  const auto x_prime = [&](double w) {
    const ScatteringCoefficients s = scattering_coefficients(params, w);
    return s.b * output_spectra(params, w).x;
  };
  if (spec.sigma == 0.0) return x_prime(0.0);
  const double lo = -spec.sigma / 2.0;
  const double hi = spec.sigma / 2.0;
  const auto breaks = spectral_breakpoints(params, lo, hi);
  return integrate_adaptive(
             [&](double w) { return std::polar(1.0, -w * spec.t_delay) * x_prime(w); }, lo, hi,
             tol, breaks)
             .value /
         spec.sigma;
}

double mean_photon_difference(const SystemParams& params, const IlluminationParams& illum,
                              const FilterSpec& spec, Hypothesis hyp, double tol) {
  ensure_valid(params);
  ensure_valid(illum);
  if (hyp == Hypothesis::TargetAbsent) return 0.0;
  return 2.0 * std::sqrt(illum.eta) * conversion_correlator(params, spec, tol).real();
}

double snr_qi(const SystemParams& params, const IlluminationParams& illum, const FilterSpec& spec,
              double tol) {
  ensure_valid(params);
  ensure_valid(illum);
  const detail::SnrMoments m = detail::snr_moments(params, illum, spec, tol);
  return detail::assemble_snr(illum, m, conversion_correlator(params, spec, tol));
}

double snr_coherent(const IlluminationParams& illum, double v11) {
  ensure_valid(illum);
  if (v11 < 0.0) throw std::domain_error("snr_coherent: v11 must be >= 0");
  return 4.0 * illum.eta * illum.m_pairs * v11 / (2.0 * illum.n_background + 1.0);
}

double error_probability(double snr) {
  if (snr < 0.0 || !std::isfinite(snr)) {
    throw std::domain_error("error_probability: snr must be finite and >= 0");
  }
  return detail::erfc_local(std::sqrt(snr / 8.0)) / 2.0;
}

IlluminationReport figure_of_merit(const SystemParams& params, const IlluminationParams& illum,
                                   const FilterSpec& spec, double tol) {
  ensure_valid(params);
  ensure_valid(illum);
  const detail::SnrMoments m = detail::snr_moments(params, illum, spec, tol);

  IlluminationReport report;
  report.snr_qi = detail::assemble_snr(illum, m, conversion_correlator(params, spec, tol));
  report.snr_coherent = snr_coherent(illum, m.v11);
  report.p_qi = error_probability(report.snr_qi);
  report.p_coherent = error_probability(report.snr_coherent);
  if (report.snr_coherent > 0.0) {
    report.f_merit = report.snr_qi / report.snr_coherent;
  } else {
    report.diagnostic = "coherent baseline SNR is zero (eta = 0 or v11 = 0); F undefined";
  }
  return report;
}

}  // namespace qioms
