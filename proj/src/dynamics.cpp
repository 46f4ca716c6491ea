#include "qioms/dynamics.hpp"

#include <cmath>

#include "qioms/errors.hpp"

namespace qioms {

namespace {

constexpr cplx kI{0.0, 1.0};

struct Denominators {
  cplx d_cav;   // kappa/2 - i w
  cplx d_mech;  // gamma/2 + i (delta - w)
  cplx det;     // 4 d_cav d_mech + g1^2 - g2^2
};

Denominators denominators(const SystemParams& p, double omega) {
  Denominators d;
  d.d_cav = cplx(p.kappa / 2.0, -omega);
  d.d_mech = cplx(p.gamma / 2.0, p.delta - omega);
  d.det = 4.0 * d.d_cav * d.d_mech + p.g1 * p.g1 - p.g2 * p.g2;
  if (std::abs(d.det) < 1e-14 * p.kappa * p.kappa) {
    throw SingularityError(
        "scattering_coefficients: response determinant vanishes at omega = " +
        std::to_string(omega) +
        " (marginally stable drive, C2 at the instability threshold)");
  }
  return d;
}

}  // namespace

ScatteringCoefficients scattering_coefficients(const SystemParams& p, double omega) {
  ensure_valid(p);
  const auto [d_cav, d_mech, det] = denominators(p, omega);
  const double root_kg = std::sqrt(p.kappa * p.gamma);

  ScatteringCoefficients s;
  s.omega = omega;
  s.a_plus = 1.0 - p.kappa * (det - p.g1 * p.g1) / (d_cav * det);
  s.b = -p.kappa * p.g1 * p.g2 / (d_cav * det);
  s.c_plus = -2.0 * kI * root_kg * p.g1 / det;
  s.a_minus = std::conj(1.0 - p.kappa * (det + p.g2 * p.g2) / (d_cav * det));
  s.c_minus = -2.0 * kI * p.g2 * root_kg / std::conj(det);
  return s;
}

SpectralPoint output_spectra(const SystemParams& p, double omega) {
  const ScatteringCoefficients s = scattering_coefficients(p, omega);
  SpectralPoint out;
  out.omega = omega;
  out.n_plus = std::norm(s.a_plus) * p.n_plus_in + std::norm(s.b) * (1.0 + p.n_minus_in) +
               std::norm(s.c_plus) * p.n_b;
  out.n_minus = std::norm(s.b) * (1.0 + p.n_plus_in) + std::norm(s.a_minus) * p.n_minus_in +
                std::norm(s.c_minus) * (1.0 + p.n_b);
  out.x = s.a_plus * std::conj(s.b) * (1.0 + p.n_plus_in) - s.b * s.a_minus * p.n_minus_in +
          s.c_plus * s.c_minus * (1.0 + p.n_b);
  return out;
}

SpectralPoint closed_form_spectra(const SystemParams& p, double omega) {
  ensure_valid(p);
  if (p.n_plus_in != 0.0 || p.n_minus_in != 0.0) {
    throw UnsupportedConfigurationError(
        "closed_form_spectra: requires vacuum cavity inputs (n_plus_in = n_minus_in = 0)");
  }
  const double g1 = p.g1, g2 = p.g2, kap = p.kappa, gam = p.gamma;
  const double w = omega;
  const cplx den1 = g1 * g1 - g2 * g2 +
                    (cplx(gam, 0.0) + 2.0 * kI * (p.delta - w)) * (cplx(kap, 0.0) - 2.0 * kI * w);
  if (std::abs(den1) < 1e-14 * kap * kap) {
    throw SingularityError("closed_form_spectra: response determinant vanishes at omega = " +
                           std::to_string(w));
  }
  const cplx cav = cplx(kap, -2.0 * w);  // kappa - 2 i w
  const double abs_den1_sq = std::norm(den1);
  const double abs_cav_sq = std::norm(cav);

  SpectralPoint out;
  out.omega = w;
  out.n_plus = 4.0 * p.n_b * g1 * g1 * gam * kap / abs_den1_sq +
               4.0 * (g1 * g2 * kap) * (g1 * g2 * kap) / (abs_den1_sq * abs_cav_sq);
  out.n_minus = 4.0 * (1.0 + p.n_b) * g2 * g2 * gam * kap / abs_den1_sq +
                4.0 * (g1 * g2 * kap) * (g1 * g2 * kap) / (abs_den1_sq * abs_cav_sq);

  const cplx num = g1 * g1 * cav +
                   std::conj(cav) * (g2 * g2 - (cplx(gam, 0.0) + 2.0 * kI * (p.delta - w)) * cav) +
                   2.0 * (1.0 + p.n_b) * gam * abs_cav_sq;
  out.x = -2.0 * g1 * g2 * kap * num / (den1 * std::conj(den1) * abs_cav_sq);
  return out;
}

}  // namespace qioms
