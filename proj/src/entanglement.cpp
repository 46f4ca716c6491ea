#include "qioms/entanglement.hpp"

#include <cmath>
#include <stdexcept>

namespace qioms {

namespace detail {

namespace {
double det3(double a, double b, double c, double d, double e, double f, double g, double h,
            double i) {
  return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g);
}
}  // namespace

double det4(const std::array<std::array<double, 4>, 4>& m) {
  double det = 0.0;
  for (int col = 0; col < 4; ++col) {
    double minor[3][3];
    for (int r = 1; r < 4; ++r) {
      int cc = 0;
      for (int c = 0; c < 4; ++c) {
        if (c == col) continue;
        minor[r - 1][cc++] = m[r][c];
      }
    }
    const double cof = det3(minor[0][0], minor[0][1], minor[0][2], minor[1][0], minor[1][1],
                            minor[1][2], minor[2][0], minor[2][1], minor[2][2]);
    det += ((col % 2 == 0) ? 1.0 : -1.0) * m[0][col] * cof;
  }
  return det;
}

}  // namespace detail

double pt_symplectic_eigenvalue(const CovarianceMatrix& v) {
  if (!v.is_physical()) {
    throw std::domain_error("pt_symplectic_eigenvalue: covariance matrix is not physical");
  }
  const double a = v.v11 + 0.5;
  const double b = v.v33 + 0.5;
  const double c2 = v.v13 * v.v13 + v.v14 * v.v14;
  if (c2 == 0.0) return std::min(a, b);  // product state, exact
  // partial transposition flips the sign of det C = -c2
  const double sigma_pt = a * a + b * b + 2.0 * c2;
  const double det_v = detail::det4(v.to_matrix());
  const double disc = std::sqrt(std::max(0.0, sigma_pt * sigma_pt - 4.0 * det_v));
  return std::sqrt(std::max(0.0, (sigma_pt - disc) / 2.0));
}

double log_negativity(const CovarianceMatrix& v) {
  const double eta = pt_symplectic_eigenvalue(v);
  return std::max(0.0, -std::log2(2.0 * eta));
}

std::vector<EntanglementPoint> en_spectrum(const SystemParams& params,
                                           std::span<const double> omegas) {
  std::vector<EntanglementPoint> out;
  out.reserve(omegas.size());
  for (double w : omegas) {
    const SpectralPoint pt = output_spectra(params, w);
    CovarianceMatrix v;
    v.v11 = pt.n_plus;
    v.v33 = pt.n_minus;
    v.v13 = pt.x.real();
    v.v14 = pt.x.imag();
    EntanglementPoint e;
    e.omega = w;
    e.e_n = log_negativity(v);
    if (pt.n_plus > 1e-15) e.ratio = e.e_n / pt.n_plus;
    out.push_back(e);
  }
  return out;
}

}  // namespace qioms
