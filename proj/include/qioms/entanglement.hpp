#pragma once

#include <optional>
#include <span>
#include <vector>

#include "qioms/filters.hpp"

namespace qioms {

struct EntanglementPoint {
  double omega = 0.0;
  double e_n = 0.0;                ///< logarithmic negativity
  std::optional<double> ratio;     ///< e_n / n_plus, absent when n_plus ~ 0
};

/// Smallest symplectic eigenvalue of the partially transposed covariance
/// matrix. Below 1/2 certifies entanglement. Throws std::domain_error for an
/// unphysical input matrix.
double pt_symplectic_eigenvalue(const CovarianceMatrix& v);

/// E_N = max(0, -log2(2 eta_minus)).
double log_negativity(const CovarianceMatrix& v);

/// Per-frequency entanglement: at each omega the spectral densities are used
/// directly as covariance entries (v11 = n+[w], v33 = n-[w], v13 + i v14 = x[w]).
std::vector<EntanglementPoint> en_spectrum(const SystemParams& params,
                                           std::span<const double> omegas);

namespace detail {
/// Determinant of a general 4x4 matrix by cofactor expansion.
double det4(const std::array<std::array<double, 4>, 4>& m);
}  // namespace detail

}  // namespace qioms
