#pragma once

#include <array>
#include <complex>
#include <utility>

#include "qioms/dynamics.hpp"
#include "qioms/params.hpp"
#include "qioms/quadrature.hpp"

namespace qioms {

/// Rectangular wave-packet window of bandwidth sigma centred at omega = 0,
/// normalized so that Int |f[w]|^2 dw = 1. The microwave side carries the
/// delay phase e^{i w t_delay}; sigma = 0 stands for the monochromatic limit
/// handled by point evaluation.
struct FilterSpec {
  double sigma = 0.0;
  double t_delay = 0.0;
};

enum class FilterSide { Microwave, Optical };

/// Filter amplitude at omega. Throws std::domain_error for sigma = 0; the
/// monochromatic case has no square-integrable amplitude and callers branch
/// on it instead.
cplx filter_amplitude(const FilterSpec& spec, FilterSide side, double omega);

/// Second moments of the filtered two-mode state, in the parameterization
///
///   [ v11+1/2    0       v13     v14   ]
///   [   0      v11+1/2   v14    -v13   ]
///   [  v13      v14     v33+1/2   0    ]
///   [  v14     -v13       0    v33+1/2 ]
struct CovarianceMatrix {
  double v11 = 0.0;
  double v33 = 0.0;
  double v13 = 0.0;
  double v14 = 0.0;

  std::array<std::array<double, 4>, 4> to_matrix() const;

  /// Ordinary symplectic eigenvalues (smaller first). A physical state has
  /// both >= 1/2.
  std::pair<double, double> symplectic_eigenvalues() const;

  bool is_physical(double slack = 1e-9) const;
};

/// Projects the output spectra onto the filter pair:
///   v11 = Int |f+|^2 n+ dw,  v33 = Int |f-|^2 n- dw,
///   v13 + i v14 = Int conj(f+[w]) conj(f-[-w]) x[w] dw.
/// sigma = 0 returns the point values at omega = 0.
CovarianceMatrix project_covariance(const SystemParams& params, const FilterSpec& spec,
                                    double tol = kDefaultQuadTol);

}  // namespace qioms
