#pragma once

#include <complex>

#include "qioms/params.hpp"

namespace qioms {

using cplx = std::complex<double>;

/// Frequency-domain input-output amplitudes of the two output fields.
///
/// Microwave output:  a+_out[w]  = a_plus*a+_in[w] - b*a-_in^dag[-w] + c_plus*b_in[w]
/// Optical output:    a-_out[-w] = conj(b)*a+_in^dag[w] + a_minus*a-_in[-w] + c_minus*b_in^dag[w]
///
/// Bosonic commutators force |a_plus|^2 - |b|^2 + |c_plus|^2 = 1 and
/// |a_minus|^2 - |b|^2 - |c_minus|^2 = 1. Overall phases follow the solver
/// convention fixed by the Fourier transform O[w] = Int O(t) e^{iwt} dt
/// (d/dt -> -iw); only moduli and the correlator products consumed downstream
/// are convention independent.
struct ScatteringCoefficients {
  cplx a_plus;   ///< microwave input -> microwave output
  cplx b;        ///< two-mode-squeezing amplitude
  cplx c_plus;   ///< mechanical noise -> microwave output
  cplx a_minus;  ///< optical input -> optical output
  cplx c_minus;  ///< mechanical noise -> optical output
  double omega = 0.0;
};

/// Stationary output field densities at one frequency: the microwave photon
/// number density n_plus, the optical density n_minus (evaluated at -omega),
/// and the cross correlation x = <a+_out[w] a-_out[-w]> density.
struct SpectralPoint {
  double omega = 0.0;
  double n_plus = 0.0;
  double n_minus = 0.0;
  cplx x;
};

/// Solves the three-mode linear response at frequency omega and applies the
/// input-output map. Throws SingularityError when the response determinant
/// is below 1e-14 kappa^2 (marginally stable drive).
ScatteringCoefficients scattering_coefficients(const SystemParams& params, double omega);

/// Output spectra from the scattering solution and the input occupancies.
SpectralPoint output_spectra(const SystemParams& params, double omega);

/// Literal transcription of the closed-form spectra, valid only for vacuum
/// cavity inputs. Kept as an independent cross-check of output_spectra.
/// Throws UnsupportedConfigurationError when a cavity input occupancy is
/// nonzero.
SpectralPoint closed_form_spectra(const SystemParams& params, double omega);

}  // namespace qioms
