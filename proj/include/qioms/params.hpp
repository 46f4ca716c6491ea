#pragma once

#include <string>
#include <vector>

namespace qioms {

/// Constants of the linearized two-cavity/one-mechanical-mode model. All
/// rates share one unit; the conventional choice is kappa = 1 so that gamma,
/// delta, g1, g2 and every frequency below are expressed in cavity
/// linewidths.
struct SystemParams {
  double kappa = 1.0;       ///< cavity decay rate
  double gamma = 1e-3;      ///< mechanical decay rate
  double delta = 0.0;       ///< frequency mismatch between mechanics and mode splitting
  double g1 = 0.0;          ///< beam-splitter (microwave) coupling
  double g2 = 0.0;          ///< two-mode-squeezing (optical) coupling
  double n_b = 0.0;         ///< mechanical bath occupancy
  double n_plus_in = 0.0;   ///< microwave cavity input occupancy
  double n_minus_in = 0.0;  ///< optical cavity input occupancy

  double cooperativity1() const { return g1 * g1 / (kappa * gamma); }
  double cooperativity2() const { return g2 * g2 / (kappa * gamma); }
};

/// Target-detection scenario: reflectivity of the suspected object, thermal
/// brightness of the interrogated region, and the number of independent
/// signal-idler mode pairs integrated by the detector.
struct IlluminationParams {
  double eta = 0.0;           ///< target reflectivity, 0 <= eta < 1
  double n_background = 0.0;  ///< thermal occupancy of the interrogated region
  double m_pairs = 1.0;       ///< iid mode pairs, integer valued, >= 1
};

enum class Severity { Warning, Error };

struct Diagnostic {
  Severity severity;
  std::string field;
  std::string message;
};

/// Checks the type invariants. Errors name the offending field; a
/// cooperativity ordering C2 > C1 only produces a warning since the spectra
/// remain formally evaluable there.
std::vector<Diagnostic> validate(const SystemParams& params);
std::vector<Diagnostic> validate(const IlluminationParams& params);

/// Throws std::invalid_argument carrying the first error diagnostic.
void ensure_valid(const SystemParams& params);
void ensure_valid(const IlluminationParams& params);

/// Bose-Einstein occupancy 1/(exp(hbar*w/kB/T) - 1); zero at T = 0.
/// SI units (rad/s, K). Convenience only: figure defaults take the bath
/// occupancies directly as inputs.
double planck_occupation(double angular_frequency, double temperature);

/// g = sqrt(c * kappa * gamma); inverse of c = g^2/(kappa*gamma).
double coupling_from_cooperativity(double c, double kappa, double gamma);

/// True when every pole of the linearized dynamics lies in the decaying
/// half-plane, i.e. a stationary state exists. Exact two-root check of the
/// quadratic part of the response determinant.
bool is_dynamically_stable(const SystemParams& params);

}  // namespace qioms
