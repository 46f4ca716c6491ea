#include "qioms/params.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace qioms {

namespace {

// CODATA 2018 exact values
constexpr double kHbar = 1.054571817e-34;  // J s
constexpr double kBoltzmann = 1.380649e-23;  // J/K

void require_finite(std::vector<Diagnostic>& out, const char* field, double value) {
  if (!std::isfinite(value)) {
    out.push_back({Severity::Error, field, std::string(field) + " must be finite"});
  }
}

void require_positive(std::vector<Diagnostic>& out, const char* field, double value) {
  require_finite(out, field, value);
  if (std::isfinite(value) && value <= 0.0) {
    out.push_back({Severity::Error, field, std::string(field) + " must be > 0"});
  }
}

void require_nonnegative(std::vector<Diagnostic>& out, const char* field, double value) {
  require_finite(out, field, value);
  if (std::isfinite(value) && value < 0.0) {
    out.push_back({Severity::Error, field, std::string(field) + " must be >= 0"});
  }
}

}  // namespace

std::vector<Diagnostic> validate(const SystemParams& p) {
  std::vector<Diagnostic> out;
  require_positive(out, "kappa", p.kappa);
  require_positive(out, "gamma", p.gamma);
  require_finite(out, "delta", p.delta);
  require_nonnegative(out, "g1", p.g1);
  require_nonnegative(out, "g2", p.g2);
  require_nonnegative(out, "n_b", p.n_b);
  require_nonnegative(out, "n_plus_in", p.n_plus_in);
  require_nonnegative(out, "n_minus_in", p.n_minus_in);
  if (out.empty() && p.cooperativity2() > p.cooperativity1()) {
    out.push_back({Severity::Warning, "g2",
                   "C2 > C1: outside the usual stability regime, stationary spectra may be "
                   "meaningless"});
  }
  return out;
}

std::vector<Diagnostic> validate(const IlluminationParams& p) {
  std::vector<Diagnostic> out;
  require_finite(out, "eta", p.eta);
  if (std::isfinite(p.eta) && (p.eta < 0.0 || p.eta >= 1.0)) {
    out.push_back({Severity::Error, "eta", "eta must satisfy 0 <= eta < 1"});
  }
  require_nonnegative(out, "n_B", p.n_background);
  require_finite(out, "m_pairs", p.m_pairs);
  if (std::isfinite(p.m_pairs) && (p.m_pairs < 1.0 || p.m_pairs != std::floor(p.m_pairs))) {
    out.push_back({Severity::Error, "m_pairs", "m_pairs must be an integer >= 1"});
  }
  return out;
}

namespace {

template <typename T>
void throw_on_error(const T& params) {
  for (const auto& d : validate(params)) {
    if (d.severity == Severity::Error) {
      throw std::invalid_argument("invalid parameter " + d.field + ": " + d.message);
    }
  }
}

}  // namespace

void ensure_valid(const SystemParams& p) { throw_on_error(p); }
void ensure_valid(const IlluminationParams& p) { throw_on_error(p); }

double planck_occupation(double angular_frequency, double temperature) {
  if (!(angular_frequency > 0.0)) {
    throw std::domain_error("planck_occupation: angular_frequency must be > 0");
  }
  if (temperature < 0.0) {
    throw std::domain_error("planck_occupation: temperature must be >= 0");
  }
  if (temperature == 0.0) return 0.0;
  const double x = kHbar * angular_frequency / (kBoltzmann * temperature);
  const double e = std::expm1(x);
  return std::isinf(e) ? 0.0 : 1.0 / e;
}

double coupling_from_cooperativity(double c, double kappa, double gamma) {
  if (c < 0.0) throw std::domain_error("coupling_from_cooperativity: c must be >= 0");
  return std::sqrt(c * kappa * gamma);
}

bool is_dynamically_stable(const SystemParams& p) {
  // Poles of the response are the roots of 4 z^2 - 2 z (kappa+gamma+2i delta)
  //  + kappa gamma + 2i kappa delta + g1^2 - g2^2 (z = i omega); the decaying
  // half-plane is Re z > 0.
  const std::complex<double> b(p.kappa + p.gamma, 2.0 * p.delta);
  const std::complex<double> c(p.kappa * p.gamma + p.g1 * p.g1 - p.g2 * p.g2,
                               2.0 * p.kappa * p.delta);
  const std::complex<double> disc = std::sqrt(b * b - 4.0 * c);
  const double re1 = (b + disc).real() / 4.0;
  const double re2 = (b - disc).real() / 4.0;
  return re1 > 0.0 && re2 > 0.0;
}

}  // namespace qioms
