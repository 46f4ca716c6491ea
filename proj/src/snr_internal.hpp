#pragma once

// Shared between illumination.cpp and delay.cpp: the delay scan re-evaluates
// only the correlator, so the band moments are computed once and reused.

#include "qioms/filters.hpp"
#include "qioms/illumination.hpp"
#include "qioms/params.hpp"

namespace qioms::detail {

struct SnrMoments {
  double v11 = 0.0;   // filtered transmitter microwave photon number
  double v33 = 0.0;   // filtered idler photon number
  double m_h0 = 0.0;  // receiver output moment, target absent
  double m_h1 = 0.0;  // receiver output moment, target present
};

double receiver_density(const SystemParams& params, const IlluminationParams& illum,
                        Hypothesis hyp, double omega);

SnrMoments snr_moments(const SystemParams& params, const IlluminationParams& illum,
                       const FilterSpec& spec, double tol);

double assemble_snr(const IlluminationParams& illum, const SnrMoments& m, cplx corr);

}  // namespace qioms::detail
