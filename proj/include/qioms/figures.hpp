#pragma once

#include <span>
#include <string>

#include "qioms/config.hpp"
#include "qioms/dataset.hpp"

namespace qioms {

/// Canned dataset generators reproducing the reference results:
///   fig2  spectra and entanglement across the two-peak band
///         (omega, n_plus, n_minus, e_n, e_n_over_n_plus)
///   fig3  figure of merit over the cooperativity plane at sigma = 0
///         (c1, c2, f_merit, n_plus_0, stable)
///   fig4  SNR and figure of merit versus bandwidth, zero vs optimal delay
///         (sigma, snr_td0, snr_topt, f_td0, f_topt)
///   fig5  error probabilities versus mode-pair count at sigma = kappa
///         (log10_m, p_qi, p_coh)
/// Sweep axes in `overrides`, when present, replace the default grids; all
/// other keys override the figure's caption defaults. Throws ConfigError for
/// an unknown figure id.
Dataset run_figure(const std::string& id,
                   const nlohmann::json& overrides = nlohmann::json::object());

/// Generic 1- or 2-axis sweep of the illumination report (plus n_plus_0 and
/// the stability flag) in deterministic axis-major row order.
Dataset run_sweep(const RunConfig& config);

/// Point evaluations for the CLI subcommands.
Dataset run_spectrum(const RunConfig& config, std::span<const double> omegas);
Dataset run_entanglement(const RunConfig& config, std::span<const double> omegas);
Dataset run_snr(const RunConfig& config);

/// Default configuration document (the documented defaults for every key).
nlohmann::json default_config_json();

/// Caption parameter defaults for a figure id, as a config patch.
nlohmann::json figure_defaults_json(const std::string& id);

}  // namespace qioms
