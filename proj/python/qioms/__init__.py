"""Optomechanical microwave quantum illumination model.

Thin python surface over the compiled core: system/illumination parameters,
output spectra, filtered covariances, logarithmic negativity, the
photon-difference receiver SNR chain, delay optimization, and the canned
dataset generators.
"""

from ._qioms import (
    AccuracyError,
    ConfigError,
    CovarianceMatrix,
    DelayResult,
    EntanglementPoint,
    FilterSpec,
    GridOptimum,
    Hypothesis,
    IlluminationParams,
    IlluminationReport,
    ScanSpec,
    ScatteringCoefficients,
    SingularityError,
    SpectralPoint,
    SystemParams,
    UnsupportedConfigurationError,
    __version__,
    closed_form_spectra,
    coupling_from_cooperativity,
    en_spectrum,
    error_probability,
    figure_of_merit,
    filter_amplitude,
    is_dynamically_stable,
    log_negativity,
    mean_photon_difference,
    optimal_delay_analytic,
    optimal_delay_numeric,
    output_spectra,
    phase_derivative_check,
    planck_occupation,
    project_covariance,
    pt_symplectic_eigenvalue,
    receiver_output_moment,
    run_figure,
    run_sweep,
    scattering_coefficients,
    snr_coherent,
    snr_qi,
    validate,
    delay_report,
)

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]
