"""Photon-number simulation of a narrowband photonic teleportation relay.

The heavy lifting lives in the compiled extension; this package re-exports
its public surface.
"""

from telesim._core import (  # noqa: F401
    AnalysisBasis,
    BellOutcome,
    BsmRates,
    CorrectionUnitary,
    ExperimentConfig,
    HeraldStats,
    KappaCalibration,
    OracleEstimate,
    PhotonDistribution,
    PipelineResult,
    PolarizationQubit,
    TwoModeDistribution,
    Variant,
    VisibilityResult,
    analyzer_probability,
    apply_correction,
    apply_loss,
    apply_overlap,
    bell_decompose,
    click_probability,
    correction_for,
    dfg_efficiency,
    dual_click_probability,
    evaluate_pipeline,
    fidelity,
    herald_distribution,
    interfere_distinguishable,
    interfere_indistinguishable,
    laser_distribution,
    noise_to_signal,
    parse_config,
    polarization_scan_rate,
    psi_minus_reduced_state,
    qubit_budget,
    raman_noise_rate,
    run_oracle,
    spdc_distribution,
    split_balanced,
    threefold_fringe,
    visibility_ent,
    visibility_two_photon,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
