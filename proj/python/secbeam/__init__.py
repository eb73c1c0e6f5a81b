"""Secrecy rate regions for two-user collaborative relay beamforming.

The heavy lifting lives in the compiled extension; this package re-exports
its public surface.
"""

from secbeam._core import (  # noqa: F401
    BeamformingWeights,
    ChannelRealization,
    EigResult,
    EnsembleConfig,
    EnsembleSummary,
    FadingConfig,
    HighSnrGap,
    LowSnrSlopes,
    MeanFrontier,
    PencilSpec,
    ProtectedUser,
    RatePoint,
    RateUnit,
    RegionCurve,
    RegionSample,
    Scheme,
    achievable_rates,
    apply_first_hop_cap,
    brute_force_oracle,
    build_region,
    convex_hull_frontier,
    double_null_point,
    ensemble_config_from_json,
    ensemble_config_to_json,
    first_hop_capacity,
    high_snr_constants,
    high_snr_gap,
    lambda_max_difference,
    large_m_gap,
    low_snr_slopes,
    null_projector_apply,
    outer_bound_point,
    pareto_frontier,
    pencil_eigmax,
    rayleigh_quotient,
    realization_from_json,
    realization_to_json,
    region_contains,
    region_to_csv,
    run_ensemble,
    sample_channel,
    single_null_point,
    summary_to_json,
    tdma_point,
    uniform_alpha_grid,
)

__version__ = "0.1.0"
