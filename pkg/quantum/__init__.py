from .estimation import (
    IQAEResult,
    PhaseEstimationModel,
    PhaseEstimationResult,
    beta_bound,
    iqae_cost,
    iqae_estimate,
    phase_estimation_run,
    sidelobe_peak,
    zero_outcome_probability,
)
from .reflection import (
    ExtendedSpace,
    ReflectionUnitary,
    WitnessDecomposition,
    build_A_alpha,
    build_U,
    extended_projector,
    kernel_projector,
    low_phase_projector,
    spectral_decomposition,
    spectrum_dump,
    stconn_reflection,
    verify_effective_spectral_gap,
    witness_decomposition,
)

__all__ = (
    "ExtendedSpace",
    "IQAEResult",
    "PhaseEstimationModel",
    "PhaseEstimationResult",
    "ReflectionUnitary",
    "WitnessDecomposition",
    "beta_bound",
    "build_A_alpha",
    "build_U",
    "extended_projector",
    "iqae_cost",
    "iqae_estimate",
    "kernel_projector",
    "low_phase_projector",
    "phase_estimation_run",
    "sidelobe_peak",
    "spectral_decomposition",
    "spectrum_dump",
    "stconn_reflection",
    "verify_effective_spectral_gap",
    "witness_decomposition",
    "zero_outcome_probability",
)
