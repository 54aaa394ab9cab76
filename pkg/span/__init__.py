from .program import SpanProgram, WitnessBounds, available_indices, projector_Hx
from .stconn import build_stconn_program, default_bounds_stconn, directed_label
from .witness import (
    NegativeWitnessReport,
    PositiveWitnessReport,
    approx_negative_witness,
    positive_witness,
    verify_inverse_witness,
    witness_dump,
)

__all__ = (
    "NegativeWitnessReport",
    "PositiveWitnessReport",
    "SpanProgram",
    "WitnessBounds",
    "approx_negative_witness",
    "available_indices",
    "build_stconn_program",
    "default_bounds_stconn",
    "directed_label",
    "positive_witness",
    "projector_Hx",
    "verify_inverse_witness",
    "witness_dump",
)
