"""Positive and approximate negative witnesses of a span program on an input x."""
import logging
from dataclasses import dataclass
from typing import Sequence

import numpy as np
import scipy.linalg

from core import IllPosedError, NotAOneInput

from .program import SpanProgram, projector_Hx

__all__ = (
    "RANK_RTOL",
    "PositiveWitnessReport",
    "NegativeWitnessReport",
    "positive_witness",
    "approx_negative_witness",
    "verify_inverse_witness",
    "witness_dump",
)

log = logging.getLogger(__name__)

RANK_RTOL = 1e-10
RESIDUAL_TOLERANCE = 1e-8


@dataclass(frozen=True, eq=False)
class PositiveWitnessReport:
    w: np.ndarray
    w_plus: float


@dataclass(frozen=True, eq=False)
class NegativeWitnessReport:
    omega: np.ndarray
    neg_error: float
    neg_size: float


def _pinv(matrix: np.ndarray) -> np.ndarray:
    if matrix.size == 0:
        return np.zeros(matrix.shape[::-1])
    return scipy.linalg.pinv(matrix, atol=0.0, rtol=RANK_RTOL)


def _null_space(matrix: np.ndarray) -> np.ndarray:
    if matrix.shape[1] == 0:
        return np.zeros((0, 0))
    if not matrix.any():
        return np.eye(matrix.shape[1])
    return scipy.linalg.null_space(matrix, rcond=RANK_RTOL)


def positive_witness(program: SpanProgram, x: Sequence[int]) -> PositiveWitnessReport:
    """The minimum-norm w ∈ H(x) with Aw = τ."""
    restricted = program.A @ projector_Hx(program, x)
    w = _pinv(restricted) @ program.tau
    residual = float(np.linalg.norm(program.A @ w - program.tau))
    if residual > RESIDUAL_TOLERANCE:
        raise NotAOneInput(residual)
    return PositiveWitnessReport(w, float(w @ w))


def approx_negative_witness(
    program: SpanProgram, x: Sequence[int]
) -> NegativeWitnessReport:
    """Lexicographic minimiser: first ‖ωAΠ_{H(x)}‖², then ‖ωA‖², over ⟨ω|τ⟩ = 1.

    The constraint set is parametrised as ω = ω₀ + Nz with ω₀ = τ/‖τ‖² and N
    an orthonormal basis of τ^⊥. Stage one fixes z up to null(D) with
    D = (AΠ)ᵀN; stage two re-minimises over that affine set.
    """
    tau = program.tau
    if not tau.any():
        raise IllPosedError("The target is zero, so no functional has ⟨ω|τ⟩ = 1.")
    restricted_t = (program.A @ projector_Hx(program, x)).T
    full_t = program.A.T
    omega0 = tau / (tau @ tau)
    N = _null_space(tau[None, :])

    D = restricted_t @ N
    z = -_pinv(D) @ (restricted_t @ omega0)
    K = _null_space(D)
    base = omega0 + N @ z
    if K.shape[1]:
        free = full_t @ N @ K
        y = -_pinv(free) @ (full_t @ base)
        omega = base + N @ (K @ y)
    else:
        omega = base

    neg_error = float(np.sum((restricted_t @ omega) ** 2))
    neg_size = float(np.sum((full_t @ omega) ** 2))
    log.debug("Negative witness: error %.3e, size %.3e", neg_error, neg_size)
    return NegativeWitnessReport(omega, neg_error, neg_size)


def verify_inverse_witness(program: SpanProgram, x: Sequence[int]) -> float:
    """‖w − w₊·Π_{H(x)}(ωA)†‖ for the optimal witnesses of a 1-input."""
    positive = positive_witness(program, x)
    negative = approx_negative_witness(program, x)
    rebuilt = positive.w_plus * projector_Hx(program, x) @ (program.A.T @ negative.omega)
    return float(np.linalg.norm(positive.w - rebuilt))


def witness_dump(program: SpanProgram, x: Sequence[int]) -> dict:
    labels = program.labels or tuple(str(i) for i in range(program.dim_H))
    negative = approx_negative_witness(program, x)
    report = {
        "basis": list(labels),
        "negative": {
            "omega": negative.omega.tolist(),
            "neg_error": negative.neg_error,
            "neg_size": negative.neg_size,
        },
        "positive": None,
    }
    try:
        positive = positive_witness(program, x)
    except NotAOneInput:
        return report
    report["positive"] = {
        "w": dict(zip(labels, positive.w.tolist())),
        "w_plus": positive.w_plus,
    }
    return report
