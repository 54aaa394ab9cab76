"""The extended space H̃ = H ⊕ span{|0̂⟩} and the unitary U(P, x, α).

|0̂⟩ is basis index 0 of H̃; index k + 1 is basis vector k of H. Spectra
come from a complex Schur decomposition, which for the (normal) unitaries
built here is diagonal with orthonormal eigenvectors even on degenerate
eigenspaces.
"""
import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np
import scipy.linalg

from core import EdgeAssociation, Graph, NumericalError, PreconditionError
from span import (
    PositiveWitnessReport,
    SpanProgram,
    available_indices,
    build_stconn_program,
)

__all__ = (
    "ExtendedSpace",
    "ReflectionUnitary",
    "WitnessDecomposition",
    "ZERO_PHASE_TOLERANCE",
    "build_A_alpha",
    "kernel_projector",
    "extended_projector",
    "build_U",
    "stconn_reflection",
    "low_phase_projector",
    "spectral_decomposition",
    "witness_decomposition",
    "verify_effective_spectral_gap",
    "spectrum_dump",
)

log = logging.getLogger(__name__)

KERNEL_RTOL = 1e-10
UNITARITY_TOLERANCE = 1e-9
ZERO_PHASE_TOLERANCE = 1e-9


@dataclass(frozen=True)
class ExtendedSpace:
    dim_H: int
    zero_index: int = 0

    @property
    def dim(self) -> int:
        return self.dim_H + 1

    def zero(self) -> np.ndarray:
        vector = np.zeros(self.dim, dtype=complex)
        vector[self.zero_index] = 1.0
        return vector

    def embed(self, vector: np.ndarray) -> np.ndarray:
        """|v⟩ ∈ H as an element of H̃."""
        return np.concatenate(([0.0], vector)).astype(complex)

    def restrict(self, vector: np.ndarray) -> np.ndarray:
        """Drop the |0̂⟩ amplitude."""
        return vector[1:]


def build_A_alpha(program: SpanProgram, alpha: float) -> np.ndarray:
    """Ã_α = (1/α)|τ⟩⟨0̂| − A as a dim 𝒱 × dim H̃ matrix."""
    if not alpha > 0:
        raise PreconditionError(f"α must be positive, got {alpha}.")
    return np.hstack((program.tau[:, None] / alpha, -program.A))


def kernel_projector(A_alpha: np.ndarray) -> np.ndarray:
    """Λ_α, the orthogonal projector onto ker Ã_α."""
    if not A_alpha.any():
        return np.eye(A_alpha.shape[1])
    basis = scipy.linalg.null_space(A_alpha, rcond=KERNEL_RTOL)
    return basis @ basis.T


def extended_projector(program: SpanProgram, x: Sequence[int]) -> np.ndarray:
    """Π̃_x onto H̃(x) = H(x) ⊕ span{|0̂⟩}."""
    diagonal = np.zeros(program.dim_H + 1)
    diagonal[0] = 1.0
    diagonal[[index + 1 for index in available_indices(program, x)]] = 1.0
    return np.diag(diagonal)


def spectral_decomposition(U: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigenphases in (−π, π] and the matching orthonormal eigenvector columns."""
    T, Z = scipy.linalg.schur(U.astype(complex), output="complex")
    phases = np.angle(np.diag(T))
    # np.angle maps −1 to π already; this folds −π rounding noise back
    phases = np.where(phases <= -math.pi + 1e-12, math.pi, phases)
    return phases, Z


@dataclass(frozen=True, eq=False)
class ReflectionUnitary:
    """U(P, x, α) = (2Π̃_x − I)(2Λ_α − I) with its cached spectrum.

    One controlled application costs two oracle queries.
    """

    alpha: float
    U: np.ndarray
    Pi: np.ndarray
    Lambda: np.ndarray
    phases: np.ndarray
    vectors: np.ndarray

    QUERIES_PER_APPLICATION = 2

    @property
    def space(self) -> ExtendedSpace:
        return ExtendedSpace(self.U.shape[0] - 1)

    def coefficients(self, psi: np.ndarray) -> np.ndarray:
        """a_i = ⟨λ_i|ψ⟩."""
        return self.vectors.conj().T @ psi

    def reconstruct(self) -> np.ndarray:
        identity = np.eye(self.U.shape[0])
        return (2 * self.Pi - identity) @ (2 * self.Lambda - identity)


def _reflection(alpha: float, Pi: np.ndarray, Lambda: np.ndarray) -> ReflectionUnitary:
    identity = np.eye(Pi.shape[0])
    U = (2 * Pi - identity) @ (2 * Lambda - identity)
    if (drift := np.linalg.norm(U.conj().T @ U - identity)) > UNITARITY_TOLERANCE:
        raise NumericalError(f"U is not unitary (‖U†U − I‖ = {drift:.3e}).")
    phases, vectors = spectral_decomposition(U)
    return ReflectionUnitary(alpha, U, Pi, Lambda, phases, vectors)


def build_U(program: SpanProgram, x: Sequence[int], alpha: float) -> ReflectionUnitary:
    Lambda = kernel_projector(build_A_alpha(program, alpha))
    return _reflection(alpha, extended_projector(program, x), Lambda)


@lru_cache(maxsize=256)
def stconn_reflection(
    graph: Graph, assoc: EdgeAssociation, x: tuple[int, ...], alpha: float
) -> ReflectionUnitary:
    """build_U for P_Gst, memoised on the (hashable) instance."""
    log.debug("Building U for n=%d, |E|=%d, α=%.4g", graph.n, len(graph.edges), alpha)
    return build_U(build_stconn_program(graph, assoc), x, alpha)


def low_phase_projector(reflection: ReflectionUnitary, theta: float) -> np.ndarray:
    """P_Θ onto the eigenvectors with |φ| ≤ Θ."""
    if not 0 <= theta <= math.pi:
        raise PreconditionError(f"Θ must lie in [0, π], got {theta}.")
    keep = np.abs(reflection.phases) <= theta + ZERO_PHASE_TOLERANCE
    basis = reflection.vectors[:, keep]
    return basis @ basis.conj().T


@dataclass(frozen=True, eq=False)
class WitnessDecomposition:
    """|0̂⟩ = a0·ψ̃₊ + a_plus·ψ̃₋ with ψ̃₊ a 0-phase eigenvector of U."""

    psi_plus: np.ndarray
    psi_minus: np.ndarray
    a0: float
    a_plus: float


def witness_decomposition(
    positive: PositiveWitnessReport, alpha: float
) -> WitnessDecomposition:
    if not alpha > 0:
        raise PreconditionError(f"α must be positive, got {alpha}.")
    space = ExtendedSpace(len(positive.w))
    w = space.embed(positive.w)
    w_plus = positive.w_plus
    return WitnessDecomposition(
        psi_plus=space.zero() + w / alpha,
        psi_minus=space.zero() - (alpha / w_plus) * w,
        a0=1 / (1 + w_plus / alpha**2),
        a_plus=1 / (1 + alpha**2 / w_plus),
    )


def verify_effective_spectral_gap(
    Pi: np.ndarray, Lambda: np.ndarray, w: np.ndarray, theta: float
) -> bool:
    """‖P_Θ(U)Πw‖ ≤ (Θ/2)‖w‖ for U = (2Π − I)(2Λ − I), given Λw = 0."""
    if np.linalg.norm(Lambda @ w) > 1e-9 * max(1.0, np.linalg.norm(w)):
        raise PreconditionError("The effective spectral gap bound needs Λw = 0.")
    reflection = _reflection(0.0, Pi, Lambda)
    projected = low_phase_projector(reflection, theta) @ (Pi @ w)
    return bool(np.linalg.norm(projected) <= theta / 2 * np.linalg.norm(w) + 1e-9)


def spectrum_dump(reflection: ReflectionUnitary) -> list[list[float]]:
    """(eigenphase, |⟨0̂|λ⟩|²) pairs, sorted by phase."""
    weights = np.abs(reflection.vectors[0, :]) ** 2
    order = np.argsort(reflection.phases, kind="stable")
    return [[float(reflection.phases[i]), float(weights[i])] for i in order]
