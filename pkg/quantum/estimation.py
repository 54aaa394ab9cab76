"""Spectral models of phase estimation and iterative amplitude estimation.

Phase estimation D(U) runs r parallel b-bit estimators and reports "zero"
when every phase register reads 0. An eigenvector with phase φ survives one
estimator with amplitude A_b(φ) = 2^{-b} Σ_k e^{ikφ}, so the all-zero
outcome is an exact per-eigenvector filter and no ancilla register is ever
built.
"""
import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Literal

import numpy as np
import scipy.optimize

from core import PreconditionError, QueryLedger

from .reflection import ReflectionUnitary

__all__ = (
    "PhaseEstimationModel",
    "PhaseEstimationResult",
    "IQAEResult",
    "NORM_TOLERANCE",
    "beta_bound",
    "sidelobe_peak",
    "phase_estimation_run",
    "zero_outcome_probability",
    "iqae_cost",
    "iqae_estimate",
)

log = logging.getLogger(__name__)

NORM_TOLERANCE = 1e-9
BETA_MARGIN = 1e-9
PEAK_GRID = 257


def beta_bound(b: int, theta: float) -> float:
    """The closed-form cap 1/(2^b sin(Θ/2))² on sup_{φ ≥ Θ} |A_b(φ)|²."""
    return min(1.0, 1 / (2**b * math.sin(theta / 2)) ** 2)


@lru_cache(maxsize=1024)
def sidelobe_peak(b: int, theta: float) -> float:
    """sup over Θ ≤ φ ≤ π of |A_b(φ)|².

    |A_b(φ)|² = sin²(2^{b-1}φ) / (4^b sin²(φ/2)) repeats its numerator every
    2π/2^b while the denominator grows, so the sup lies within one period past Θ.
    """
    size = 2**b

    def power(phi: float) -> float:
        return (math.sin(size * phi / 2) / (size * math.sin(phi / 2))) ** 2

    grid = np.linspace(theta, min(math.pi, theta + 2 * math.pi / size), PEAK_GRID)
    values = (np.sin(size * grid / 2) / (size * np.sin(grid / 2))) ** 2
    k = int(np.argmax(values))
    refined = scipy.optimize.minimize_scalar(
        lambda phi: -power(phi),
        bounds=(grid[max(k - 1, 0)], grid[min(k + 1, PEAK_GRID - 1)]),
        method="bounded",
        options={"xatol": 1e-15},
    )
    return max(float(values[k]), -float(refined.fun))


@dataclass(frozen=True)
class PhaseEstimationModel:
    """Precision Θ, accuracy ε, bits b and repetitions r of D(U).

    β is the largest all-zero probability of one estimator on a phase outside Θ.
    """

    theta: float
    eps: float
    b: int
    r: int
    beta: float

    @classmethod
    def from_precision(cls, theta: float, eps: float) -> "PhaseEstimationModel":
        """b = ⌈log₂(2π/Θ)⌉ + 1 and r = ⌈ln(1/ε)/ln(1/β)⌉."""
        if not 0 < theta <= math.pi:
            raise PreconditionError(f"The precision must lie in (0, π], got {theta}.")
        if not 0 < eps < 1:
            raise PreconditionError(f"The accuracy must lie in (0, 1), got {eps}.")
        b = math.ceil(math.log2(2 * math.pi / theta)) + 1
        beta = min(sidelobe_peak(b, theta) * (1 + BETA_MARGIN), beta_bound(b, theta))
        r = max(1, math.ceil(math.log(1 / eps) / math.log(1 / beta)))
        return cls(theta, eps, b, r, beta)

    @property
    def size(self) -> int:
        return 2**self.b

    @property
    def applications(self) -> int:
        """Controlled-U applications: 2^b − 1 per estimator."""
        return self.r * (self.size - 1)

    @property
    def oracle_cost(self) -> int:
        return ReflectionUnitary.QUERIES_PER_APPLICATION * self.applications

    def amplitude(self, phases: np.ndarray) -> np.ndarray:
        """A_b(φ), with the φ → 0 limit 1."""
        phases = np.asarray(phases, dtype=float)
        N = self.size
        half = np.sin(phases / 2)
        small = np.abs(half) < 1e-15
        ratio = np.sin(N * phases / 2) / (N * np.where(small, 1.0, half))
        magnitude = np.where(small, 1.0, ratio)
        return np.exp(0.5j * phases * (N - 1)) * magnitude

    def filter(self, phases: np.ndarray) -> np.ndarray:
        """A_b(φ)^r, the all-zero amplitude of r parallel estimators."""
        return self.amplitude(phases) ** self.r


@dataclass(frozen=True, eq=False)
class PhaseEstimationResult:
    outcome: Literal["zero", "nonzero"]
    state: np.ndarray | None
    oracle_cost: int
    probability: float


def _check_state(psi: np.ndarray) -> None:
    if abs(np.linalg.norm(psi) - 1) > NORM_TOLERANCE:
        raise PreconditionError(
            f"Phase estimation needs a normalised state, ‖ψ‖ = {np.linalg.norm(psi):.6g}."
        )


def zero_outcome_probability(
    reflection: ReflectionUnitary, psi: np.ndarray, theta: float, eps: float
) -> float | np.ndarray:
    """Σ |a_i|² |A_b(φ_i)|^{2r} for ψ = Σ a_i |λ_i⟩; charges nothing.

    A 2-D `psi` holds one state per column and gives one probability each.
    """
    model = PhaseEstimationModel.from_precision(theta, eps)
    weights = np.abs(reflection.coefficients(psi)) ** 2
    probability = np.abs(model.filter(reflection.phases)) ** 2 @ weights
    return float(probability) if np.ndim(probability) == 0 else probability


def phase_estimation_run(
    reflection: ReflectionUnitary,
    psi: np.ndarray,
    theta: float,
    eps: float,
    rng: np.random.Generator,
    ledger: QueryLedger | None = None,
    charge_to: str = "phase_estimation",
) -> PhaseEstimationResult:
    """One run of D(U) on ψ followed by a measurement of the phase registers.

    On "zero" the returned state is Σ a_i A_b(φ_i)^r |λ_i⟩, normalised; the
    state after a nonzero reading is not modelled.
    """
    _check_state(psi)
    model = PhaseEstimationModel.from_precision(theta, eps)
    if ledger is not None:
        ledger.charge_unitary(charge_to, model.applications)
    amplitudes = reflection.coefficients(psi) * model.filter(reflection.phases)
    probability = float(np.sum(np.abs(amplitudes) ** 2))
    if rng.random() >= probability:
        return PhaseEstimationResult("nonzero", None, model.oracle_cost, probability)
    state = reflection.vectors @ amplitudes
    return PhaseEstimationResult(
        "zero", state / np.linalg.norm(state), model.oracle_cost, probability
    )


@dataclass(frozen=True)
class IQAEResult:
    estimate: float
    oracle_cost: float
    failed: bool


def iqae_cost(a: float, p: float, experiment_cost: float, c_iqae: float) -> float:
    """⌈(C/a)·ln(max(e, (1/p)·ln(1/a)))⌉ experiments, times the cost of one."""
    repetitions = math.ceil(c_iqae / a * math.log(max(math.e, math.log(1 / a) / p)))
    return repetitions * experiment_cost


def iqae_estimate(
    truth: float,
    a: float,
    p: float,
    rng: np.random.Generator,
    *,
    experiment_cost: float,
    c_iqae: float = 10.0,
    inject_failures: bool = True,
    ledger: QueryLedger | None = None,
    charge_to: str = "iqae",
) -> IQAEResult:
    """Modelled iterative amplitude estimation of a known success probability.

    With probability p (only when failures are injected) the estimate is an
    arbitrary value in [0, 1]; otherwise it lies within a of the truth.
    """
    if not 0 < a < 1:
        raise PreconditionError(f"The additive error must lie in (0, 1), got {a}.")
    if not 0 < p <= 1:
        raise PreconditionError(f"The failure probability must lie in (0, 1], got {p}.")
    cost = iqae_cost(a, p, experiment_cost, c_iqae)
    if ledger is not None:
        ledger.charge_modeled(charge_to, cost)
    failed = inject_failures and bool(rng.random() < p)
    if failed:
        estimate = float(rng.uniform(0.0, 1.0))
        log.debug("Amplitude estimation failed, returning %.4f", estimate)
    else:
        estimate = float(np.clip(truth + rng.uniform(-a, a), 0.0, 1.0))
    return IQAEResult(estimate, cost, failed)
