"""Witness state generation: the probing stage followed by the generation stage."""
import logging
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from core import (
    Constants,
    Failure,
    InputOracle,
    NotAOneInput,
    NumericalError,
    PreconditionError,
    log2,
)
from quantum import (
    PhaseEstimationModel,
    ReflectionUnitary,
    build_U,
    iqae_estimate,
    phase_estimation_run,
    zero_outcome_probability,
)
from span import SpanProgram, WitnessBounds, positive_witness

__all__ = (
    "WitnessState",
    "SIZE_ESTIMATE_ERROR",
    "ATTEMPT_SUCCESS",
    "generation_attempts",
    "probing_schedule",
    "witness_generation",
)

log = logging.getLogger(__name__)

SIZE_ESTIMATE_ERROR = 1 / 48
ATTEMPT_SUCCESS = 3 / 16
BREAK_WINDOW = (15 / 48, 35 / 48)
# Pr[zero] must land here whenever w₊/α² ∈ [1/2, 2]
GUARANTEED_WINDOW = (16 / 48, 33 / 48)


@dataclass(frozen=True, eq=False)
class WitnessState:
    """A normalised state over H with diagnostics from the run that made it.

    `a0` comes from the true witness size and is None when x is not a 1-input.
    """

    state: np.ndarray
    alpha: float
    a0: float | None
    iqae_failed: bool
    search_rounds: int
    attempts: int


def probing_schedule(
    eps: float, delta: float, bounds: WitnessBounds
) -> tuple[float, int, float]:
    """(ε′, T, p) of the probing stage."""
    product = bounds.W_plus * bounds.W_minus_tilde
    eps_prime = min(eps, 1 / 96)
    rounds = math.ceil(log2(math.sqrt(product)))
    p = min(delta / max(log2(product), 1.0), 1 / math.sqrt(product))
    return eps_prime, max(rounds, 0), p


def generation_attempts(delta: float) -> int:
    """⌈ln(1/δ)/ln(16/13)⌉: each attempt succeeds with probability at least 3/16."""
    return max(1, math.ceil(math.log(1 / delta) / -math.log1p(-ATTEMPT_SUCCESS)))


def witness_generation(
    program: SpanProgram,
    oracle: InputOracle,
    eps: float,
    delta: float,
    bounds: WitnessBounds,
    rng: np.random.Generator,
    *,
    constants: Constants = Constants(),
    reflect: Callable[[float], ReflectionUnitary] | None = None,
    charge_to: str = "witness_generation",
) -> WitnessState | Failure:
    """Approximate |w⟩/√w₊ for the optimal positive witness of x.

    `reflect(α)` supplies U(P, x, α); by default it is built from `program`
    and the oracle's input. Phase estimation is charged exactly, amplitude
    estimation as modeled cost.
    """
    if not 0 < eps < 1 or not 0 < delta <= 1:
        raise PreconditionError("Witness generation needs ε in (0, 1) and δ in (0, 1].")
    x = oracle.snapshot()
    if reflect is None:

        def reflect(alpha: float) -> ReflectionUnitary:
            return build_U(program, x, alpha)

    try:
        w_plus = positive_witness(program, x).w_plus
    except NotAOneInput:
        w_plus = None

    eps_prime, rounds, p = probing_schedule(eps, delta, bounds)
    ledger = oracle.ledger
    iqae_failed = False
    for i in range(rounds + 1):
        alpha = 2**i / math.sqrt(bounds.W_minus_tilde)
        reflection = reflect(alpha)
        theta = math.sqrt(eps_prime / (alpha**2 * bounds.W_minus_tilde))
        zero = reflection.space.zero()
        truth = zero_outcome_probability(reflection, zero, theta, eps_prime)
        if w_plus is not None and 0.5 <= w_plus / alpha**2 <= 2:
            low, high = GUARANTEED_WINDOW
            if not low - 1e-12 <= truth <= high + 1e-12:
                raise NumericalError(
                    f"Pr[zero] = {truth:.6f} at α = {alpha:.6g} is outside "
                    f"[16/48, 33/48] although w₊/α² = {w_plus / alpha**2:.4f}."
                )
        estimate = iqae_estimate(
            truth,
            SIZE_ESTIMATE_ERROR,
            p,
            rng,
            experiment_cost=PhaseEstimationModel.from_precision(theta, eps_prime).oracle_cost,
            c_iqae=constants.c_iqae,
            inject_failures=constants.inject_failures,
            ledger=ledger,
            charge_to="iqae",
        )
        iqae_failed |= estimate.failed
        if BREAK_WINDOW[0] <= estimate.estimate <= BREAK_WINDOW[1]:
            break
    else:
        log.warning("Probing stage ran out after %d rounds; keeping α = %.4g", rounds + 1, alpha)
    search_rounds = i + 1

    a0 = None if w_plus is None else 1 / (1 + w_plus / alpha**2)
    attempts = generation_attempts(delta)
    for attempt in range(1, attempts + 1):
        run = phase_estimation_run(
            reflection, zero, theta, eps_prime, rng, ledger, charge_to=charge_to
        )
        if run.outcome != "zero":
            continue
        body = reflection.space.restrict(run.state)
        if rng.random() < float(np.sum(np.abs(body) ** 2)):
            log.debug("Witness state after %d attempt(s) at α = %.4g", attempt, alpha)
            return WitnessState(
                body / np.linalg.norm(body), alpha, a0, iqae_failed, search_rounds, attempt
            )
    return Failure(
        f"No witness state after {attempts} attempt(s) at α = {alpha:.6g}.",
        ledger.snapshot(),
    )
