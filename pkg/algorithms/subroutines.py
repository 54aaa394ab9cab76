"""Modelled PathDetection and WitnessSizeEst, and the lockstep scheduler.

Both subroutines are external algorithms whose input/output behaviour and
expected query cost are known; they are reproduced from the trusted ground
truth plus injected errors, and their cost is charged to the modeled column
of the ledger.
"""
import logging
import math
from dataclasses import dataclass, field
from typing import Any, Callable, Sequence

import numpy as np

from core import (
    Constants,
    Graph,
    InputOracle,
    PreconditionError,
    QueryLedger,
    classical_st_connected,
)
from flows import effective_resistance

__all__ = (
    "SteppedSubroutine",
    "path_detection_steps",
    "path_detection_stepper",
    "run_lockstep",
    "witness_size_cost",
    "witness_size_est",
    "coupon_expected_samples",
)

log = logging.getLogger(__name__)

# keeps ln(1/δ) finite when δ = 0
MIN_DELTA = 1e-300


@dataclass
class SteppedSubroutine:
    """A subroutine run one oracle query at a time.

    The outcome is fixed when it is created and revealed once every step has
    been taken. Steps after termination do nothing.
    """

    name: str
    total_steps: int
    outcome: Any
    ledger: QueryLedger | None = None
    charge_per_step: float = 1.0
    taken: int = field(default=0, init=False)

    @property
    def remaining(self) -> int:
        return self.total_steps - self.taken

    @property
    def done(self) -> bool:
        return self.taken >= self.total_steps

    @property
    def result(self) -> Any:
        """None while pending."""
        return self.outcome if self.done else None

    def advance(self, steps: int = 1) -> bool:
        steps = min(max(steps, 0), self.remaining)
        if steps:
            self.taken += steps
            if self.ledger is not None:
                self.ledger.charge_modeled(self.name, steps * self.charge_per_step)
        return self.done

    step = advance


def path_detection_steps(
    n: int, resistance: float, delta: float, connected: bool, c_pd: float
) -> int:
    delta = max(delta, MIN_DELTA)
    if not connected:
        return max(1, math.ceil(c_pd * n**1.5 * math.log(1 / delta)))
    if resistance <= 0:
        return 1
    return max(
        1,
        math.ceil(
            c_pd
            * n
            * math.sqrt(resistance)
            * math.log(max(math.e, n / (resistance * delta)))
        ),
    )


def path_detection_stepper(
    oracle: InputOracle,
    graph: Graph,
    a: int,
    b: int,
    delta: float,
    rng: np.random.Generator,
    *,
    constants: Constants = Constants(),
    name: str = "path_detection",
) -> SteppedSubroutine:
    """PathDetection(O_x, G′, a, b, δ): st-connectivity of a and b in G′(x)."""
    view = oracle.view(graph)
    connected = classical_st_connected(view, a, b)
    resistance = effective_resistance(view, a, b) if connected else math.inf
    flipped = bool(rng.random() < delta) and constants.inject_failures
    steps = path_detection_steps(
        max(len(graph.vertices), 1), resistance, delta, connected, constants.c_pd
    )
    if flipped:
        log.debug("PathDetection %d~%d answers wrongly", a, b)
    return SteppedSubroutine(name, steps, connected != flipped, oracle.ledger)


def run_lockstep(
    steppers: Sequence[SteppedSubroutine],
    on_sweep: Callable[[list[int]], bool] | None = None,
) -> int:
    """Round-robin the steppers, one query each per sweep, and return the sweeps used.

    After every sweep in which some stepper terminates, `on_sweep` receives
    the indices that terminated in it; returning True stops the schedule.
    Sweeps with no termination are skipped in one jump, which leaves every
    ledger charge unchanged.
    """
    sweeps = 0
    while active := [i for i, stepper in enumerate(steppers) if not stepper.done]:
        jump = min(steppers[i].remaining for i in active)
        for i in active:
            steppers[i].advance(jump)
        sweeps += jump
        finished = [i for i in active if steppers[i].done]
        if on_sweep is not None and on_sweep(finished):
            break
    return sweeps


def witness_size_cost(
    n: int, resistance: float, eps: float, delta: float, c_we: float
) -> int:
    log_term = math.log(1 / max(delta, MIN_DELTA))
    if math.isinf(resistance):
        return max(1, math.ceil(c_we * (n / eps) ** 1.5 * log_term))
    return max(1, math.ceil(c_we * math.sqrt(resistance * n * n / eps**3) * log_term))


def witness_size_est(
    oracle: InputOracle,
    graph: Graph,
    a: int,
    b: int,
    eps: float,
    delta: float,
    rng: np.random.Generator,
    *,
    constants: Constants = Constants(),
    name: str = "witness_size_est",
) -> float:
    """WitnessSizeEst: R_{a,b}(G(x)) within a factor 1 ± ε, except with probability δ."""
    view = oracle.view(graph)
    n = max(len(graph.vertices), 1)
    resistance = effective_resistance(view, a, b)
    oracle.ledger.charge_modeled(
        name, witness_size_cost(n, resistance, eps, delta, constants.c_we)
    )
    if constants.inject_failures and rng.random() < delta:
        return float(rng.uniform(0, n))
    if math.isinf(resistance):
        return math.inf
    return resistance * (1 + float(rng.uniform(-eps, eps)))


def coupon_expected_samples(B: float, c: int) -> float:
    """Σ_{j=1..c} 1/(jB): samples until c disjoint events of mass ≥ B are all hit."""
    if not 0 < B <= 1 or c < 1:
        raise PreconditionError("The coupon bound needs B in (0, 1] and c ≥ 1.")
    return sum(1 / (j * B) for j in range(1, c + 1))
