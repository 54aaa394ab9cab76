import logging
from typing import Callable, Sequence

import numpy as np

from algorithms import edge_finder, general_path_finder, single_path_finder
from core import (
    Cog,
    Constants,
    Context,
    Failure,
    InputOracle,
    PreconditionError,
    UsageError,
    command,
    list_items,
)
from families import FamilyInstance, resolve_instance

log = logging.getLogger(__name__)

DEFAULT_P = 0.05

Runner = Callable[[InputOracle, FamilyInstance, float, np.random.Generator, Constants], object]

ALGORITHMS: dict[str, Runner] = {
    "sample-edge": lambda oracle, inst, p, rng, c: edge_finder(
        oracle, p, inst.graph, inst.s, inst.t, rng, constants=c
    ),
    "find-path-single": lambda oracle, inst, p, rng, c: single_path_finder(
        oracle, p, inst.graph, inst.s, inst.t, rng, constants=c
    ),
    "find-path-general": lambda oracle, inst, p, rng, c: general_path_finder(
        oracle, inst.graph, inst.s, inst.t, p, rng, constants=c
    ),
}


def fit_loglog_slope(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Least-squares slope of log y against log x."""
    if len(xs) != len(ys) or len(xs) < 2:
        raise PreconditionError("A slope needs at least two (x, y) points.")
    if min(xs) <= 0 or min(ys) <= 0:
        raise PreconditionError("Log-log fits need positive values.")
    slope, _ = np.polyfit(np.log(xs), np.log(ys), 1)
    return float(slope)


class Bench(Cog):
    """Query-count scaling over a family parameter grid."""

    @command(randomized=True)
    def bench(self, ctx: Context) -> int:
        """Median ledger per grid point and the fitted log-log slope."""
        config = ctx.config
        if config.family is None:
            raise UsageError("bench generates its instances; use --family.")
        if len(config.grid) != 1:
            raise UsageError("bench sweeps exactly one parameter, e.g. --grid l=2,4,8,16.")
        if config.algorithm not in ALGORITHMS:
            raise UsageError(
                f"Unknown algorithm `{config.algorithm}`; "
                f"choose from {list_items(sorted(ALGORITHMS))}."
            )
        runner = ALGORITHMS[config.algorithm]
        ((name, values),) = config.grid.items()
        p = config.p or DEFAULT_P

        rows = []
        for value in values:
            instance = resolve_instance(config, **{name: value})
            totals, failures = [], 0
            for rng in ctx.trial_rngs():
                oracle = instance.oracle()
                if isinstance(runner(oracle, instance, p, rng, ctx.constants), Failure):
                    failures += 1
                totals.append(oracle.ledger.total)
            median = float(np.median(totals))
            log.info("bench %s=%s: median ledger %.1f", name, value, median)
            rows.append(
                {
                    name: value,
                    "n": instance.graph.n,
                    "R": instance.truth["R"],
                    "median_queries": median,
                    "failure_rate": failures / config.trials,
                }
            )
        slope = (
            fit_loglog_slope(values, [row["median_queries"] for row in rows])
            if len(rows) > 1
            else None
        )
        return ctx.success(
            "bench", algorithm=config.algorithm, parameter=name, p=p, rows=rows, slope=slope
        )


def setup(app):
    app.add_cog(Bench(app))
