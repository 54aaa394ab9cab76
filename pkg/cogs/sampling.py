import logging
import math

from algorithms import edge_finder, empirical_distribution, total_variation
from core import (
    Cog,
    Context,
    DirectedEdge,
    DisconnectedError,
    Failure,
    SubgraphView,
    classical_st_connected,
    command,
    enumerate_st_paths,
    ledger_stats,
)
from core.graph import PATH_ENUMERATION_LIMIT
from families import resolve_instance
from flows import edge_distribution, effective_resistance, optimal_unit_flow

log = logging.getLogger(__name__)

DEFAULT_P = 0.05


def edge_label(edge: tuple[int, int]) -> str:
    return f"{edge[0]},{edge[1]}"


def path_edge_rate(view: SubgraphView, samples: list[DirectedEdge]) -> float | None:
    """Share of samples lying on some self-avoiding st-path; None for large graphs."""
    if not samples or len(view.parent.vertices) > PATH_ENUMERATION_LIMIT:
        return None
    on_path = set()
    for path in enumerate_st_paths(view):
        for u, v in zip(path, path[1:]):
            on_path |= {(u, v), (v, u)}
    return sum(edge in on_path for edge in samples) / len(samples)


class Sampling(Cog):
    """Batches of the quantum edge finder against the exact distribution q."""

    @command("sample-edge", randomized=True)
    def sample_edge(self, ctx: Context) -> int:
        """Sample st-path edges with the edge finder, --trials times."""
        instance = resolve_instance(ctx.config)
        view = instance.view()
        if not classical_st_connected(view, instance.s, instance.t):
            raise DisconnectedError(instance.s, instance.t)
        p = ctx.config.p or DEFAULT_P
        resistance = effective_resistance(view, instance.s, instance.t)
        q = edge_distribution(optimal_unit_flow(view), resistance).undirected()

        samples: list[DirectedEdge] = []
        ledgers = []
        failures = []
        for rng in ctx.trial_rngs():
            oracle = instance.oracle()
            result = edge_finder(
                oracle, p, instance.graph, instance.s, instance.t, rng, constants=ctx.constants
            )
            ledgers.append(oracle.ledger.snapshot())
            if isinstance(result, Failure):
                failures.append(result)
            else:
                samples.append(result)
        log.info("sample-edge: %d samples, %d failures", len(samples), len(failures))

        empirical = empirical_distribution(samples)
        payload = {
            "p": p,
            "trials": ctx.config.trials,
            "samples": len(samples),
            "failure_rate": len(failures) / ctx.config.trials,
            "empirical": {edge_label(e): value for e, value in empirical.items()},
            "q": {edge_label(e): value for e, value in sorted(q.items())},
            "tv": total_variation(empirical, q) if samples else None,
            "tv_bound": 3 * math.sqrt(p),
            "path_edge_rate": path_edge_rate(view, samples),
            "ledger": ledger_stats(ledgers),
        }
        if not samples:
            return ctx.failure("sample-edge", failures[-1], **payload)
        return ctx.success("sample-edge", **payload)


def setup(app):
    app.add_cog(Sampling(app))
