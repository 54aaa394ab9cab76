import logging
import math
from dataclasses import dataclass

import networkx as nx
import numpy as np

from core import Constants, Edge, Failure, Graph, InputOracle, PreconditionError, canonical
from flows import effective_resistance, optimal_unit_flow

from .edge_finder import measure_directed_edge, stconn_witness_state

__all__ = ("CutsetResult", "cutset_parameters", "cutset_finder", "check_cut_promise")

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class CutsetResult:
    edges: frozenset[Edge]
    rounds: int
    failures: int


def cutset_parameters(n: int, R_bound: float, g_bound: float) -> tuple[float, int]:
    """ε = g/(256R), so the off-witness mass stays below g/R, and T′ = ⌈100(R/g)(ln n + 1)⌉."""
    if R_bound <= 0 or g_bound <= 0:
        raise PreconditionError("The resistance and flow bounds must be positive.")
    eps = min(g_bound / (256 * R_bound), 0.5)
    rounds = math.ceil(100 * (R_bound / g_bound) * (math.log(n) + 1))
    return eps, rounds


def cutset_finder(
    oracle: InputOracle,
    graph: Graph,
    s: int,
    t: int,
    R_bound: float,
    g_bound: float,
    rng: np.random.Generator,
    *,
    constants: Constants = Constants(),
) -> CutsetResult:
    """Union of T′ sampled edges; contains every high-flow cut with probability ≥ 2/3."""
    graph = graph.with_terminals(s, t)
    eps, rounds = cutset_parameters(graph.n, R_bound, g_bound)
    edges: set[Edge] = set()
    failures = 0
    for _ in range(rounds):
        result = stconn_witness_state(
            oracle, graph, eps, 0.25, rng, constants=constants, charge_to="cutset_finder"
        )
        if isinstance(result, Failure):
            failures += 1
            continue
        edges.add(canonical(*measure_directed_edge(graph, result.state, rng)))
    log.debug("Cut-set finder: %d edges after %d rounds", len(edges), rounds)
    return CutsetResult(frozenset(edges), rounds, failures)


def check_cut_promise(
    oracle: InputOracle, graph: Graph, R_bound: float, g_bound: float
) -> dict:
    """Whether R_{s,t} ≤ R_bound and the edges with θ*² ≥ g_bound form an st-cut."""
    view = oracle.view(graph)
    resistance = effective_resistance(view, graph.s, graph.t)
    if math.isinf(resistance):
        return {"R": resistance, "resistance_ok": False, "cut_ok": False, "heavy_edges": []}
    flow = optimal_unit_flow(view)
    heavy = sorted(e for e in view.edges if flow(*e) ** 2 >= g_bound - 1e-12)
    remaining = view.to_networkx()
    remaining.remove_edges_from(heavy)
    return {
        "R": resistance,
        "resistance_ok": resistance <= R_bound + 1e-12,
        "cut_ok": not nx.has_path(remaining, graph.s, graph.t),
        "heavy_edges": heavy,
    }
