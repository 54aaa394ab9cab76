import logging
from collections import Counter
from functools import lru_cache
from typing import Iterable, Mapping

import numpy as np

from core import (
    Constants,
    DirectedEdge,
    EdgeAssociation,
    Failure,
    Graph,
    InputOracle,
    PreconditionError,
    canonical,
)
from quantum import ReflectionUnitary, stconn_reflection
from span import SpanProgram, build_stconn_program, default_bounds_stconn

from .witness_generation import WitnessState, witness_generation

__all__ = (
    "stconn_program",
    "stconn_witness_state",
    "measure_directed_edge",
    "edge_finder",
    "empirical_distribution",
    "total_variation",
)

log = logging.getLogger(__name__)


@lru_cache(maxsize=256)
def stconn_program(graph: Graph, assoc: EdgeAssociation) -> SpanProgram:
    return build_stconn_program(graph, assoc)


def stconn_witness_state(
    oracle: InputOracle,
    graph: Graph,
    eps: float,
    delta: float,
    rng: np.random.Generator,
    *,
    constants: Constants = Constants(),
    charge_to: str = "witness_generation",
) -> WitnessState | Failure:
    """Witness generation for P_Gst on the oracle's input, reusing cached unitaries."""
    x = oracle.snapshot()

    def reflect(alpha: float) -> ReflectionUnitary:
        return stconn_reflection(graph, oracle.assoc, x, alpha)

    return witness_generation(
        stconn_program(graph, oracle.assoc),
        oracle,
        eps,
        delta,
        default_bounds_stconn(graph.n, constants.c_minus),
        rng,
        constants=constants,
        reflect=reflect,
        charge_to=charge_to,
    )


def measure_directed_edge(
    graph: Graph, state: np.ndarray, rng: np.random.Generator
) -> DirectedEdge:
    """Standard-basis measurement of a state over the directed edges."""
    weights = np.abs(state) ** 2
    index = int(rng.choice(len(weights), p=weights / weights.sum()))
    return graph.directed_edges[index]


def edge_finder(
    oracle: InputOracle,
    p: float,
    graph: Graph,
    s: int,
    t: int,
    rng: np.random.Generator,
    *,
    constants: Constants = Constants(),
) -> DirectedEdge | Failure:
    """An edge of G(x) sampled close to q, or Failure with probability O(p)."""
    if not 0 < p <= 1:
        raise PreconditionError(f"The failure tolerance must lie in (0, 1], got {p}.")
    if s == t:
        raise PreconditionError("Edge finding needs s ≠ t.")
    graph = graph.with_terminals(s, t)
    result = stconn_witness_state(
        oracle, graph, p * p, p, rng, constants=constants, charge_to="edge_finder"
    )
    if isinstance(result, Failure):
        return result
    return measure_directed_edge(graph, result.state, rng)


def empirical_distribution(samples: Iterable[DirectedEdge]) -> dict[tuple[int, int], float]:
    """Sample frequencies per undirected edge."""
    counts = Counter(canonical(u, v) for u, v in samples)
    total = sum(counts.values())
    return {edge: count / total for edge, count in sorted(counts.items())} if total else {}


def total_variation(
    empirical: Mapping[tuple[int, int], float], q: Mapping[tuple[int, int], float]
) -> float:
    support = set(empirical) | set(q)
    return 0.5 * sum(abs(empirical.get(e, 0.0) - q.get(e, 0.0)) for e in support)
