"""Path finders built on edge sampling and path detection."""
import logging
import math
from dataclasses import dataclass

import networkx as nx
import numpy as np

from core import (
    Constants,
    DirectedEdge,
    Edge,
    Failure,
    Graph,
    InputOracle,
    canonical,
    log2,
    remove_edges,
    remove_vertex,
)

from .edge_finder import edge_finder
from .subroutines import path_detection_stepper, run_lockstep, witness_size_est

__all__ = (
    "SinglePathParameters",
    "single_path_finder",
    "general_path_finder",
    "single_path_parameters",
)

log = logging.getLogger(__name__)


@dataclass
class _Budget:
    limit: int
    calls: int = 0


@dataclass(frozen=True)
class SinglePathParameters:
    eps1: float
    samples: int
    delta: float

    @property
    def eps2(self) -> float:
        return math.sqrt(self.eps1)

    @property
    def eps3(self) -> float:
        return 2 * math.sqrt(self.eps1)


def single_path_parameters(n: int, p: float) -> SinglePathParameters:
    """ε₁ = 1/log n, ℓ = ⌈2 log(n⁵/p)/ε₁⌉ and δ = p/(ℓn⁵)."""
    eps1 = 1 / log2(max(n, 2))
    samples = math.ceil(2 * log2(n**5 / p) / eps1)
    return SinglePathParameters(eps1, samples, p / (samples * n**5))


def _path_length(
    oracle: InputOracle,
    graph: Graph,
    s: int,
    t: int,
    eps: float,
    delta: float,
    rng: np.random.Generator,
    constants: Constants,
) -> float:
    if constants.length_source == "estimate":
        return witness_size_est(
            oracle, graph, s, t, eps, delta, rng, constants=constants, name="path_length"
        )
    try:
        return float(nx.shortest_path_length(oracle.view(graph).to_networkx(), s, t))
    except nx.NetworkXNoPath:
        return math.inf


def single_path_finder(
    oracle: InputOracle,
    p: float,
    graph: Graph,
    s: int,
    t: int,
    rng: np.random.Generator,
    *,
    constants: Constants = Constants(),
) -> frozenset[Edge] | Failure:
    """The edges of the unique st-path of G(x), with probability 1 − O(p).

    Recursion stops with Failure after 2n calls.
    """
    return _single(oracle, p, graph, s, t, rng, constants, _Budget(2 * graph.n))


def _single(
    oracle: InputOracle,
    p: float,
    graph: Graph,
    s: int,
    t: int,
    rng: np.random.Generator,
    constants: Constants,
    budget: _Budget,
) -> frozenset[Edge] | Failure:
    budget.calls += 1
    if budget.calls > budget.limit:
        log.warning("Single path finder hit its recursion cap of %d", budget.limit)
        return Failure(
            f"Recursion cap of {budget.limit} calls exceeded.", oracle.ledger.snapshot()
        )
    if s == t:
        return frozenset()
    if graph.has_edge(s, t) and oracle.query_edge(s, t, "single_path_finder"):
        return frozenset({canonical(s, t)})

    params = single_path_parameters(graph.n, p)
    candidates: set[DirectedEdge] = set()
    for _ in range(params.samples):
        edge = edge_finder(oracle, params.eps1, graph, s, t, rng, constants=constants)
        if isinstance(edge, Failure):
            continue
        if oracle.query_edge(*edge, "single_path_finder"):
            u, v = edge
            candidates |= {(u, v), (v, u)}
    if not candidates:
        return Failure(f"No present edge sampled between {s} and {t}.", oracle.ledger.snapshot())

    length = _path_length(oracle, graph, s, t, params.eps2, params.delta, rng, constants)
    pairs = sorted(candidates)
    steppers = []
    for u, v in pairs:
        minus = remove_edges(graph, [(u, v)])
        steppers.append(
            path_detection_stepper(oracle, minus, s, u, params.delta, rng, constants=constants)
        )
        steppers.append(
            path_detection_stepper(oracle, minus, v, t, params.delta, rng, constants=constants)
        )

    chosen: list[DirectedEdge] = []

    def judge(finished: list[int]) -> bool:
        # a pair is judged in the sweep where its second detector terminates
        for k in sorted({i // 2 for i in finished}):
            left, right = steppers[2 * k], steppers[2 * k + 1]
            if not (left.done and right.done and left.result and right.result):
                continue
            u, v = pairs[k]
            estimate = witness_size_est(
                oracle, graph, s, u, params.eps2, params.delta, rng, constants=constants
            )
            if abs(estimate - length / 2) <= params.eps3 * length:
                chosen.append((u, v))
                return True
        return False

    run_lockstep(steppers, judge)
    if not chosen:
        return Failure(
            f"No candidate edge between {s} and {t} passed the midpoint test.",
            oracle.ledger.snapshot(),
        )
    u, v = chosen[0]
    log.debug("Split %d~%d at edge (%d, %d)", s, t, u, v)
    left = _single(oracle, p, graph, s, u, rng, constants, budget)
    if isinstance(left, Failure):
        return left
    right = _single(oracle, p, graph, v, t, rng, constants, budget)
    if isinstance(right, Failure):
        return right
    return frozenset({canonical(u, v)}) | left | right


def general_path_finder(
    oracle: InputOracle,
    graph: Graph,
    s: int,
    t: int,
    p: float,
    rng: np.random.Generator,
    *,
    constants: Constants = Constants(),
) -> tuple[DirectedEdge, ...] | Failure:
    """The edges of some st-path of G(x) in walking order, with probability 1 − O(p).

    The first edge is found by bisecting the edges at s with pairs of path
    detectors; the rest by recursing on G⁻_s from its far end.
    """
    n = graph.n
    delta = p / (n**4 * max(log2(n), 1.0))
    path: list[DirectedEdge] = []
    current = s
    while current != t:
        at_current = [e for e in graph.edges if current in e]
        candidates = at_current
        while len(candidates) > 1:
            half = math.ceil(len(candidates) / 2)
            halves = (candidates[:half], candidates[half:])
            detectors = [
                path_detection_stepper(
                    oracle,
                    remove_edges(graph, [e for e in at_current if e not in part]),
                    current,
                    t,
                    delta,
                    rng,
                    constants=constants,
                )
                for part in halves
            ]
            run_lockstep(
                detectors, lambda finished: any(detectors[i].result for i in finished)
            )
            if detectors[0].result:
                candidates = halves[0]
            elif detectors[1].result:
                candidates = halves[1]
            else:
                return Failure(
                    f"Neither path detection call found a path from {current}.",
                    oracle.ledger.snapshot(),
                )
        if not candidates:
            return Failure(f"Vertex {current} has no edges left.", oracle.ledger.snapshot())
        a, b = candidates[0]
        step = b if a == current else a
        path.append((current, step))
        graph = remove_vertex(graph, current)
        current = step
    return tuple(path)
