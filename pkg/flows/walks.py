"""Random-walk estimate of the optimal flow.

A walker starts at s and is absorbed at t. If Z_{u,v} counts its u→v
crossings, then θ*(u, v) = E[Z_{u,v}] − E[Z_{v,u}]. Walkers are advanced
together as numpy arrays, one vector step per move.
"""
import math
from dataclasses import dataclass

import numpy as np

from core import DisconnectedError, SubgraphView, canonical, classical_st_connected

__all__ = ("FlowEstimate", "random_walk_flows", "random_walk_flow")


@dataclass(frozen=True)
class FlowEstimate:
    mean: float
    stderr: float
    trials: int

    def within(self, value: float, sigmas: float) -> bool:
        return abs(self.mean - value) <= sigmas * self.stderr + 1e-12


def random_walk_flows(
    view: SubgraphView, trials: int, seed: int
) -> dict[tuple[int, int], FlowEstimate]:
    """Crossing-difference estimates for every present edge, oriented min→max."""
    if not classical_st_connected(view, view.s, view.t):
        raise DisconnectedError(view.s, view.t)
    rng = np.random.default_rng(seed)
    edges = view.edges
    if view.s == view.t:
        return {e: FlowEstimate(0.0, 0.0, trials) for e in edges}

    degree = np.zeros(view.n, dtype=np.int64)
    for u, v in edges:
        degree[u] += 1
        degree[v] += 1
    width = max(int(degree.max()), 1)
    neighbour = np.zeros((view.n, width), dtype=np.int64)
    # edge id and sign of a step from row vertex to neighbour
    step_edge = np.zeros((view.n, width), dtype=np.int64)
    step_sign = np.zeros((view.n, width), dtype=np.int64)
    fill = np.zeros(view.n, dtype=np.int64)
    for k, (u, v) in enumerate(edges):
        for a, b, sign in ((u, v, 1), (v, u, -1)):
            neighbour[a, fill[a]] = b
            step_edge[a, fill[a]] = k
            step_sign[a, fill[a]] = sign
            fill[a] += 1

    crossings = np.zeros((trials, len(edges)), dtype=np.int64)
    position = np.full(trials, view.s, dtype=np.int64)
    active = np.arange(trials)
    while active.size:
        here = position[active]
        pick = (rng.random(active.size) * degree[here]).astype(np.int64)
        np.add.at(
            crossings, (active, step_edge[here, pick]), step_sign[here, pick]
        )
        position[active] = neighbour[here, pick]
        active = active[position[active] != view.t]

    means = crossings.mean(axis=0)
    spread = crossings.std(axis=0, ddof=1) if trials > 1 else np.zeros(len(edges))
    return {
        e: FlowEstimate(float(means[k]), float(spread[k] / math.sqrt(trials)), trials)
        for k, e in enumerate(edges)
    }


def random_walk_flow(
    view: SubgraphView, u: int, v: int, trials: int, seed: int
) -> FlowEstimate:
    estimate = random_walk_flows(view, trials, seed)[canonical(u, v)]
    if (u, v) == canonical(u, v):
        return estimate
    return FlowEstimate(-estimate.mean, estimate.stderr, trials)
