"""Electrical quantities of G(x): Laplacian, effective resistance, optimal flow.

Every graph carries unit resistances. The optimal unit st-flow is the
electrical current θ*(u, v) = φ(u) − φ(v) for the potentials φ = L⁺(e_s − e_t),
and its energy ½ Σ θ*(e)² over directed edges is R_{s,t}.
"""
import math
from dataclasses import dataclass

import numpy as np

from core import (
    DirectedEdge,
    DisconnectedError,
    PreconditionError,
    SubgraphView,
    canonical,
    classical_st_connected,
)

from .network import multigraph_laplacian, pseudoinverse

__all__ = (
    "UnitFlow",
    "FlowDistribution",
    "graph_laplacian",
    "effective_resistance",
    "optimal_unit_flow",
    "edge_distribution",
    "edge_key",
    "flow_report",
)


def edge_key(u: int, v: int) -> str:
    """`min,max:dir`, dir 0 for the min-to-max orientation."""
    a, b = canonical(u, v)
    return f"{a},{b}:{0 if u == a else 1}"


@dataclass(frozen=True)
class UnitFlow:
    theta: dict[DirectedEdge, float]

    def __call__(self, u: int, v: int) -> float:
        return self.theta.get((u, v), 0.0)

    @property
    def energy(self) -> float:
        """J(θ) = ½ Σ_e θ(e)² over directed edges."""
        return 0.5 * sum(value**2 for value in self.theta.values())

    def net_outflow(self, vertex: int) -> float:
        return sum(value for (u, _), value in self.theta.items() if u == vertex)

    def violation(self, s: int, t: int, vertices: tuple[int, ...]) -> float:
        """Largest breach of antisymmetry, conservation or unit source strength."""
        worst = max(
            (abs(value + self(v, u)) for (u, v), value in self.theta.items()),
            default=0.0,
        )
        for vertex in vertices:
            expected = 1.0 if vertex == s else -1.0 if vertex == t else 0.0
            worst = max(worst, abs(self.net_outflow(vertex) - expected))
        return worst


@dataclass(frozen=True)
class FlowDistribution:
    q: dict[DirectedEdge, float]

    def undirected(self) -> dict[tuple[int, int], float]:
        merged: dict[tuple[int, int], float] = {}
        for (u, v), value in self.q.items():
            key = canonical(u, v)
            merged[key] = merged.get(key, 0.0) + value
        return merged

    @property
    def total(self) -> float:
        return sum(self.q.values())


def graph_laplacian(view: SubgraphView) -> np.ndarray:
    """L = D − A of G(x) over all n vertex identifiers."""
    return multigraph_laplacian(view.n, view.edges)


def _potentials(view: SubgraphView, a: int, b: int) -> np.ndarray:
    source = np.zeros(view.n)
    source[a] += 1.0
    source[b] -= 1.0
    return pseudoinverse(graph_laplacian(view)) @ source


def effective_resistance(view: SubgraphView, a: int, b: int) -> float:
    """R_{a,b}(G(x)); `math.inf` when a and b are disconnected."""
    if a == b:
        return 0.0
    if not classical_st_connected(view, a, b):
        return math.inf
    phi = _potentials(view, a, b)
    return float(phi[a] - phi[b])


def optimal_unit_flow(view: SubgraphView) -> UnitFlow:
    if not classical_st_connected(view, view.s, view.t):
        raise DisconnectedError(view.s, view.t)
    phi = _potentials(view, view.s, view.t)
    theta = {}
    for u, v in view.edges:
        theta[(u, v)] = float(phi[u] - phi[v])
        theta[(v, u)] = float(phi[v] - phi[u])
    return UnitFlow(theta)


def edge_distribution(flow: UnitFlow, resistance: float) -> FlowDistribution:
    """q(e) = θ(e)² / (2R) per directed edge."""
    if not resistance > 0:
        raise PreconditionError("The resistance must be positive.")
    return FlowDistribution(
        {arc: value**2 / (2 * resistance) for arc, value in flow.theta.items()}
    )


def flow_report(view: SubgraphView) -> dict:
    resistance = effective_resistance(view, view.s, view.t)
    if math.isinf(resistance):
        return {"theta": {}, "R": "inf", "q": {}}
    if view.s == view.t:
        return {"theta": {}, "R": 0.0, "q": {}}
    flow = optimal_unit_flow(view)
    distribution = edge_distribution(flow, resistance)
    return {
        "theta": {edge_key(*arc): value for arc, value in sorted(flow.theta.items())},
        "R": resistance,
        "q": {edge_key(*arc): value for arc, value in sorted(distribution.q.items())},
    }
