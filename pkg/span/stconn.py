"""The st-connectivity span program P_Gst."""
import numpy as np

from core import EdgeAssociation, Graph, PreconditionError

from .program import SpanProgram, WitnessBounds

__all__ = ("build_stconn_program", "default_bounds_stconn", "directed_label")


def directed_label(u: int, v: int) -> str:
    return f"{u}->{v}"


def build_stconn_program(graph: Graph, assoc: EdgeAssociation) -> SpanProgram:
    """A|u,v⟩ = |u⟩ − |v⟩ over the directed edges, τ = |s⟩ − |t⟩.

    H_{i,1} spans both orientations of every edge in E_i; H_{i,0}, H_true and
    H_false are trivial.
    """
    arcs = graph.directed_edges
    A = np.zeros((graph.n, len(arcs)))
    for k, (u, v) in enumerate(arcs):
        A[u, k] += 1.0
        A[v, k] -= 1.0
    tau = np.zeros(graph.n)
    tau[graph.s] += 1.0
    tau[graph.t] -= 1.0
    position = {arc: k for k, arc in enumerate(arcs)}
    spaces = []
    for i in range(assoc.m):
        # edges removed from the parent keep their bit but have no basis vectors
        present = [(u, v) for u, v in assoc.edges_of(i) if (u, v) in position]
        spaces.append(
            ((), tuple(sorted(position[arc] for u, v in present for arc in ((u, v), (v, u)))))
        )
    return SpanProgram(
        A,
        tau,
        tuple(spaces),
        labels=tuple(directed_label(u, v) for u, v in arcs),
    )


def default_bounds_stconn(n: int, c_minus: float = 2.0) -> WitnessBounds:
    """W₊ = n/2 (since w₊ = R/2 ≤ (n−1)/2) and W̃₋ = c₋·n²."""
    if n < 2:
        raise PreconditionError("Witness bounds need at least two vertices.")
    return WitnessBounds(n / 2, c_minus * n * n)
