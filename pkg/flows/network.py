from dataclasses import dataclass

import networkx as nx
import numpy as np
import scipy.linalg

from core import DisconnectedError, SubgraphView

__all__ = ("Network", "PINV_RTOL", "multigraph_laplacian", "pseudoinverse")

PINV_RTOL = 1e-10


def multigraph_laplacian(n: int, edges) -> np.ndarray:
    """Dense D − A over vertices 0..n-1; repeated pairs add up."""
    graph = nx.MultiGraph()
    graph.add_nodes_from(range(n))
    graph.add_edges_from(edges)
    return nx.laplacian_matrix(graph, nodelist=list(range(n))).toarray().astype(float)


def pseudoinverse(laplacian: np.ndarray) -> np.ndarray:
    """L⁺ through the symmetric eigendecomposition, relative cutoff 1e-10."""
    if not laplacian.any():
        return np.zeros_like(laplacian, dtype=float)
    return scipy.linalg.pinvh(laplacian, rtol=PINV_RTOL)


@dataclass(frozen=True)
class Network:
    """A unit-resistance multigraph on vertices 0..n-1.

    `edges` may repeat a pair; edge i is oriented edges[i][0] -> edges[i][1].
    `labels[k]` is the original identifier of vertex k.
    """

    n: int
    edges: tuple[tuple[int, int], ...]
    s: int
    t: int
    labels: tuple[int, ...] = ()

    @classmethod
    def from_view(cls, view: SubgraphView) -> "Network":
        """G(x) without the vertices the parent graph has removed."""
        keep = view.parent.vertices
        index = {v: k for k, v in enumerate(keep)}
        return cls(
            len(keep),
            tuple((index[u], index[v]) for u, v in view.edges),
            index[view.s],
            index[view.t],
            keep,
        )

    @classmethod
    def component(cls, view: SubgraphView) -> "Network":
        """The connected component of G(x) holding s; t must be in it."""
        members = nx.node_connected_component(view.to_networkx(), view.s)
        if view.t not in members:
            raise DisconnectedError(view.s, view.t)
        keep = tuple(sorted(members))
        index = {v: k for k, v in enumerate(keep)}
        return cls(
            len(keep),
            tuple((index[u], index[v]) for u, v in view.edges if u in index),
            index[view.s],
            index[view.t],
            keep,
        )

    def vertex(self, label: int) -> int:
        return self.labels.index(label) if self.labels else label

    def edge_index(self, u: int, v: int) -> tuple[int, bool]:
        """Index of the first edge joining labels u and v, and whether u->v is its orientation."""
        a, b = self.vertex(u), self.vertex(v)
        for i, edge in enumerate(self.edges):
            if edge == (a, b):
                return i, True
            if edge == (b, a):
                return i, False
        raise KeyError((u, v))

    def laplacian(self) -> np.ndarray:
        return multigraph_laplacian(self.n, self.edges)

    def contract(self, a: int, b: int) -> "Network":
        """Identify vertex b with vertex a; loops vanish, parallel edges stay."""
        if a == b:
            return self

        def relabel(v: int) -> int:
            v = a if v == b else v
            return v - 1 if v > b else v

        edges = tuple(
            (relabel(u), relabel(v)) for u, v in self.edges if {u, v} != {a, b}
        )
        labels = tuple(l for k, l in enumerate(self.labels) if k != b)
        merged = relabel(a)
        return Network(self.n - 1, edges, merged, merged, labels)

    def potentials(self) -> np.ndarray:
        """φ = L⁺(e_s − e_t)."""
        source = np.zeros(self.n)
        source[self.s] += 1.0
        source[self.t] -= 1.0
        return pseudoinverse(self.laplacian()) @ source

    def currents(self) -> np.ndarray:
        """Electrical st-current along each edge's orientation."""
        phi = self.potentials()
        return np.array([phi[u] - phi[v] for u, v in self.edges])

    def resistance(self) -> float:
        phi = self.potentials()
        return float(phi[self.s] - phi[self.t])
