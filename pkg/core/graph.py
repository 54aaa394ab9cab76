import json
from dataclasses import dataclass, field, replace
from functools import cached_property
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import networkx as nx

from .utils import ConstructionError, SizeGuardError

__all__ = (
    "Edge",
    "DirectedEdge",
    "Graph",
    "EdgeAssociation",
    "SubgraphView",
    "GraphDocument",
    "canonical",
    "build_graph",
    "remove_vertex",
    "remove_edges",
    "subgraph",
    "classical_st_connected",
    "enumerate_st_paths",
    "is_walkable_path",
    "load_graph_json",
    "dump_graph_json",
)

Edge = tuple[int, int]
DirectedEdge = tuple[int, int]

PATH_ENUMERATION_LIMIT = 12


def canonical(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """An undirected parent graph G with distinguished vertices s and t.

    Vertex identifiers are stable: deleting a vertex isolates it and records
    it in `removed` instead of renumbering, so bit associations and directed
    edge labels survive every `remove_*` call.
    """

    n: int
    edges: tuple[Edge, ...]
    s: int
    t: int
    removed: frozenset[int] = frozenset()

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(v for v in range(self.n) if v not in self.removed)

    @property
    def directed_edges(self) -> tuple[DirectedEdge, ...]:
        """Directed basis order: by (min, max), the min-to-max orientation first."""
        return tuple(arc for u, v in self.edges for arc in ((u, v), (v, u)))

    def has_edge(self, u: int, v: int) -> bool:
        return canonical(u, v) in self._edge_set

    def neighbours(self, v: int) -> tuple[int, ...]:
        return tuple(
            sorted(b if a == v else a for a, b in self.edges if v in (a, b))
        )

    def with_terminals(self, s: int, t: int) -> "Graph":
        """Same graph with new terminals; s = t is allowed here (recursion base cases)."""
        for vertex in (s, t):
            if not 0 <= vertex < self.n:
                raise ConstructionError(f"Vertex {vertex} is out of range.")
        return replace(self, s=s, t=t)

    def to_networkx(self, edges: Iterable[Edge] | None = None) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(self.vertices)
        graph.add_edges_from(self.edges if edges is None else edges)
        return graph

    @cached_property
    def _edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)


@dataclass(frozen=True)
class EdgeAssociation:
    """Bit-to-edge association: edge e belongs to E_i when `bit_of(e) == i`."""

    m: int
    pairs: tuple[tuple[Edge, int], ...]

    @classmethod
    def singletons(cls, graph: Graph) -> "EdgeAssociation":
        return cls(len(graph.edges), tuple((e, i) for i, e in enumerate(graph.edges)))

    @classmethod
    def from_bits(
        cls, graph: Graph, bits: Sequence[int], m: int | None = None
    ) -> "EdgeAssociation":
        if len(bits) != len(graph.edges):
            raise ConstructionError(
                f"Expected {len(graph.edges)} bit labels, got {len(bits)}."
            )
        m = max(bits, default=-1) + 1 if m is None else m
        if any(not 0 <= bit < m for bit in bits):
            raise ConstructionError(f"Bit labels must lie in [0, {m}).")
        return cls(m, tuple(zip(graph.edges, bits)))

    @cached_property
    def mapping(self) -> Mapping[Edge, int]:
        return dict(self.pairs)

    def bit_of(self, u: int, v: int) -> int:
        return self.mapping[canonical(u, v)]

    def edges_of(self, i: int) -> tuple[Edge, ...]:
        return tuple(e for e, bit in self.pairs if bit == i)


@dataclass(frozen=True)
class SubgraphView:
    """G(x): the parent graph restricted to the edges present under x."""

    parent: Graph
    present: frozenset[Edge]

    @property
    def n(self) -> int:
        return self.parent.n

    @property
    def s(self) -> int:
        return self.parent.s

    @property
    def t(self) -> int:
        return self.parent.t

    @property
    def edges(self) -> tuple[Edge, ...]:
        return tuple(e for e in self.parent.edges if e in self.present)

    @property
    def directed_edges(self) -> tuple[DirectedEdge, ...]:
        return tuple(arc for u, v in self.edges for arc in ((u, v), (v, u)))

    def has_edge(self, u: int, v: int) -> bool:
        return canonical(u, v) in self.present

    def to_networkx(self) -> nx.Graph:
        return self.parent.to_networkx(self.edges)

    def with_terminals(self, s: int, t: int) -> "SubgraphView":
        return SubgraphView(self.parent.with_terminals(s, t), self.present)


@dataclass(frozen=True)
class GraphDocument:
    graph: Graph
    assoc: EdgeAssociation
    x: tuple[int, ...]
    free_ones: frozenset[int] = field(default_factory=frozenset)
    free_zeros: frozenset[int] = field(default_factory=frozenset)


def build_graph(
    n: int,
    edges: Iterable[Sequence[int]],
    s: int,
    t: int,
    *,
    allow_equal_terminals: bool = False,
) -> Graph:
    """Validate and canonicalise an undirected simple graph."""
    if n < 1:
        raise ConstructionError("A graph needs at least one vertex.")
    seen: set[Edge] = set()
    for pair in edges:
        u, v = int(pair[0]), int(pair[1])
        if not (0 <= u < n and 0 <= v < n):
            raise ConstructionError(f"Edge ({u}, {v}) has an endpoint outside [0, {n}).")
        if u == v:
            raise ConstructionError(f"Self-loop at vertex {u}.")
        if (edge := canonical(u, v)) in seen:
            raise ConstructionError(f"Duplicate edge {edge}.")
        seen.add(edge)
    for vertex in (s, t):
        if not 0 <= vertex < n:
            raise ConstructionError(f"Terminal {vertex} is outside [0, {n}).")
    if s == t and not allow_equal_terminals:
        raise ConstructionError("s and t must differ.")
    return Graph(n, tuple(sorted(seen)), s, t)


def remove_vertex(graph: Graph, u: int) -> Graph:
    """G⁻_u: every edge at u deleted, u marked removed."""
    if u in graph.removed or not 0 <= u < graph.n:
        raise ConstructionError(f"Vertex {u} is not in the graph.")
    return replace(
        graph,
        edges=tuple(e for e in graph.edges if u not in e),
        removed=graph.removed | {u},
    )


def remove_edges(graph: Graph, edges: Iterable[Sequence[int]]) -> Graph:
    """G⁻_S: the edges of S deleted, everything else untouched."""
    doomed = {canonical(int(e[0]), int(e[1])) for e in edges}
    if missing := doomed - set(graph.edges):
        raise ConstructionError(f"Edges {sorted(missing)} are not in the graph.")
    if not doomed:
        return graph
    return replace(graph, edges=tuple(e for e in graph.edges if e not in doomed))


def subgraph(graph: Graph, assoc: EdgeAssociation, x: Sequence[int]) -> SubgraphView:
    """G(x) from a full snapshot of x; trusted contexts only, never charged."""
    bits = assoc.mapping
    return SubgraphView(
        graph, frozenset(e for e in graph.edges if x[bits[e]] == 1)
    )


def classical_st_connected(view: SubgraphView, a: int, b: int) -> bool:
    if a == b:
        return True
    return nx.has_path(view.to_networkx(), a, b)


def enumerate_st_paths(view: SubgraphView) -> list[tuple[int, ...]]:
    """Every self-avoiding s→t path of G(x), as vertex sequences."""
    if (size := len(view.parent.vertices)) > PATH_ENUMERATION_LIMIT:
        raise SizeGuardError("Path enumeration", size, PATH_ENUMERATION_LIMIT)
    if view.s == view.t:
        return [(view.s,)]
    return sorted(
        tuple(path)
        for path in nx.all_simple_paths(view.to_networkx(), view.s, view.t)
    )


def _order_edges(s: int, t: int, edges: Iterable[Sequence[int]]) -> list[DirectedEdge] | None:
    pool = {canonical(int(e[0]), int(e[1])) for e in edges}
    ordered: list[DirectedEdge] = []
    current = s
    while pool:
        step = next((e for e in pool if current in e), None)
        if step is None:
            return None
        pool.remove(step)
        nxt = step[1] if step[0] == current else step[0]
        ordered.append((current, nxt))
        current = nxt
    return ordered if current == t else None


def is_walkable_path(
    view: SubgraphView, s: int, t: int, edges: Iterable[Sequence[int]]
) -> bool:
    """True when the edges form a distinct-vertex s→t path inside G(x).

    A sequence is checked in the given order; a set or frozenset of
    undirected edges is ordered by walking from s first.
    """
    if isinstance(edges, (set, frozenset)):
        ordered = _order_edges(s, t, edges)
        if ordered is None:
            return False
    else:
        ordered = [(int(u), int(v)) for u, v in edges]
    if not ordered:
        return s == t
    visited = [ordered[0][0]]
    for (u, v), following in zip(ordered, ordered[1:] + [None]):
        if not view.has_edge(u, v) or u != visited[-1]:
            return False
        visited.append(v)
        if following is not None and following[0] != v:
            return False
    return visited[0] == s and visited[-1] == t and len(set(visited)) == len(visited)


def load_graph_json(source: str | Path | Mapping) -> GraphDocument:
    """A graph document from JSON; a file may name the same vertex as s and t."""
    data = source if isinstance(source, Mapping) else json.loads(Path(source).read_text())
    try:
        n, s, t, rows = data["n"], data["s"], data["t"], data["edges"]
    except KeyError as error:
        raise ConstructionError(f"Graph JSON is missing the `{error.args[0]}` field.")
    graph = build_graph(n, [row[:2] for row in rows], s, t, allow_equal_terminals=True)
    bit_of = {
        canonical(row[0], row[1]): (row[2] if len(row) > 2 else i)
        for i, row in enumerate(rows)
    }
    bits = [bit_of[e] for e in graph.edges]
    if (raw := data.get("x")) is not None:
        x = tuple(int(c) for c in raw)
    else:
        x = (1,) * (max(bits, default=-1) + 1)
    assoc = EdgeAssociation.from_bits(graph, bits, m=len(x))
    return GraphDocument(
        graph,
        assoc,
        x,
        frozenset(data.get("free_ones", ())),
        frozenset(data.get("free_zeros", ())),
    )


def dump_graph_json(document: GraphDocument) -> dict:
    bits = document.assoc.mapping
    return {
        "n": document.graph.n,
        "s": document.graph.s,
        "t": document.graph.t,
        "edges": [[u, v, bits[(u, v)]] for u, v in document.graph.edges],
        "x": "".join(str(bit) for bit in document.x),
        "free_ones": sorted(document.free_ones),
        "free_zeros": sorted(document.free_zeros),
    }
