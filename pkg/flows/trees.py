"""Spanning-tree oracles for the optimal flow and its sampling distribution.

Counts are exact: the matrix-tree theorem for totals, backtracking
enumeration for anything that depends on the tree's st-path or on the cut
of a two-component forest. Enumeration is capped at ten vertices.
"""
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from core import SizeGuardError, SubgraphView, UnsupportedCaseError

from .network import Network

__all__ = (
    "TreePathCounts",
    "ForestCounts",
    "ENUMERATION_LIMIT",
    "spanning_tree_count",
    "network_tree_count",
    "spanning_trees",
    "tree_path_counts",
    "separating_forest_counts",
    "count_trees_using_directed_edge",
    "flow_via_trees",
    "q_via_trees",
    "count_separating_forests",
)

ENUMERATION_LIMIT = 10


@dataclass(frozen=True)
class TreePathCounts:
    """|𝒯|, and per edge the trees whose st-path crosses it forwards / backwards."""

    trees: int
    forward: np.ndarray
    backward: np.ndarray


@dataclass(frozen=True)
class ForestCounts:
    """Two-component st-separating forests, and per edge how many cut it."""

    total: int
    cutting: np.ndarray


def network_tree_count(network: Network) -> int:
    """Matrix-tree theorem with multiplicities; 0 when disconnected."""
    if network.n <= 1:
        return 1
    reduced = network.laplacian()[1:, 1:]
    return max(int(round(np.linalg.det(reduced))), 0)


def spanning_tree_count(graph: SubgraphView | Network) -> int:
    network = graph if isinstance(graph, Network) else Network.from_view(graph)
    return network_tree_count(network)


def _find(parent: list[int], v: int) -> int:
    while parent[v] != v:
        parent[v] = parent[parent[v]]
        v = parent[v]
    return v


def _acyclic_subsets(network: Network, size: int) -> Iterator[tuple[tuple[int, ...], list[int]]]:
    """Edge-index subsets of `size` edges with no cycle, with their union-find."""
    edges, m = network.edges, len(network.edges)

    def extend(start: int, chosen: list[int], parent: list[int]):
        if len(chosen) == size:
            yield tuple(chosen), parent
            return
        for i in range(start, m - (size - len(chosen)) + 1):
            u, v = edges[i]
            ru, rv = _find(parent, u), _find(parent, v)
            if ru == rv:
                continue
            joined = parent.copy()
            joined[ru] = rv
            chosen.append(i)
            yield from extend(i + 1, chosen, joined)
            chosen.pop()

    yield from extend(0, [], list(range(network.n)))


def _guard(network: Network) -> None:
    if network.n > ENUMERATION_LIMIT:
        raise SizeGuardError("Tree enumeration", network.n, ENUMERATION_LIMIT)


def spanning_trees(network: Network) -> Iterator[tuple[int, ...]]:
    _guard(network)
    if network.n == 1:
        yield ()
        return
    for tree, _ in _acyclic_subsets(network, network.n - 1):
        yield tree


def _tree_path(network: Network, tree: tuple[int, ...]) -> list[tuple[int, bool]]:
    """(edge index, traversed along its orientation) for the tree's s→t path."""
    adjacency: dict[int, list[tuple[int, int, bool]]] = {}
    for i in tree:
        u, v = network.edges[i]
        adjacency.setdefault(u, []).append((v, i, True))
        adjacency.setdefault(v, []).append((u, i, False))
    came_from: dict[int, tuple[int, int, bool]] = {network.s: (-1, -1, True)}
    stack = [network.s]
    while stack:
        vertex = stack.pop()
        for nxt, i, forward in adjacency.get(vertex, ()):
            if nxt not in came_from:
                came_from[nxt] = (vertex, i, forward)
                stack.append(nxt)
    path = []
    vertex = network.t
    while vertex != network.s:
        previous, i, forward = came_from[vertex]
        path.append((i, forward))
        vertex = previous
    return path[::-1]


def tree_path_counts(network: Network) -> TreePathCounts:
    forward = np.zeros(len(network.edges), dtype=np.int64)
    backward = np.zeros(len(network.edges), dtype=np.int64)
    trees = 0
    for tree in spanning_trees(network):
        trees += 1
        for i, along in _tree_path(network, tree):
            (forward if along else backward)[i] += 1
    return TreePathCounts(trees, forward, backward)


def separating_forest_counts(network: Network) -> ForestCounts:
    _guard(network)
    cutting = np.zeros(len(network.edges), dtype=np.int64)
    total = 0
    if network.n < 2:
        return ForestCounts(0, cutting)
    for _, parent in _acyclic_subsets(network, network.n - 2):
        roots = [_find(parent, v) for v in range(network.n)]
        if roots[network.s] == roots[network.t]:
            continue
        total += 1
        for i, (u, v) in enumerate(network.edges):
            if roots[u] != roots[v]:
                cutting[i] += 1
    return ForestCounts(total, cutting)


def _directed_counts(view: SubgraphView, u: int, v: int) -> tuple[TreePathCounts, int, int]:
    network = Network.component(view)
    counts = tree_path_counts(network)
    i, along = network.edge_index(u, v)
    forward, backward = int(counts.forward[i]), int(counts.backward[i])
    return counts, *((forward, backward) if along else (backward, forward))


def count_trees_using_directed_edge(view: SubgraphView, u: int, v: int) -> int:
    """|𝒩(u, v)|: spanning trees whose st-path runs through u then v."""
    _, along, _ = _directed_counts(view, u, v)
    return along


def flow_via_trees(view: SubgraphView, u: int, v: int) -> float:
    counts, along, against = _directed_counts(view, u, v)
    return (along - against) / counts.trees


def q_via_trees(view: SubgraphView, u: int, v: int) -> float:
    """Undirected q of {u, v} as (𝒩(u,v) − 𝒩(v,u))² / (|𝒯_G| · |𝒯_{G/st}|)."""
    if view.has_edge(view.s, view.t):
        raise UnsupportedCaseError(
            "The tree-ratio form of q needs {s, t} to be absent from G(x)."
        )
    network = Network.component(view)
    counts, along, against = _directed_counts(view, u, v)
    contracted = network_tree_count(network.contract(network.s, network.t))
    return (along - against) ** 2 / (counts.trees * contracted)


def count_separating_forests(view: SubgraphView, u: int, v: int) -> tuple[int, int]:
    """(forests whose st-cut contains {u, v}, all st-separating two-forests)."""
    network = Network.component(view)
    counts = separating_forest_counts(network)
    i, _ = network.edge_index(u, v)
    return int(counts.cutting[i]), counts.total
