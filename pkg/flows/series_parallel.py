"""Series-parallel composition terms and their flow identities.

Leaves are numbered in depth-first order; that numbering is shared by a
term, its realisation and its dual, so leaf i of the dual is the dual edge
of leaf i. Realisations put s at vertex 0 and t at vertex 1.
"""
from dataclasses import dataclass
from typing import Union

import numpy as np

from core import ConstructionError, Graph, build_graph

from .network import Network
from .trees import separating_forest_counts, tree_path_counts

__all__ = (
    "Leaf",
    "Series",
    "Parallel",
    "Term",
    "LeafProbabilities",
    "leaf_count",
    "sp_realize",
    "sp_compose",
    "sp_dual",
    "sp_st_direction",
    "series_parallel_probabilities",
    "term_to_json",
    "random_term",
)


@dataclass(frozen=True)
class Leaf:
    pass


@dataclass(frozen=True)
class Series:
    parts: tuple["Term", ...]


@dataclass(frozen=True)
class Parallel:
    parts: tuple["Term", ...]


Term = Union[Leaf, Series, Parallel]


@dataclass(frozen=True)
class LeafProbabilities:
    """Per-leaf quantities of the series-parallel product identity.

    q: sampling probability θ*²/R; p: share of spanning trees whose st-path
    uses the leaf; p_cut: share of st-separating two-forests whose cut
    contains it; p_dual: |θ*| of the dual edge in the dual network.
    """

    q: float
    p: float
    p_cut: float
    p_dual: float


def _check(term: Term) -> None:
    if isinstance(term, Leaf):
        return
    if not isinstance(term, (Series, Parallel)) or len(term.parts) < 2:
        raise ConstructionError(
            "Series and parallel nodes need at least two parts."
        )
    for part in term.parts:
        _check(part)


def leaf_count(term: Term) -> int:
    if isinstance(term, Leaf):
        return 1
    return sum(leaf_count(part) for part in term.parts)


def sp_realize(term: Term) -> Network:
    """The multigraph of a term; edge i is leaf i oriented in its st-direction."""
    _check(term)
    arcs: list[tuple[int, int]] = []
    size = 2

    def build(node: Term, a: int, b: int) -> None:
        nonlocal size
        if isinstance(node, Leaf):
            arcs.append((a, b))
        elif isinstance(node, Parallel):
            for part in node.parts:
                build(part, a, b)
        else:
            joints = [a, *range(size, size + len(node.parts) - 1), b]
            size += len(node.parts) - 1
            for part, start, end in zip(node.parts, joints, joints[1:]):
                build(part, start, end)

    build(term, 0, 1)
    return Network(size, tuple(arcs), 0, 1)


def sp_compose(term: Term) -> Graph:
    """The realised simple graph; parallel leaves make a multigraph and are refused."""
    network = sp_realize(term)
    return build_graph(network.n, network.edges, network.s, network.t)


def sp_dual(term: Term) -> Term:
    if isinstance(term, Leaf):
        return term
    parts = tuple(sp_dual(part) for part in term.parts)
    return Parallel(parts) if isinstance(term, Series) else Series(parts)


def sp_st_direction(term: Term, edge: int | tuple[int, int]) -> tuple[int, int]:
    """The orientation every self-avoiding st-path uses on a leaf.

    `edge` is a leaf index, or an undirected pair of the simple realisation.
    """
    arcs = sp_realize(term).edges
    if isinstance(edge, int):
        return arcs[edge]
    u, v = edge
    for arc in arcs:
        if set(arc) == {u, v}:
            return arc
    raise ConstructionError(f"{edge} is not an edge of the realised graph.")


def series_parallel_probabilities(term: Term) -> list[LeafProbabilities]:
    network = sp_realize(term)
    dual = sp_realize(sp_dual(term))
    resistance = network.resistance()
    currents = network.currents()
    dual_currents = dual.currents()
    paths = tree_path_counts(network)
    forests = separating_forest_counts(network)
    return [
        LeafProbabilities(
            q=float(currents[i] ** 2 / resistance),
            p=float(paths.forward[i] - paths.backward[i]) / paths.trees,
            p_cut=float(forests.cutting[i]) / forests.total,
            p_dual=float(abs(dual_currents[i])),
        )
        for i in range(len(network.edges))
    ]


def term_to_json(term: Term) -> dict | str:
    if isinstance(term, Leaf):
        return "edge"
    kind = "series" if isinstance(term, Series) else "parallel"
    return {kind: [term_to_json(part) for part in term.parts]}


def random_term(rng: np.random.Generator, leaves: int) -> Term:
    """A random binary composition tree with the given number of leaves."""
    if leaves == 1:
        return Leaf()
    left = int(rng.integers(1, leaves))
    node = Series if rng.random() < 0.5 else Parallel
    return node((random_term(rng, left), random_term(rng, leaves - left)))
