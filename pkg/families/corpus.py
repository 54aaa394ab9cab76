"""The exhaustive small-graph corpus used by `verify` and the test suite."""
from typing import Iterator

import networkx as nx

from core import Graph, SizeGuardError, build_graph

__all__ = ("CORPUS_LIMIT", "gen_corpus", "corpus_graphs")

# the networkx atlas stops at seven vertices
CORPUS_LIMIT = 7


def corpus_graphs(max_n: int) -> Iterator[nx.Graph]:
    """Every connected graph on 2 … max_n vertices, once up to isomorphism."""
    if max_n > CORPUS_LIMIT:
        raise SizeGuardError("The graph corpus", max_n, CORPUS_LIMIT)
    for atlas in nx.graph_atlas_g():
        if 2 <= atlas.number_of_nodes() <= max_n and nx.is_connected(atlas):
            yield atlas


def gen_corpus(max_n: int = CORPUS_LIMIT) -> Iterator[Graph]:
    """Each corpus graph once per unordered terminal pair {s, t}, s < t."""
    for atlas in corpus_graphs(max_n):
        n = atlas.number_of_nodes()
        edges = list(atlas.edges)
        for s in range(n):
            for t in range(s + 1, n):
                yield build_graph(n, edges, s, t)
