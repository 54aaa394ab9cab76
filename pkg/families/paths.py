"""Path-shaped families: a single path, parallel paths, and a path among clutter."""
import logging
from typing import Sequence

import networkx as nx
import numpy as np

from core import ConstructionError, canonical

from .instance import FamilyInstance, all_present, derive_seed, path_truth

__all__ = ("gen_path", "gen_parallel_paths", "gen_unique_path_clutter")

log = logging.getLogger(__name__)


def gen_path(L: int, n: int | None = None, *, parent: str = "realized") -> FamilyInstance:
    """s = 0, t = L, joined by a path of length L; vertices past L are isolated."""
    if L < 1:
        raise ConstructionError("A path needs length at least 1.")
    n = L + 1 if n is None else n
    if n < L + 1:
        raise ConstructionError(f"A path of length {L} needs {L + 1} vertices, got n = {n}.")
    edges = [(i, i + 1) for i in range(L)]
    return all_present(
        "path",
        n,
        edges,
        0,
        L,
        params={"L": L, "n": n},
        claims={"R": L, "theta": {edge: 1.0 for edge in edges}},
        truth={"path": path_truth(edges), "unique_path": True},
        parent=parent,
    )


def gen_parallel_paths(lengths: Sequence[int], *, parent: str = "realized") -> FamilyInstance:
    """Internally disjoint paths between s = 0 and t = 1.

    A path of length ℓ carries flow R/ℓ on each edge and so receives
    sampling mass R/ℓ in total.
    """
    lengths = [int(length) for length in lengths]
    if not lengths:
        raise ConstructionError("Give at least one path length.")
    if any(length < 1 for length in lengths):
        raise ConstructionError("Path lengths must be at least 1.")
    if lengths.count(1) > 1:
        raise ConstructionError("Only one path may be the direct edge {s, t}.")
    edges = []
    paths = []
    size = 2
    for length in lengths:
        inner = list(range(size, size + length - 1))
        size += length - 1
        route = [0, *inner, 1]
        path = list(zip(route, route[1:]))
        edges.extend(path)
        paths.append(path)
    resistance = 1 / sum(1 / length for length in lengths)
    theta = {arc: resistance / length for length, path in zip(lengths, paths) for arc in path}
    return all_present(
        "parallel-paths",
        size,
        edges,
        0,
        1,
        params={"lengths": lengths},
        claims={"R": resistance, "theta": theta},
        truth={
            "paths": [path_truth(canonical(*arc) for arc in path) for path in paths],
            "path_mass": [resistance / length for length in lengths],
            "unique_path": len(lengths) == 1,
        },
        parent=parent,
    )


def gen_unique_path_clutter(
    L: int, n: int, seed: int, *, density: float = 0.5, parent: str = "realized"
) -> FamilyInstance:
    """A path s = 0 … t = L, with the other vertices forming random distractor
    components that never touch it."""
    if L < 1:
        raise ConstructionError("A path needs length at least 1.")
    if n < L + 1:
        raise ConstructionError(f"A path of length {L} needs {L + 1} vertices, got n = {n}.")
    rng = np.random.default_rng(seed)
    path = [(i, i + 1) for i in range(L)]
    spare = n - L - 1
    clutter = nx.gnp_random_graph(spare, density, seed=derive_seed(rng))
    offset = L + 1
    distractors = [(u + offset, v + offset) for u, v in clutter.edges]
    log.debug("Clutter: %d distractor edges on %d spare vertices", len(distractors), spare)
    return all_present(
        "unique-path-clutter",
        n,
        path + distractors,
        0,
        L,
        params={"L": L, "n": n, "seed": seed, "density": density},
        claims={"R": L, "theta": {edge: 1.0 for edge in path}},
        truth={"path": path_truth(path), "unique_path": True},
        parent=parent,
    )
