import logging

import networkx as nx
import numpy as np

from core import ConstructionError, canonical

from .instance import FamilyInstance, all_present, derive_seed

__all__ = ("gen_expander_bridge", "random_expander", "MAX_RESAMPLES")

log = logging.getLogger(__name__)

MAX_RESAMPLES = 1000


def random_expander(
    size: int, d: int, rng: np.random.Generator, threshold: float
) -> tuple[nx.Graph, float]:
    """A random d-regular graph, resampled until connected with algebraic
    connectivity at least `threshold`."""
    for attempt in range(1, MAX_RESAMPLES + 1):
        candidate = nx.random_regular_graph(d, size, seed=derive_seed(rng))
        if not nx.is_connected(candidate):
            continue
        gap = float(
            nx.algebraic_connectivity(candidate, method="tracemin_lu", seed=derive_seed(rng))
        )
        if gap >= threshold:
            log.debug("Expander on %d vertices after %d draw(s), gap %.4f", size, attempt, gap)
            return candidate, gap
    raise ConstructionError(
        f"No connected {d}-regular graph on {size} vertices reached "
        f"algebraic connectivity {threshold} in {MAX_RESAMPLES} draws."
    )


def gen_expander_bridge(
    n: int, d: int, seed: int, *, threshold: float = 0.2
) -> FamilyInstance:
    """Two d-regular expanders on n/2 vertices each, joined by one bridge.

    s is drawn from the first half (vertices 0 … n/2 − 1) and t from the
    second; the bridge endpoints are drawn uniformly from each half. The
    bridge carries the whole unit flow and is the only st-cut of one edge.
    """
    if n % 2 or n < 2:
        raise ConstructionError(f"n must be a positive even number, got {n}.")
    half = n // 2
    if d < 3 or d >= half or (d * half) % 2:
        raise ConstructionError(
            f"No {d}-regular graph on {half} vertices (need 3 ≤ d < n/2 and d·n/2 even)."
        )
    rng = np.random.default_rng(seed)
    left, left_gap = random_expander(half, d, rng, threshold)
    right, right_gap = random_expander(half, d, rng, threshold)
    s, a = (int(v) for v in rng.integers(0, half, size=2))
    t, b = (int(v) + half for v in rng.integers(0, half, size=2))
    bridge = canonical(a, b)
    edges = (
        list(left.edges)
        + [(u + half, v + half) for u, v in right.edges]
        + [bridge]
    )
    left_resistance = nx.resistance_distance(left, s, a) if s != a else 0.0
    right_resistance = nx.resistance_distance(right, b - half, t - half) if b != t else 0.0
    return all_present(
        "expander-bridge",
        n,
        edges,
        s,
        t,
        params={"n": n, "d": d, "seed": seed, "threshold": threshold},
        claims={"R": left_resistance + 1 + right_resistance, "theta": {(a, b): 1.0}},
        truth={
            "bridge": list(bridge),
            "cut": [list(bridge)],
            "algebraic_connectivity": [left_gap, right_gap],
        },
    )
