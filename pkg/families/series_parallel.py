import logging

import numpy as np

from core import ConstructionError, NumericalError
from flows import (
    Term,
    leaf_count,
    random_term,
    series_parallel_probabilities,
    sp_compose,
    sp_dual,
    sp_realize,
    term_to_json,
)
from flows.trees import ENUMERATION_LIMIT

from .instance import TRUTH_TOLERANCE, FamilyInstance, all_present

__all__ = ("gen_series_parallel", "sp_instance", "MAX_RESAMPLES")

log = logging.getLogger(__name__)

MAX_RESAMPLES = 1000


def sp_instance(term: Term, *, params: dict | None = None) -> FamilyInstance:
    """The realised graph of a term with its dual and, when it is small enough
    to enumerate, the per-leaf product identity checked."""
    graph = sp_compose(term)
    truth: dict = {"term": term_to_json(term), "dual": term_to_json(sp_dual(term))}
    network = sp_realize(term)
    if network.n <= ENUMERATION_LIMIT:
        leaves = series_parallel_probabilities(term)
        for i, leaf in enumerate(leaves):
            if abs(leaf.q - leaf.p * leaf.p_cut) > TRUTH_TOLERANCE:
                raise NumericalError(f"q ≠ p·p′ on leaf {i}: {leaf.q} vs {leaf.p * leaf.p_cut}.")
            if abs(leaf.p_cut - leaf.p_dual) > TRUTH_TOLERANCE:
                raise NumericalError(f"The cut share of leaf {i} differs from its dual flow.")
        truth["leaves"] = [
            {"edge": list(network.edges[i]), "q": leaf.q, "p": leaf.p, "p_dual": leaf.p_dual}
            for i, leaf in enumerate(leaves)
        ]
    return all_present(
        "series-parallel",
        graph.n,
        graph.edges,
        graph.s,
        graph.t,
        params=params or {"leaves": leaf_count(term)},
        truth=truth,
    )


def gen_series_parallel(seed: int, leaves: int) -> FamilyInstance:
    """A random simple series-parallel graph with the given number of edges.

    Terms are drawn as random binary composition trees and redrawn while
    their realisation has parallel edges.
    """
    if leaves < 1:
        raise ConstructionError("A series-parallel term needs at least one leaf.")
    rng = np.random.default_rng(seed)
    for attempt in range(1, MAX_RESAMPLES + 1):
        term = random_term(rng, leaves)
        try:
            sp_compose(term)
        except ConstructionError:
            continue
        log.debug("Series-parallel term with %d leaves after %d draw(s)", leaves, attempt)
        return sp_instance(term, params={"seed": seed, "leaves": leaves})
    raise ConstructionError(
        f"No simple series-parallel graph with {leaves} edges in {MAX_RESAMPLES} draws."
    )
