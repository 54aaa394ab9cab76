import math
from dataclasses import dataclass, field
from typing import Any, Iterable, Mapping, Sequence

import numpy as np

from core import (
    ConstructionError,
    Edge,
    EdgeAssociation,
    Graph,
    GraphDocument,
    InputOracle,
    NumericalError,
    QueryLedger,
    SubgraphView,
    build_graph,
    dump_graph_json,
)
from flows import effective_resistance, edge_key, optimal_unit_flow

__all__ = (
    "FamilyInstance",
    "TRUTH_TOLERANCE",
    "all_present",
    "derive_seed",
    "flow_truth",
    "path_truth",
)

TRUTH_TOLERANCE = 1e-9


def derive_seed(rng: np.random.Generator) -> int:
    """An int seed for libraries that take one, drawn from a numpy generator."""
    return int(rng.integers(2**32))


@dataclass(frozen=True, eq=False)
class FamilyInstance:
    """A generated graph, the hidden input selecting G(x), and the ground truth.

    `truth` is plain data; flow quantities in it have been recomputed by the
    flow engine before the instance is handed out.
    """

    family: str
    graph: Graph
    assoc: EdgeAssociation
    x: tuple[int, ...]
    free_ones: frozenset[int] = frozenset()
    free_zeros: frozenset[int] = frozenset()
    params: dict[str, Any] = field(default_factory=dict)
    truth: dict[str, Any] = field(default_factory=dict)

    @property
    def s(self) -> int:
        return self.graph.s

    @property
    def t(self) -> int:
        return self.graph.t

    @property
    def document(self) -> GraphDocument:
        return GraphDocument(self.graph, self.assoc, self.x, self.free_ones, self.free_zeros)

    def oracle(self, ledger: QueryLedger | None = None) -> InputOracle:
        return InputOracle(
            self.x,
            self.assoc,
            ledger,
            free_ones=self.free_ones,
            free_zeros=self.free_zeros,
        )

    def view(self) -> SubgraphView:
        return self.oracle().view(self.graph)

    def to_json(self) -> dict:
        return {
            **dump_graph_json(self.document),
            "family": self.family,
            "params": dict(self.params),
            "truth": self.truth,
        }


def flow_truth(view: SubgraphView, claims: Mapping[str, Any] | None = None) -> dict:
    """R and θ* of G(x), checked against whatever the generator claims.

    `claims` may hold "R" (a number) and "theta" (directed edge to value).
    """
    resistance = effective_resistance(view, view.s, view.t)
    truth: dict[str, Any] = {"R": resistance}
    if not math.isinf(resistance) and view.s != view.t:
        flow = optimal_unit_flow(view)
        truth["theta"] = {edge_key(*arc): value for arc, value in sorted(flow.theta.items())}
    else:
        flow = None
    claims = claims or {}
    if "R" in claims and not math.isclose(
        resistance, claims["R"], rel_tol=TRUTH_TOLERANCE, abs_tol=TRUTH_TOLERANCE
    ):
        raise NumericalError(
            f"Generated R = {claims['R']} but the flow engine computes {resistance}."
        )
    for (u, v), value in claims.get("theta", {}).items():
        if flow is None or abs(flow(u, v) - value) > TRUTH_TOLERANCE:
            raise NumericalError(f"θ*({u}, {v}) disagrees with the generated value {value}.")
    return truth


def all_present(
    family: str,
    n: int,
    edges: Iterable[Sequence[int]],
    s: int,
    t: int,
    *,
    params: Mapping[str, Any],
    claims: Mapping[str, Any] | None = None,
    truth: Mapping[str, Any] | None = None,
    parent: str = "realized",
) -> FamilyInstance:
    """An instance whose every generated edge is present.

    With `parent="complete"` the parent graph is K_n and the edges outside
    the family read as 0 under x.
    """
    present = build_graph(n, edges, s, t)
    if parent == "complete":
        graph = build_graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)], s, t)
    elif parent == "realized":
        graph = present
    else:
        raise ConstructionError(f"Unknown parent graph `{parent}`; use realized or complete.")
    assoc = EdgeAssociation.singletons(graph)
    chosen = set(present.edges)
    x = tuple(int(e in chosen) for e in graph.edges)
    instance = FamilyInstance(family, graph, assoc, x, params={**params, "parent": parent})
    instance.truth.update(flow_truth(instance.view(), claims))
    instance.truth.update(truth or {})
    return instance


def path_truth(edges: Iterable[Edge]) -> list[list[int]]:
    return [list(e) for e in sorted(edges)]
