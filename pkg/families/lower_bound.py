"""The hard instances behind the classical lower bound for path-edge finding.

For an odd ℓ and a hidden index σ* ∈ {0,1}^ℓ, s reaches two hubs through
arms of length (L−3)/2, one hub per branch b, and so does t. Each hub fans
out to 2^((ℓ−1)/2) vertices. Between the fans of branch b sit the 2^(ℓ−1)
potential middle edges u_{b,σ}–v_{b,σ′}, edge u_{b,σ}–v_{b,σ′} being read
by bit x_{bσσ′}. Exactly one of them, x_{σ*}, is present, which leaves a
single st-path of length L. Every edge of the path lies on branch σ*₁, so
any correct path edge gives the first bit away.
"""
import logging
from typing import Sequence

from core import ConstructionError, DirectedEdge, EdgeAssociation, build_graph, canonical

from .instance import FamilyInstance, flow_truth, path_truth

__all__ = ("gen_lower_bound_family", "decode_first_bit", "index_bits")

log = logging.getLogger(__name__)


def index_bits(sigma: str | Sequence[int]) -> tuple[int, ...]:
    bits = tuple(int(c) for c in sigma)
    if any(bit not in (0, 1) for bit in bits):
        raise ConstructionError("σ* must be a bit string.")
    return bits


def gen_lower_bound_family(
    ell: int, L: int, sigma_star: str | Sequence[int], *, parent: str = "realized"
) -> FamilyInstance:
    """Bits 0 … 2^ℓ − 1 label the middle edges, σ read as a binary number with
    σ₁ most significant. Bit 2^ℓ reads every always-present edge and sits in
    `free_ones`; with `parent="complete"` bit 2^ℓ + 1 reads every other pair
    of K_n and sits in `free_zeros`."""
    if ell < 1 or ell % 2 == 0:
        raise ConstructionError(f"ℓ must be a positive odd number, got {ell}.")
    if L < 3 or L % 2 == 0:
        raise ConstructionError(f"L must be odd and at least 3, got {L}.")
    sigma = index_bits(sigma_star)
    if len(sigma) != ell:
        raise ConstructionError(f"σ* needs {ell} bits, got {len(sigma)}.")
    if parent not in ("realized", "complete"):
        raise ConstructionError(f"Unknown parent graph `{parent}`; use realized or complete.")

    half = (ell - 1) // 2
    fan = 2**half
    arm = (L - 3) // 2
    size = 2
    always: list[DirectedEdge] = []
    # branch b of every generated edge
    branch: dict[tuple[int, int], int] = {}

    def new_vertices(count: int) -> list[int]:
        nonlocal size
        block = list(range(size, size + count))
        size += count
        return block

    hubs: dict[tuple[int, int], int] = {}
    fans: dict[tuple[int, int], list[int]] = {}
    for side, terminal in ((0, 0), (1, 1)):
        for b in (0, 1):
            route = [terminal, *new_vertices(arm)]
            for u, v in zip(route, route[1:]):
                always.append((u, v))
                branch[canonical(u, v)] = b
            hubs[(side, b)] = route[-1]
    for side in (0, 1):
        for b in (0, 1):
            fans[(side, b)] = new_vertices(fan)
            for v in fans[(side, b)]:
                always.append((hubs[(side, b)], v))
                branch[canonical(hubs[(side, b)], v)] = b

    middle: list[tuple[tuple[int, int], int]] = []
    for b in (0, 1):
        for i, u in enumerate(fans[(0, b)]):
            for j, v in enumerate(fans[(1, b)]):
                middle.append((canonical(u, v), (b << (2 * half)) | (i << half) | j))
                branch[canonical(u, v)] = b
    n = size
    N = 2**ell
    always_bit = N
    edges = [e for e, _ in middle] + [canonical(u, v) for u, v in always]
    if parent == "complete":
        pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
        graph = build_graph(n, pairs, 0, 1)
    else:
        graph = build_graph(n, edges, 0, 1)
    bit_of = {e: label for e, label in middle}
    bit_of.update({canonical(u, v): always_bit for u, v in always})
    never_bit = N + 1
    bits = [bit_of.get(e, never_bit) for e in graph.edges]
    m = N + 2 if parent == "complete" else N + 1
    assoc = EdgeAssociation.from_bits(graph, bits, m=m)

    target = int("".join(map(str, sigma)), 2)
    x = [0] * m
    x[target] = 1
    x[always_bit] = 1
    planted = next(e for e, label in middle if label == target)
    b_star = sigma[0]
    u_star, v_star = planted
    left_route = [0] + list(range(2 + b_star * arm, 2 + (b_star + 1) * arm))
    right_route = [1] + list(range(2 + (2 + b_star) * arm, 2 + (3 + b_star) * arm))
    hub_s, hub_t = hubs[(0, b_star)], hubs[(1, b_star)]
    fan_u = u_star if u_star in fans[(0, b_star)] else v_star
    fan_v = v_star if fan_u == u_star else u_star
    path = (
        list(zip(left_route, left_route[1:]))
        + [(hub_s, fan_u), (fan_u, fan_v), (fan_v, hub_t)]
        + [(b, a) for a, b in reversed(list(zip(right_route, right_route[1:])))]
    )
    instance = FamilyInstance(
        "lower-bound",
        graph,
        assoc,
        tuple(x),
        free_ones=frozenset({always_bit}),
        free_zeros=frozenset({never_bit}) if parent == "complete" else frozenset(),
        params={"ell": ell, "L": L, "sigma_star": "".join(map(str, sigma)), "parent": parent},
    )
    instance.truth.update(
        flow_truth(instance.view(), {"R": L, "theta": {arc: 1.0 for arc in path}})
    )
    instance.truth.update(
        {
            "path": path_truth(canonical(*arc) for arc in path),
            "unique_path": True,
            "planted_edge": list(planted),
            "first_bit": b_star,
            "branch": {f"{u},{v}": b for (u, v), b in sorted(branch.items())},
        }
    )
    log.debug("Lower-bound instance: n = %d, %d middle edges", n, len(middle))
    return instance


def decode_first_bit(instance: FamilyInstance, edge: Sequence[int]) -> int:
    """σ*₁ from one present path edge: the branch it sits on."""
    u, v = canonical(int(edge[0]), int(edge[1]))
    try:
        return instance.truth["branch"][f"{u},{v}"]
    except KeyError:
        raise ConstructionError(
            f"({u}, {v}) is not an edge of the lower-bound instance."
        ) from None
