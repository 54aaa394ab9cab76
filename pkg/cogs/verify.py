"""Oracle-equivalence suites over the exhaustive small-graph corpus.

Per-graph checks take one corpus graph with every edge present and return
the problems they found; an empty list is a pass. The random-walk and
spectral-gap suites sample their own instances.
"""
import logging
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from core import (
    Cog,
    Context,
    EdgeAssociation,
    Failure,
    Graph,
    command,
    enumerate_st_paths,
    subgraph,
)
from families import derive_seed, gen_corpus
from flows import (
    Network,
    edge_distribution,
    effective_resistance,
    optimal_unit_flow,
    random_walk_flows,
)
from flows.trees import network_tree_count, tree_path_counts
from quantum import (
    build_U,
    low_phase_projector,
    verify_effective_spectral_gap,
    witness_decomposition,
    zero_outcome_probability,
)
from span import (
    WitnessBounds,
    approx_negative_witness,
    build_stconn_program,
    default_bounds_stconn,
    positive_witness,
    verify_inverse_witness,
)

log = logging.getLogger(__name__)

TOLERANCE = 1e-9
DECOMPOSITION_TOLERANCE = 1e-12
INVERSE_TOLERANCE = 1e-7
THETA_EXPONENTS = range(1, 9)
SANDWICH_STATES = 100
SANDWICH_GRID = ((math.pi / 4, 0.05), (math.pi / 16, 0.01))
WALK_INSTANCES = 20
WALKS = 100_000
WALK_SIGMAS = 4
GAP_INSTANCES = 100
VERIFY_SEED = 0
REPORTED_PROBLEMS = 5


@dataclass
class Suite:
    name: str
    checked: int = 0
    problems: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.problems

    def summary(self) -> dict:
        return {
            "checked": self.checked,
            "passed": self.passed,
            "problems": len(self.problems),
            "examples": self.problems[:REPORTED_PROBLEMS],
        }


def _full(graph: Graph):
    assoc = EdgeAssociation.singletons(graph)
    x = (1,) * assoc.m
    return assoc, x, subgraph(graph, assoc, x)


def _label(graph: Graph) -> str:
    return f"n={graph.n} s={graph.s} t={graph.t} E={list(graph.edges)}"


def check_flows(graph: Graph) -> list[str]:
    """Laplacian flow against the spanning-tree flow, and J(θ*) = R."""
    _, _, view = _full(graph)
    flow = optimal_unit_flow(view)
    resistance = effective_resistance(view, graph.s, graph.t)
    problems = []
    if abs(flow.energy - resistance) > TOLERANCE:
        problems.append(f"J(θ*) = {flow.energy} but R = {resistance}")
    if (violation := flow.violation(graph.s, graph.t, graph.vertices)) > TOLERANCE:
        problems.append(f"θ* is not a unit st-flow (violation {violation:.2e})")
    network = Network.component(view)
    counts = tree_path_counts(network)
    for i, (a, b) in enumerate(network.edges):
        u, v = network.labels[a], network.labels[b]
        via_trees = (counts.forward[i] - counts.backward[i]) / counts.trees
        if abs(via_trees - flow(u, v)) > TOLERANCE:
            problems.append(f"θ*({u}, {v}) = {flow(u, v)} but the tree ratio is {via_trees}")
    return problems


def check_distribution(graph: Graph) -> list[str]:
    """Σq = 1, q against the tree-ratio product, and support on st-paths."""
    _, _, view = _full(graph)
    flow = optimal_unit_flow(view)
    resistance = effective_resistance(view, graph.s, graph.t)
    q = edge_distribution(flow, resistance).undirected()
    problems = []
    if abs(sum(q.values()) - 1) > TOLERANCE:
        problems.append(f"Σq = {sum(q.values())}")
    if not graph.has_edge(graph.s, graph.t):
        network = Network.component(view)
        counts = tree_path_counts(network)
        contracted = network_tree_count(network.contract(network.s, network.t))
        for i, (a, b) in enumerate(network.edges):
            u, v = network.labels[a], network.labels[b]
            ratio = (counts.forward[i] - counts.backward[i]) ** 2 / (counts.trees * contracted)
            if abs(ratio - q[(min(u, v), max(u, v))]) > TOLERANCE:
                problems.append(f"q({u}, {v}) differs from its tree ratio {ratio}")
    on_path = {
        frozenset(pair) for path in enumerate_st_paths(view) for pair in zip(path, path[1:])
    }
    for (u, v), value in flow.theta.items():
        if abs(value) > TOLERANCE and frozenset((u, v)) not in on_path:
            problems.append(f"θ*({u}, {v}) = {value} off every st-path")
    return problems


def check_span(graph: Graph) -> list[str]:
    """w₊ = R/2, the inverse-witness identity, w₊·w̃₋ ≥ 1 and w̃₋ ≤ 2n²."""
    assoc, x, view = _full(graph)
    program = build_stconn_program(graph, assoc)
    resistance = effective_resistance(view, graph.s, graph.t)
    positive = positive_witness(program, x)
    negative = approx_negative_witness(program, x)
    problems = []
    if abs(positive.w_plus - resistance / 2) > TOLERANCE:
        problems.append(f"w₊ = {positive.w_plus} but R/2 = {resistance / 2}")
    if (residual := verify_inverse_witness(program, x)) > INVERSE_TOLERANCE:
        problems.append(f"inverse-witness residual {residual:.2e}")
    if positive.w_plus * negative.neg_size < 1 - TOLERANCE:
        problems.append(f"w₊·w̃₋ = {positive.w_plus * negative.neg_size} < 1")
    if negative.neg_size > 2 * graph.n**2 + TOLERANCE:
        problems.append(f"w̃₋ = {negative.neg_size} exceeds 2n²")
    return problems


def alpha_grid(bounds: WitnessBounds) -> list[float]:
    """α = 2^i/√W̃₋ for the probing rounds i = 0 … T."""
    rounds = max(math.ceil(math.log2(math.sqrt(bounds.W_plus * bounds.W_minus_tilde))), 0)
    return [2**i / math.sqrt(bounds.W_minus_tilde) for i in range(rounds + 1)]


def check_spectral(graph: Graph) -> list[str]:
    """Uψ̃₊ = ψ̃₊, P₀ψ̃₋ = 0, the decomposition of |0̂⟩ and ‖P_Θψ̃₋‖ ≤ Θα√W̃₋."""
    assoc, x, _ = _full(graph)
    program = build_stconn_program(graph, assoc)
    bounds = default_bounds_stconn(graph.n)
    positive = positive_witness(program, x)
    problems = []
    for alpha in alpha_grid(bounds):
        reflection = build_U(program, x, alpha)
        parts = witness_decomposition(positive, alpha)
        zero = np.zeros_like(parts.psi_plus)
        zero[0] = 1.0
        if abs(np.vdot(parts.psi_plus, parts.psi_minus)) > DECOMPOSITION_TOLERANCE:
            problems.append(f"⟨ψ̃₊|ψ̃₋⟩ ≠ 0 at α = {alpha:.4g}")
        rebuilt = parts.a0 * parts.psi_plus + parts.a_plus * parts.psi_minus
        if np.linalg.norm(rebuilt - zero) > DECOMPOSITION_TOLERANCE:
            problems.append(f"a₀ψ̃₊ + a₊ψ̃₋ ≠ |0̂⟩ at α = {alpha:.4g}")
        if np.linalg.norm(reflection.U @ parts.psi_plus - parts.psi_plus) > TOLERANCE:
            problems.append(f"Uψ̃₊ ≠ ψ̃₊ at α = {alpha:.4g}")
        if np.linalg.norm(low_phase_projector(reflection, 0.0) @ parts.psi_minus) > TOLERANCE:
            problems.append(f"P₀ψ̃₋ ≠ 0 at α = {alpha:.4g}")
        for k in THETA_EXPONENTS:
            theta = math.pi / 2**k
            leaked = np.linalg.norm(low_phase_projector(reflection, theta) @ parts.psi_minus)
            bound = theta * alpha * math.sqrt(bounds.W_minus_tilde)
            if leaked > bound + TOLERANCE:
                problems.append(f"‖P_Θψ̃₋‖ = {leaked} > {bound} at Θ = π/2^{k}, α = {alpha:.4g}")
    return problems


def check_sandwich(graph: Graph, rng: np.random.Generator) -> list[str]:
    """‖P₀ψ‖² ≤ Pr[zero] ≤ ‖P_Θψ‖² + ε for random states ψ."""
    assoc, x, _ = _full(graph)
    bounds = default_bounds_stconn(graph.n)
    program = build_stconn_program(graph, assoc)
    reflection = build_U(program, x, 1 / math.sqrt(bounds.W_minus_tilde))
    shape = (reflection.U.shape[0], SANDWICH_STATES)
    states = rng.normal(size=shape) + 1j * rng.normal(size=shape)
    states /= np.linalg.norm(states, axis=0)
    floor = np.linalg.norm(low_phase_projector(reflection, 0.0) @ states, axis=0) ** 2
    problems = []
    for theta, eps in SANDWICH_GRID:
        probability = zero_outcome_probability(reflection, states, theta, eps)
        window = np.linalg.norm(low_phase_projector(reflection, theta) @ states, axis=0) ** 2
        outside = (probability < floor - TOLERANCE) | (probability > window + eps + TOLERANCE)
        if count := int(np.count_nonzero(outside)):
            problems.append(
                f"Pr[zero] left [‖P₀ψ‖², ‖P_Θψ‖² + ε] for {count} states at Θ = {theta:.4g}"
            )
    return problems


def check_random_walks(graphs: list[Graph], rng: np.random.Generator) -> tuple[int, list[str]]:
    """Walk crossing differences within 4 standard errors of θ* on sampled graphs."""
    chosen = rng.choice(len(graphs), size=min(WALK_INSTANCES, len(graphs)), replace=False)
    problems = []
    for index in sorted(int(i) for i in chosen):
        graph = graphs[index]
        _, _, view = _full(graph)
        flow = optimal_unit_flow(view)
        for (u, v), estimate in random_walk_flows(view, WALKS, seed=derive_seed(rng)).items():
            if not estimate.within(flow(u, v), WALK_SIGMAS):
                problems.append(
                    f"{_label(graph)}: walks give θ({u}, {v}) = {estimate.mean:.4f} "
                    f"± {estimate.stderr:.1e}, θ* = {flow(u, v):.4f}"
                )
    return len(chosen), problems


def check_spectral_gap(rng: np.random.Generator) -> tuple[int, list[str]]:
    """‖P_Θ(U)Πw‖ ≤ (Θ/2)‖w‖ on random projector pairs with Λw = 0."""
    problems = []
    for trial in range(GAP_INSTANCES):
        dim = int(rng.integers(4, 11))
        rank = int(rng.integers(1, dim))
        basis, _ = np.linalg.qr(rng.normal(size=(dim, dim)))
        Lambda = basis[:, :rank] @ basis[:, :rank].T
        Pi = np.diag(rng.integers(0, 2, size=dim).astype(float))
        w = basis[:, rank:] @ rng.normal(size=dim - rank)
        for theta in (0.0, *(math.pi / 2**k for k in THETA_EXPONENTS)):
            if not verify_effective_spectral_gap(Pi, Lambda, w, theta):
                problems.append(f"instance {trial} (dim {dim}, rank {rank}) at Θ = {theta:.4g}")
    return GAP_INSTANCES, problems


GRAPH_SUITES: dict[str, Callable[[Graph, np.random.Generator], list[str]]] = {
    "flows": lambda graph, rng: check_flows(graph),
    "distribution": lambda graph, rng: check_distribution(graph),
    "span": lambda graph, rng: check_span(graph),
    "spectral": lambda graph, rng: check_spectral(graph),
    "sandwich": check_sandwich,
}


def run_suites(max_n: int, seed: int = VERIFY_SEED) -> tuple[dict[str, Suite], int]:
    rng = np.random.default_rng(seed)
    graphs = list(gen_corpus(max_n))
    suites = {name: Suite(name) for name in (*GRAPH_SUITES, "random_walk", "spectral_gap")}
    for graph in graphs:
        for name, check in GRAPH_SUITES.items():
            suites[name].checked += 1
            suites[name].problems.extend(
                f"{_label(graph)}: {problem}" for problem in check(graph, rng)
            )
    for name, checked, problems in (
        ("random_walk", *check_random_walks(graphs, rng)),
        ("spectral_gap", *check_spectral_gap(rng)),
    ):
        suites[name].checked = checked
        suites[name].problems.extend(problems)
    log.info("Checked %d corpus instances", len(graphs))
    return suites, len(graphs)


class Verify(Cog):
    """Exact identities checked over every small graph."""

    @command(needs_graph=False)
    def verify(self, ctx: Context) -> int:
        """Run the flow, distribution, span-program, spectral and random-walk suites on the corpus."""
        seed = VERIFY_SEED if ctx.config.seed is None else ctx.config.seed
        suites, instances = run_suites(ctx.config.max_n, seed)
        payload = {
            "max_n": ctx.config.max_n,
            "instances": instances,
            "suites": {name: suite.summary() for name, suite in suites.items()},
        }
        if failed := [name for name, suite in suites.items() if not suite.passed]:
            log.warning("Suites with problems: %s", ", ".join(failed))
            return ctx.failure(
                "verify", Failure(f"{len(failed)} suite(s) reported problems."), **payload
            )
        return ctx.success("verify", **payload)


def setup(app):
    app.add_cog(Verify(app))
