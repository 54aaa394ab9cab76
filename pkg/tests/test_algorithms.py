import math

import numpy as np
import pytest

from algorithms import (
    ATTEMPT_SUCCESS,
    SteppedSubroutine,
    check_cut_promise,
    coupon_expected_samples,
    cutset_finder,
    cutset_parameters,
    edge_finder,
    empirical_distribution,
    general_path_finder,
    generation_attempts,
    path_detection_stepper,
    path_detection_steps,
    probing_schedule,
    run_lockstep,
    single_path_finder,
    single_path_parameters,
    stconn_witness_state,
    total_variation,
    witness_generation,
    witness_size_est,
)
from core import Failure, PreconditionError, QueryLedger, build_graph, is_walkable_path
from families import gen_expander_bridge, gen_unique_path_clutter
from span import WitnessBounds, build_stconn_program, positive_witness

TRIANGLE_Q = {(0, 1): 2 / 3, (0, 2): 1 / 6, (1, 2): 1 / 6}


def test_probing_schedule():
    eps, rounds, p = probing_schedule(0.5, 0.1, WitnessBounds(2, 32))
    assert eps == pytest.approx(1 / 96)
    assert rounds == 3
    assert p == pytest.approx(0.1 / 6)


def test_generation_attempts():
    assert generation_attempts(0.05) == 15
    assert generation_attempts(1.0) == 1
    assert ATTEMPT_SUCCESS == 3 / 16
    for delta in (0.5, 0.05, 1e-3, 1e-6):
        attempts = generation_attempts(delta)
        assert (13 / 16) ** attempts <= delta < (13 / 16) ** (attempts - 1)


def test_witness_state_is_close_to_the_optimal_witness(triangle, make_oracle, rng, exact):
    oracle = make_oracle(triangle)
    result = stconn_witness_state(oracle, triangle, 1e-4, 1e-4, rng, constants=exact)
    assert not isinstance(result, Failure)
    assert np.linalg.norm(result.state) == pytest.approx(1.0)
    w = positive_witness(build_stconn_program(triangle, oracle.assoc), oracle.snapshot()).w
    fidelity = abs(np.vdot(w / np.linalg.norm(w), result.state)) ** 2
    assert fidelity >= 0.8
    assert not result.iqae_failed
    assert oracle.ledger.controlled_u > 0
    assert oracle.ledger.modeled_queries > 0


def test_witness_generation_rejects_bad_accuracy(triangle, make_oracle, rng):
    oracle = make_oracle(triangle)
    program = build_stconn_program(triangle, oracle.assoc)
    with pytest.raises(PreconditionError):
        witness_generation(program, oracle, 0.0, 0.1, WitnessBounds(1.5, 18), rng)
    with pytest.raises(PreconditionError):
        witness_generation(program, oracle, 0.1, 0.0, WitnessBounds(1.5, 18), rng)


def sample_edges(oracle, graph, p, rng, constants, count):
    samples = []
    for _ in range(count):
        edge = edge_finder(oracle, p, graph, graph.s, graph.t, rng, constants=constants)
        if not isinstance(edge, Failure):
            assert oracle.view(graph).has_edge(*edge)
            samples.append(edge)
    return samples


def test_edge_finder_follows_the_flow(triangle, make_oracle, rng, exact):
    p = 0.05
    samples = sample_edges(make_oracle(triangle), triangle, p, rng, exact, 400)
    assert len(samples) >= 300
    assert total_variation(empirical_distribution(samples), TRIANGLE_Q) <= 3 * math.sqrt(p)


@pytest.mark.slow
def test_edge_finder_follows_the_flow_at_scale(triangle, make_oracle, rng, exact):
    p = 0.01
    samples = sample_edges(make_oracle(triangle), triangle, p, rng, exact, 5000)
    assert total_variation(empirical_distribution(samples), TRIANGLE_Q) <= 3 * math.sqrt(p)


@pytest.mark.parametrize("p", [0.0, 1.5])
def test_edge_finder_rejects_tolerance(p, triangle, make_oracle, rng):
    with pytest.raises(PreconditionError):
        edge_finder(make_oracle(triangle), p, triangle, 0, 1, rng)


def test_edge_finder_rejects_equal_terminals(triangle, make_oracle, rng):
    with pytest.raises(PreconditionError):
        edge_finder(make_oracle(triangle), 0.1, triangle, 2, 2, rng)


def test_empirical_distribution():
    assert empirical_distribution([(1, 0), (0, 1), (2, 1), (0, 1)]) == {
        (0, 1): 0.75,
        (1, 2): 0.25,
    }
    assert empirical_distribution([]) == {}
    assert total_variation({(0, 1): 1.0}, {(0, 1): 0.5, (1, 2): 0.5}) == pytest.approx(0.5)


def test_run_lockstep():
    ledger = QueryLedger()
    steppers = [
        SteppedSubroutine("a", 3, True, ledger),
        SteppedSubroutine("b", 5, False, ledger),
    ]
    assert steppers[0].result is None
    assert run_lockstep(steppers) == 5
    assert [s.result for s in steppers] == [True, False]
    assert ledger.modeled_queries == 8

    ledger = QueryLedger()
    steppers = [
        SteppedSubroutine("a", 3, True, ledger),
        SteppedSubroutine("b", 5, False, ledger),
    ]
    seen = []
    assert run_lockstep(steppers, lambda finished: seen.append(finished) or True) == 3
    assert seen == [[0]]
    assert not steppers[1].done
    assert ledger.modeled_queries == 6


def test_path_detection_steps():
    assert path_detection_steps(4, 3.0, 0.1, True, 1.0) == 18
    assert path_detection_steps(4, math.inf, 0.1, False, 1.0) == 19


def test_path_detection_without_errors(p3, make_oracle, rng, exact):
    oracle = make_oracle(p3)
    stepper = path_detection_stepper(oracle, p3, 0, 3, 0.1, rng, constants=exact)
    assert stepper.result is None
    run_lockstep([stepper])
    assert stepper.result is True
    assert oracle.ledger.modeled_queries == stepper.total_steps

    broken = make_oracle(p3, (1, 0, 1))
    stepper = path_detection_stepper(broken, p3, 0, 3, 0.1, rng, constants=exact)
    run_lockstep([stepper])
    assert stepper.result is False


def test_witness_size_est(p3, make_oracle, rng, exact):
    oracle = make_oracle(p3)
    for _ in range(20):
        estimate = witness_size_est(oracle, p3, 0, 3, 0.1, 0.1, rng, constants=exact)
        assert 2.7 <= estimate <= 3.3
    assert oracle.ledger.modeled_queries > 0
    broken = make_oracle(p3, (1, 0, 1))
    assert math.isinf(witness_size_est(broken, p3, 0, 3, 0.1, 0.1, rng, constants=exact))


def test_coupon_expected_samples(rng):
    assert coupon_expected_samples(0.2, 3) == pytest.approx(9.1667, abs=1e-4)
    with pytest.raises(PreconditionError):
        coupon_expected_samples(0.0, 3)

    # three disjoint events of mass 0.2 and a remainder of 0.4
    draws = []
    for _ in range(3000):
        seen, count = set(), 0
        while len(seen) < 3:
            count += 1
            outcome = int(rng.choice(4, p=[0.2, 0.2, 0.2, 0.4]))
            if outcome < 3:
                seen.add(outcome)
        draws.append(count)
    assert np.mean(draws) == pytest.approx(coupon_expected_samples(0.2, 3), abs=0.5)


def test_single_path_parameters():
    params = single_path_parameters(16, 0.1)
    assert params.eps1 == pytest.approx(0.25)
    assert params.samples == math.ceil(2 * math.log2(16**5 / 0.1) / 0.25)
    assert params.eps3 == pytest.approx(1.0)


def test_single_path_finder_on_a_path(p3, make_oracle, rng, exact):
    result = single_path_finder(make_oracle(p3), 0.1, p3, 0, 3, rng, constants=exact)
    assert result == frozenset(p3.edges)


def test_single_path_finder_ignores_clutter(rng, exact):
    instance = gen_unique_path_clutter(5, 12, 3)
    result = single_path_finder(
        instance.oracle(), 0.1, instance.graph, instance.s, instance.t, rng, constants=exact
    )
    assert sorted(map(list, result)) == instance.truth["path"]


def test_single_path_finder_direct_edge(single_edge, make_oracle, rng):
    oracle = make_oracle(single_edge)
    assert single_path_finder(oracle, 0.1, single_edge, 0, 1, rng) == frozenset({(0, 1)})
    assert oracle.ledger.bit_reads == 1


@pytest.mark.parametrize("name", ["k4", "c4", "p3"])
def test_general_path_finder(name, request, make_oracle, rng, exact):
    graph = request.getfixturevalue(name)
    oracle = make_oracle(graph)
    path = general_path_finder(oracle, graph, graph.s, graph.t, 0.1, rng, constants=exact)
    assert not isinstance(path, Failure)
    assert path[0][0] == graph.s and path[-1][1] == graph.t
    assert is_walkable_path(oracle.view(graph), graph.s, graph.t, list(path))


def test_general_path_finder_avoids_absent_edges(k4, make_oracle, rng, exact):
    # only 0-1-3 survives
    x = tuple(int(e in {(0, 1), (1, 3)}) for e in k4.edges)
    oracle = make_oracle(k4, x)
    path = general_path_finder(oracle, k4, 0, 3, 0.1, rng, constants=exact)
    assert path == ((0, 1), (1, 3))


def test_cutset_parameters():
    eps, rounds = cutset_parameters(16, 3, 1)
    assert eps == pytest.approx(1 / 768)
    assert rounds == 1132
    with pytest.raises(PreconditionError):
        cutset_parameters(16, 0, 1)


def test_cutset_finder_covers_a_path(p3, make_oracle, rng, exact):
    result = cutset_finder(make_oracle(p3), p3, 0, 3, 3, 1, rng, constants=exact)
    assert result.rounds == math.ceil(300 * (math.log(4) + 1))
    assert result.edges == frozenset(p3.edges)
    assert result.failures < result.rounds


def test_cut_promise_on_expander_bridge():
    instance = gen_expander_bridge(16, 3, 4)
    promise = check_cut_promise(instance.oracle(), instance.graph, instance.truth["R"], 1.0)
    assert promise["resistance_ok"]
    assert promise["cut_ok"]
    assert tuple(instance.truth["bridge"]) in promise["heavy_edges"]

    tight = check_cut_promise(instance.oracle(), instance.graph, 0.5, 1.0)
    assert not tight["resistance_ok"]



def witness_trace_distances(graph, make_oracle, rng, runs):
    """Trace distances of successful runs to w/‖w‖, and the rate of the rest."""
    oracle = make_oracle(graph)
    w = positive_witness(build_stconn_program(graph, oracle.assoc), oracle.snapshot()).w
    w = w / np.linalg.norm(w)
    distances, failures = [], 0
    while len(distances) < runs:
        result = stconn_witness_state(oracle, graph, 1e-4, 0.05, rng)
        if isinstance(result, Failure) or result.iqae_failed:
            failures += 1
            continue
        distances.append(math.sqrt(max(0.0, 1 - abs(np.vdot(w, result.state)) ** 2)))
    return distances, failures / (runs + failures)


def test_witness_state_trace_distance(triangle, make_oracle, rng):
    distances, _ = witness_trace_distances(triangle, make_oracle, rng, 10)
    assert max(distances) <= 0.12


@pytest.mark.slow
@pytest.mark.parametrize("name", ["p3", "triangle", "c4"])
def test_witness_state_trace_distance_at_scale(name, request, make_oracle, rng):
    distances, failure_rate = witness_trace_distances(
        request.getfixturevalue(name), make_oracle, rng, 200
    )
    assert max(distances) <= 0.12
    assert failure_rate <= 3 * 0.05


@pytest.mark.slow
def test_cutset_finder_finds_the_bridge(rng):
    instance = gen_expander_bridge(16, 3, 4)
    bridge = tuple(sorted(instance.truth["bridge"]))
    found = 0
    for _ in range(50):
        result = cutset_finder(
            instance.oracle(), instance.graph, instance.s, instance.t,
            instance.truth["R"], 1.0, rng,
        )
        found += bridge in result.edges
    assert found >= 50 * 2 / 3


@pytest.mark.slow
def test_single_path_finder_with_injected_failures(rng):
    correct = 0
    for seed in range(100):
        instance = gen_unique_path_clutter(7, 16, seed)
        result = single_path_finder(
            instance.oracle(), 0.05, instance.graph, instance.s, instance.t, rng
        )
        correct += not isinstance(result, Failure) and (
            sorted(map(list, result)) == instance.truth["path"]
        )
    assert correct >= 90


@pytest.mark.slow
def test_general_path_finder_with_injected_failures(make_oracle, rng):
    k6 = build_graph(6, [(u, v) for u in range(6) for v in range(u + 1, 6)], 0, 5)
    walkable = 0
    for _ in range(100):
        oracle = make_oracle(k6)
        path = general_path_finder(oracle, k6, 0, 5, 0.05, rng)
        walkable += not isinstance(path, Failure) and is_walkable_path(
            oracle.view(k6), 0, 5, list(path)
        )
    assert walkable >= 90
