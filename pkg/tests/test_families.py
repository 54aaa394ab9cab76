import json
import math

import pytest

from core import ConstructionError, RunConfig, SizeGuardError, UsageError
from families import (
    decode_first_bit,
    gen_corpus,
    gen_expander_bridge,
    gen_lower_bound_family,
    gen_parallel_paths,
    gen_path,
    gen_series_parallel,
    gen_unique_path_clutter,
    load_instance,
    make_family,
    resolve_instance,
)


def test_path():
    instance = gen_path(3)
    assert instance.graph.n == 4
    assert (instance.s, instance.t) == (0, 3)
    assert instance.truth["R"] == pytest.approx(3)
    assert instance.truth["path"] == [[0, 1], [1, 2], [2, 3]]
    assert instance.truth["theta"]["1,2:0"] == pytest.approx(1.0)


def test_path_in_a_complete_parent():
    instance = gen_path(3, 6, parent="complete")
    assert len(instance.graph.edges) == 15
    assert sum(instance.x) == 3
    assert instance.truth["R"] == pytest.approx(3)
    assert instance.params["parent"] == "complete"
    with pytest.raises(ConstructionError):
        gen_path(3, 6, parent="star")
    with pytest.raises(ConstructionError):
        gen_path(5, 4)


def test_parallel_paths():
    instance = gen_parallel_paths([1, 2])
    assert instance.graph.n == 3
    assert instance.truth["R"] == pytest.approx(2 / 3)
    assert instance.truth["path_mass"] == pytest.approx([2 / 3, 1 / 3])
    assert not instance.truth["unique_path"]
    with pytest.raises(ConstructionError):
        gen_parallel_paths([1, 1])
    with pytest.raises(ConstructionError):
        gen_parallel_paths([])


def test_unique_path_clutter():
    instance = gen_unique_path_clutter(5, 12, 3)
    assert instance.graph.n == 12
    assert instance.truth["R"] == pytest.approx(5)
    path = {tuple(e) for e in instance.truth["path"]}
    assert all(min(e) > 5 for e in instance.graph.edges if e not in path)
    assert gen_unique_path_clutter(5, 12, 3).graph == instance.graph


def test_lower_bound_smallest():
    instance = gen_lower_bound_family(3, 3, "101")
    assert instance.graph.n == 10
    assert instance.assoc.m == 9
    assert instance.truth["R"] == pytest.approx(3)
    assert instance.truth["planted_edge"] == [4, 9]
    assert instance.truth["path"] == [[0, 4], [1, 9], [4, 9]]
    assert instance.truth["first_bit"] == 1
    for edge in instance.truth["path"]:
        assert decode_first_bit(instance, edge) == 1
    assert decode_first_bit(instance, (2, 0)) == 0
    with pytest.raises(ConstructionError):
        decode_first_bit(instance, (2, 3))
    # the always-present bit is free
    oracle = instance.oracle()
    assert oracle.query(8, "lookup") == 1
    assert oracle.ledger.bit_reads == 0


def test_lower_bound_with_arms():
    instance = gen_lower_bound_family(1, 5, "0")
    assert instance.graph.n == 10
    assert instance.truth["R"] == pytest.approx(5)
    assert len(instance.truth["path"]) == 5
    assert instance.truth["first_bit"] == 0

    complete = gen_lower_bound_family(1, 5, "0", parent="complete")
    assert complete.assoc.m == 4
    assert complete.free_zeros == frozenset({3})
    assert complete.truth["R"] == pytest.approx(5)


@pytest.mark.parametrize(
    "ell, L, sigma", [(2, 3, "01"), (3, 4, "101"), (3, 1, "101"), (3, 3, "10"), (1, 3, "2")]
)
def test_lower_bound_rejects(ell, L, sigma):
    with pytest.raises(ConstructionError):
        gen_lower_bound_family(ell, L, sigma)


def test_expander_bridge():
    instance = gen_expander_bridge(16, 3, 4)
    a, b = instance.truth["bridge"]
    assert a < 8 <= b
    assert (a, b) in instance.graph.edges
    assert instance.s < 8 <= instance.t
    assert instance.truth["R"] >= 1
    assert min(instance.truth["algebraic_connectivity"]) >= 0.2
    degree = {v: 0 for v in range(16)}
    for u, v in instance.graph.edges:
        degree[u] += 1
        degree[v] += 1
    assert sorted(degree.values()) == [3] * 14 + [4, 4]
    with pytest.raises(ConstructionError):
        gen_expander_bridge(15, 3, 4)
    with pytest.raises(ConstructionError):
        gen_expander_bridge(8, 5, 4)


def test_series_parallel_single_leaf():
    instance = gen_series_parallel(0, 1)
    assert instance.truth["R"] == pytest.approx(1)
    (leaf,) = instance.truth["leaves"]
    assert leaf["edge"] == [0, 1]
    assert (leaf["q"], leaf["p"], leaf["p_dual"]) == pytest.approx((1.0, 1.0, 1.0))


def test_series_parallel_leaves():
    instance = gen_series_parallel(5, 8)
    assert len(instance.graph.edges) == 8
    leaves = instance.truth["leaves"]
    assert sum(leaf["q"] for leaf in leaves) == pytest.approx(1.0)
    assert all(0 <= leaf["p"] <= 1 for leaf in leaves)
    with pytest.raises(ConstructionError):
        gen_series_parallel(5, 0)


def test_corpus():
    assert len(list(gen_corpus(3))) == 7
    assert len(list(gen_corpus(2))) == 1
    with pytest.raises(SizeGuardError):
        list(gen_corpus(8))


def test_make_family():
    assert make_family("path", {"l": 4}).truth["R"] == pytest.approx(4)
    assert make_family("parallel-paths", {"lengths": 3}).truth["R"] == pytest.approx(3)
    instance = make_family("lower-bound", {"ell": 3, "l": 3, "sigma_star": 1})
    assert instance.params["sigma_star"] == "001"


def test_make_family_errors():
    with pytest.raises(UsageError, match="Unknown family"):
        make_family("torus", {})
    with pytest.raises(UsageError, match="Missing"):
        make_family("path", {})
    with pytest.raises(UsageError, match="does not take"):
        make_family("path", {"l": 3, "width": 2})


def test_resolve_instance_seed_fallback():
    config = RunConfig("generate", family="unique-path-clutter", params={"l": 3, "n": 8})
    with pytest.raises(UsageError):
        resolve_instance(config)
    config.seed = 9
    instance = resolve_instance(config)
    assert instance.params["seed"] == 9
    assert resolve_instance(config, l=4).truth["R"] == pytest.approx(4)


def test_instance_round_trips_through_a_file(tmp_path):
    instance = gen_parallel_paths([2, 3])
    path = tmp_path / "instance.json"
    path.write_text(json.dumps(instance.to_json()))
    loaded = load_instance(str(path))
    assert loaded.family == "file"
    assert loaded.graph == instance.graph
    assert math.isclose(loaded.truth["R"], instance.truth["R"])
    config = RunConfig("flow", graph=str(path))
    assert resolve_instance(config).x == instance.x
