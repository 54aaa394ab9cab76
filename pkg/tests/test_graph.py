import pytest

from core import (
    ConstructionError,
    EdgeAssociation,
    GraphDocument,
    InputOracle,
    QueryIndexError,
    QueryLedger,
    SizeGuardError,
    build_graph,
    dump_graph_json,
    enumerate_st_paths,
    is_walkable_path,
    load_graph_json,
    remove_edges,
    remove_vertex,
    subgraph,
)


@pytest.mark.parametrize(
    "edges, s, t",
    [
        ([(0, 0)], 0, 1),
        ([(0, 1), (1, 0)], 0, 1),
        ([(0, 5)], 0, 1),
        ([(0, 1)], 0, 0),
        ([(0, 1)], 0, 7),
    ],
)
def test_build_graph_rejects(edges, s, t):
    with pytest.raises(ConstructionError):
        build_graph(3, edges, s, t)


def test_directed_edge_order(triangle):
    assert triangle.edges == ((0, 1), (0, 2), (1, 2))
    assert triangle.directed_edges == ((0, 1), (1, 0), (0, 2), (2, 0), (1, 2), (2, 1))


def test_remove_vertex_keeps_identifiers(p3):
    smaller = remove_vertex(p3, 1)
    assert smaller.n == 4
    assert smaller.edges == ((2, 3),)
    assert smaller.vertices == (0, 2, 3)
    with pytest.raises(ConstructionError):
        remove_vertex(smaller, 1)


def test_remove_edges(triangle):
    assert remove_edges(triangle, [(1, 0)]).edges == ((0, 2), (1, 2))
    assert remove_edges(triangle, []) is triangle
    with pytest.raises(ConstructionError):
        remove_edges(remove_edges(triangle, [(0, 1)]), [(0, 1)])


def test_subgraph_follows_bits(triangle):
    assoc = EdgeAssociation.from_bits(triangle, [0, 1, 1])
    view = subgraph(triangle, assoc, (0, 1))
    assert view.edges == ((0, 2), (1, 2))
    assert not view.has_edge(0, 1)


def test_oracle_charges_reads(triangle):
    assoc = EdgeAssociation.singletons(triangle)
    oracle = InputOracle((1, 0, 1), assoc, free_ones={2})
    assert oracle.query(0, "lookup") == 1
    assert oracle.query_edge(2, 0, "lookup") == 0
    assert oracle.query(2, "lookup") == 1
    assert oracle.ledger.bit_reads == 2
    assert oracle.ledger.exact_queries == 2
    with pytest.raises(QueryIndexError):
        oracle.query(3, "lookup")


def test_oracle_rejects_inconsistent_free_bits(triangle):
    with pytest.raises(ConstructionError):
        InputOracle((1, 0, 1), EdgeAssociation.singletons(triangle), free_zeros={0})


def test_fork_has_a_fresh_ledger(triangle):
    oracle = InputOracle((1, 1, 1), EdgeAssociation.singletons(triangle))
    oracle.query(0, "lookup")
    assert oracle.fork().ledger.total == 0


def test_ledger_conservation():
    ledger = QueryLedger()
    ledger.charge_unitary("phase_estimation", 15)
    ledger.charge_read("membership", 3)
    ledger.charge_modeled("path_detection", 2.5)
    assert ledger.exact_queries == 2 * ledger.controlled_u + ledger.bit_reads == 33
    assert ledger.total == pytest.approx(35.5)
    snapshot = ledger.snapshot()
    assert list(snapshot["breakdown"]) == ["membership", "path_detection", "phase_estimation"]


def test_enumerate_st_paths(triangle, make_oracle):
    view = make_oracle(triangle).view(triangle)
    assert enumerate_st_paths(view) == [(0, 1), (0, 2, 1)]


def test_enumeration_size_guard(make_oracle):
    big = build_graph(13, [(i, i + 1) for i in range(12)], 0, 12)
    with pytest.raises(SizeGuardError):
        enumerate_st_paths(make_oracle(big).view(big))


def test_walkable_path(c4, make_oracle):
    # edges (0, 1), (0, 3), (1, 2), (2, 3) in bit order
    view = make_oracle(c4, (1, 1, 1, 0)).view(c4)
    assert is_walkable_path(view, 0, 2, [(0, 1), (1, 2)])
    assert is_walkable_path(view, 0, 2, frozenset({(0, 1), (1, 2)}))
    assert not is_walkable_path(view, 0, 2, [(1, 2), (0, 1)])
    # (2, 3) is absent under x
    assert not is_walkable_path(view, 0, 2, [(0, 3), (3, 2)])
    assert is_walkable_path(view, 1, 1, [])


def test_graph_json(tmp_path):
    document = load_graph_json(
        {"n": 3, "s": 0, "t": 2, "edges": [[0, 1, 0], [1, 2, 0], [0, 2, 1]], "x": "10"}
    )
    assert document.assoc.m == 2
    assert document.assoc.edges_of(0) == ((0, 1), (1, 2))
    assert subgraph(document.graph, document.assoc, document.x).edges == ((0, 1), (1, 2))
    dumped = dump_graph_json(document)
    assert dumped["x"] == "10"
    assert dumped["edges"] == [[0, 1, 0], [0, 2, 1], [1, 2, 0]]
    assert isinstance(load_graph_json(dumped), GraphDocument)


def test_graph_json_defaults():
    document = load_graph_json({"n": 2, "s": 0, "t": 1, "edges": [[0, 1]]})
    assert document.x == (1,)
    with pytest.raises(ConstructionError):
        load_graph_json({"n": 2, "s": 0, "edges": []})
