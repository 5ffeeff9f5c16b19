import pytest

from sqflows.flows import enumerate_flag_flows
from sqflows.network import (
    EXTRA,
    ORDINARY,
    SPLIT,
    NetworkError,
    PlanarNetwork,
    build_half_grid,
    parse_network,
    random_grid_network,
    validate,
    vertex_split,
    write_network,
)


def test_half_grid_n1():
    g = build_half_grid(1)
    assert g.vertices == ("1,1",)
    assert g.edges == ()
    assert g.sources == g.sinks == ("1,1",)


def test_half_grid_n3_vertex_set():
    g = build_half_grid(3)
    assert set(g.vertices) == {"1,1", "2,1", "3,1", "2,2", "3,2", "3,3"}


def test_half_grid_n5_counts():
    g = build_half_grid(5)
    assert len(g.vertices) == 15
    assert len(g.edges) == 20
    assert g.sinks == tuple(f"{i},{i}" for i in range(1, 6))
    assert g.sources == tuple(f"{i},1" for i in range(1, 6))


@pytest.mark.parametrize("n", range(1, 13))
def test_half_grid_validates(n):
    assert validate(build_half_grid(n)) == []


def test_validate_cycle_witness():
    net = PlanarNetwork(
        vertices=("u", "v"),
        edges=(("u", "v"), ("v", "u")),
        sources=("u",),
        sinks=("v",),
    )
    problems = validate(net)
    assert any(p.startswith("cycle:") and "u" in p and "v" in p for p in problems)


def test_validate_duplicates_and_dangling():
    net = PlanarNetwork(
        vertices=("a", "b"),
        edges=(("a", "c"),),
        sources=("a", "a"),
        sinks=("b", "b"),
    )
    problems = validate(net)
    assert any("duplicate source" in p for p in problems)
    assert any("duplicate sink" in p for p in problems)
    assert any("dangling edge" in p for p in problems)


def test_validate_allows_end_coincidence():
    # s_1 = t_1 is legal (single-vertex half-grid) but an interior clash is not
    assert validate(build_half_grid(1)) == []
    net = PlanarNetwork(
        vertices=("a", "b", "c"),
        edges=(("a", "b"), ("b", "c")),
        sources=("a", "b"),
        sinks=("b", "c"),
    )
    assert any("coincides" in p for p in validate(net))


def test_vertex_split_counts_on_gamma3():
    split = vertex_split(build_half_grid(3))
    kinds = {}
    for k in split.edge_kinds:
        kinds[k] = kinds.get(k, 0) + 1
    assert kinds == {SPLIT: 6, ORDINARY: 6, EXTRA: 6}
    assert len(split.vertices) == 12 + 6
    assert validate(split) == []


def test_vertex_split_gamma1_path():
    split = vertex_split(build_half_grid(1))
    assert split.sources == ("s^1",)
    assert split.sinks == ("t^1",)
    assert set(split.edges) == {("s^1", "1,1'"), ("1,1'", "1,1''"), ("1,1''", "t^1")}


def test_split_structure_invariant():
    # every non-terminal vertex carries exactly one split-edge; a split-edge
    # into (out of) a vertex forces in-degree (out-degree) one; terminals have
    # exactly one incident edge
    split = vertex_split(build_half_grid(4))
    terminals = set(split.sources) | set(split.sinks)
    incident_split = {v: 0 for v in split.vertices}
    for edge, kind in zip(split.edges, split.edge_kinds):
        if kind == SPLIT:
            tail, head = edge
            incident_split[tail] += 1
            incident_split[head] += 1
            assert len(split.out(tail)) == 1
            assert len(split.into(head)) == 1
    for v in split.vertices:
        degree = len(split.out(v)) + len(split.into(v))
        if v in terminals:
            assert degree == 1
        else:
            assert incident_split[v] == 1


def test_split_flow_counts_match():
    g = build_half_grid(3)
    split = vertex_split(g)
    from itertools import combinations

    for size in range(0, 4):
        for I in combinations(range(1, 4), size):
            assert len(enumerate_flag_flows(g, I)) == len(enumerate_flag_flows(split, I))


def test_split_rejects_split_input():
    split = vertex_split(build_half_grid(2))
    with pytest.raises(NetworkError):
        vertex_split(split)


def test_interval_flows_unique():
    for n in range(1, 7):
        g = build_half_grid(n)
        for lo in range(1, n + 1):
            for hi in range(lo, n + 1):
                assert len(enumerate_flag_flows(g, range(lo, hi + 1))) == 1


def test_random_grid_network_valid():
    import random

    for seed in range(5):
        net = random_grid_network(5, 2, random.Random(seed))
        assert validate(net) == []
        assert len(net.sources) == len(net.sinks) == 5


def test_text_roundtrip():
    g = build_half_grid(3)
    text = write_network(g)
    back = parse_network(text)
    assert back.vertices == g.vertices
    assert back.edges == g.edges
    assert back.sources == g.sources
    assert back.sinks == g.sinks
    assert back.planarity == "declared"


def test_text_reader_any_order_and_comments():
    text = """
# terminals first
sinks b
sources a
edge a b
vertex a 0 0
vertex b 1 1
"""
    net = parse_network(text)
    assert net.vertices == ("a", "b")
    assert net.edges == (("a", "b"),)
    assert validate(net) == []


def test_text_reader_errors():
    with pytest.raises(NetworkError):
        parse_network("vertex a\nedge a\nsources a\nsinks a\n")
    with pytest.raises(NetworkError):
        parse_network("vertex a\nwobble a\nsources a\nsinks a\n")
    with pytest.raises(NetworkError):
        parse_network("vertex a\n")
