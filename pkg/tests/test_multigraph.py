from __future__ import annotations

import io

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sublinear_vc.multigraph import (
    GraphInputError,
    GraphParseError,
    GraphStateError,
    MultiGraph,
    QueryStats,
    load_graph,
    parse_graph,
)


@st.composite
def multigraphs(draw, max_n=8, max_m=16):
    n = draw(st.integers(1, max_n))
    edges = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=max_m))
    return MultiGraph.from_edges(n, edges)


def test_degree_examples():
    assert MultiGraph.from_edges(3, []).degree(1) == 0
    assert MultiGraph.from_edges(1, [(0, 0)]).degree(0) == 1
    tri = MultiGraph.from_edges(3, [(0, 1), (1, 2), (0, 2)])
    assert [tri.degree(v) for v in range(3)] == [2, 2, 2]


def test_neighbor_examples():
    assert MultiGraph.from_edges(2, [(0, 1)]).neighbor(0, 1) == (1, 1, 0)
    assert MultiGraph.from_edges(1, [(0, 0)]).neighbor(0, 1) == (0, 1, 0)
    path = MultiGraph.from_edges(3, [(0, 1), (1, 2)])
    assert path.neighbor(1, 2) == (2, 1, 1)


def test_pair_examples():
    k4 = MultiGraph.from_edges(4, [(i, j) for i in range(4) for j in range(i + 1, 4)], pair_index=True)
    assert k4.pair(0, 3) and k4.pair(3, 0)
    assert not MultiGraph.from_edges(2, [], pair_index=True).pair(0, 1)
    g = MultiGraph.from_edges(3, [(2, 2)], pair_index=True)
    assert g.pair(2, 2) and not g.pair(1, 1)


def test_pair_without_index_is_state_error():
    with pytest.raises(GraphStateError):
        MultiGraph.from_edges(2, [(0, 1)]).pair(0, 1)
    assert MultiGraph.from_edges(2, [(0, 1)]).with_pair_index().pair(0, 1)


def test_range_errors():
    g = MultiGraph.from_edges(2, [(0, 1)])
    with pytest.raises(GraphInputError):
        g.degree(2)
    with pytest.raises(GraphInputError):
        g.neighbor(0, 2)
    with pytest.raises(GraphInputError):
        g.neighbor(0, 0)
    with pytest.raises(GraphInputError):
        MultiGraph.from_edges(2, [(0, 5)])


@pytest.mark.parametrize(
    "text, n, degs",
    [("2 1\n0 1", 2, [1, 1]), ("1 2\n0 0\n0 0", 1, [2]), ("3 0", 3, [0, 0, 0])],
)
def test_parse_examples(text, n, degs):
    g = parse_graph(text)
    assert g.n == n
    assert [g.raw_degree(v) for v in range(n)] == degs


@pytest.mark.parametrize(
    "text, lineno",
    [
        ("2 1\n0 x", 2),
        ("2 1\n0 2", 2),
        ("2 2\n0 1", 3),
        ("2 1\n0 1\n1 0", 3),
        ("2 1\n0 1 1", 2),
        ("", 1),
        ("# comment\n\n2 1\n\n0 7", 5),
    ],
)
def test_parse_errors_carry_line_numbers(text, lineno):
    with pytest.raises(GraphParseError) as info:
        parse_graph(text)
    assert info.value.lineno == lineno


def test_load_graph_from_file(tmp_path):
    p = tmp_path / "g.txt"
    p.write_text("3 2\n0 1\n1 2\n")
    g = load_graph(str(p), pair_index=True)
    assert g.m == 2 and g.pair(1, 2)
    assert parse_graph(io.StringIO(p.read_text())).m == 2


def test_query_counters_follow_scripted_sequence():
    g = MultiGraph.from_edges(3, [(0, 1), (1, 2)], pair_index=True)
    g.degree(0)
    g.degree(1)
    g.neighbor(1, 1)
    g.pair(0, 2)
    g.pair(0, 1)
    g.pair(2, 2)
    assert g.stats.as_dict() == {"degree_queries": 2, "neighbor_queries": 1, "pair_queries": 3}
    before = g.stats.snapshot()
    g.neighbor(1, 2)
    assert (g.stats - before).as_dict() == {"degree_queries": 0, "neighbor_queries": 1, "pair_queries": 0}
    assert g.stats.total == 7
    g.stats.reset()
    assert g.stats == QueryStats()


def test_failed_query_is_not_counted():
    g = MultiGraph.from_edges(2, [(0, 1)])
    with pytest.raises(GraphInputError):
        g.neighbor(0, 3)
    assert g.stats.neighbor_queries == 0


def test_uncounted_helpers_and_views():
    g = MultiGraph.from_edges(3, [(0, 1), (1, 1), (1, 2)])
    assert g.slots(1) == [(0, 1, 0), (1, 2, 1), (2, 1, 2)]
    assert g.max_degree() == 3
    assert list(g.edges()) == [(0, 1), (1, 1), (1, 2)]
    assert g.stats.total == 0
    v = g.view()
    v.degree(0)
    assert v.stats.degree_queries == 1 and g.stats.degree_queries == 0


@given(multigraphs())
def test_reciprocity_and_loops(g):
    for v in range(g.n):
        for i in range(1, g.degree(v) + 1):
            w, j, e = g.neighbor(v, i)
            if w == v:
                assert j == i
            else:
                assert g.neighbor(w, j) == (v, i, e)
            assert set(g.edge(e)) == {v, w}


@given(multigraphs())
def test_degree_sum(g):
    loops = sum(1 for u, v in g.edges() if u == v)
    assert sum(g.raw_degree(v) for v in range(g.n)) == 2 * (g.m - loops) + loops


@given(multigraphs())
def test_edge_ids_dense_and_single_slot_per_endpoint(g):
    seen: dict[int, int] = {}
    for v in range(g.n):
        for _, _, e in g.slots(v):
            seen[e] = seen.get(e, 0) + 1
    assert sorted(seen) == list(range(g.m))
    for e, count in seen.items():
        u, v = g.edge(e)
        assert count == (1 if u == v else 2)


@settings(max_examples=50)
@given(multigraphs())
def test_round_trip(g):
    h = parse_graph(g.serialize())
    assert h.n == g.n and h.m == g.m
    assert all(h.slots(v) == g.slots(v) for v in range(g.n))


def test_from_adjacency_keeps_given_slot_order():
    adj = [[(1, 0), (2, 1)], [(0, 0)], [(0, 1)]]
    g = MultiGraph.from_adjacency(adj)
    assert g.slots(0) == [(1, 1, 0), (2, 1, 1)]
    adj2 = [[(2, 1), (1, 0)], [(0, 0)], [(0, 1)]]
    assert MultiGraph.from_adjacency(adj2).slots(0) == [(2, 1, 1), (1, 1, 0)]
