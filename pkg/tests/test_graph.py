import math
import random

import networkx as nx
import pytest
from hypothesis import given, strategies as st

from copsolve.graph import (
    MAX_ORDER,
    Graph,
    GraphError,
    canonical_form,
    component_of,
    cycle_graph,
    distance,
    distances_from,
    encode_edge_list,
    encode_graph6,
    enumerate_connected_graphs,
    girth,
    graphs_up_to_iso,
    independence_number,
    is_connected,
    named_graph,
    parse_edge_list,
    parse_graph6,
    parse_named,
    path_graph,
    petersen_graph,
    robertson_graph,
)

from conftest import graphs, random_graph
from oracles import to_nx


def test_graph_rejects_loops_and_asymmetry():
    with pytest.raises(GraphError):
        Graph.from_edges(3, [(1, 1)])
    with pytest.raises(GraphError):
        Graph(2, (0b10, 0))
    with pytest.raises(GraphError):
        Graph.from_edges(2, [(0, 5)])


@given(graphs(max_n=12))
def test_graph6_matches_networkx_encoder(g):
    ref = nx.to_graph6_bytes(to_nx(g), header=False).decode().strip()
    assert encode_graph6(g) == ref
    assert parse_graph6(ref) == g


def test_graph6_long_header_roundtrip():
    rng = random.Random(5)
    for n in (63, 64, 100, MAX_ORDER):
        g = random_graph(rng, n, 0.1)
        text = encode_graph6(g)
        assert text.startswith("~")
        assert parse_graph6(text) == g
        assert nx.from_graph6_bytes(text.encode()).number_of_edges() == g.num_edges


@pytest.mark.parametrize(
    "bad, why",
    [("", "empty"), ("C", "truncated"), ("Dxxxxx", "overlong"), ("C\x7f", "byte"), ("B@", "padding"), ("?", "zero")],
)
def test_graph6_errors(bad, why):
    with pytest.raises(GraphError):
        parse_graph6(bad)


def test_graph6_order_cap():
    text = "~?A@" + "?" * ((129 * 128 // 2 + 5) // 6)
    with pytest.raises(GraphError, match="exceeds"):
        parse_graph6(text)


def test_edge_list_roundtrip_and_errors():
    g = petersen_graph()
    assert parse_edge_list(encode_edge_list(g)) == g
    with pytest.raises(GraphError):
        parse_edge_list("3 2\n0 1\n")
    with pytest.raises(GraphError):
        parse_edge_list("3\n0 1\n")


def test_named_constructions():
    assert named_graph("path", [4]).num_edges == 3
    assert parse_named("cycle:5") == cycle_graph(5)
    assert named_graph("claw").degrees() == [3, 1, 1, 1]
    assert sorted(named_graph("butterfly").degrees()) == [2, 2, 2, 2, 4]
    assert sorted(named_graph("e_graph").degrees()) == [1, 1, 1, 2, 2, 3]
    assert nx.is_isomorphic(to_nx(petersen_graph()), nx.petersen_graph())
    with pytest.raises(GraphError):
        named_graph("nosuch")
    with pytest.raises(GraphError):
        named_graph("cycle")


def test_robertson_is_the_4_5_cage():
    g = robertson_graph()
    assert g.n == 19 and set(g.degrees()) == {4} and g.num_edges == 38
    assert girth(g) == 5
    assert nx.girth(to_nx(g)) == 5


@given(graphs(max_n=9))
def test_distances_match_networkx(g):
    h = to_nx(g)
    for s in range(g.n):
        ref = nx.single_source_shortest_path_length(h, s)
        d = distances_from(g, s)
        assert all(d[v] == ref.get(v, math.inf) for v in range(g.n))
    assert is_connected(g) == nx.is_connected(h)


def test_distance_inside_mask():
    g = cycle_graph(6)
    assert distance(g, 0, 3) == 3
    assert distance(g, 0, 2, within=g.full & ~(1 << 1)) == 4
    assert component_of(g, 0, 0b000111) == 0b000111


@given(graphs(max_n=9))
def test_girth_and_independence_number(g):
    h = to_nx(g)
    assert girth(g) == nx.girth(h)
    best = max(len(c) for c in nx.find_cliques(nx.complement(h))) if g.n else 0
    assert independence_number(g) == best


def test_census_matches_graph_atlas():
    atlas = nx.graph_atlas_g()
    for n in range(1, 8):
        ref_all = sum(1 for a in atlas if a.number_of_nodes() == n)
        ref_conn = sum(1 for a in atlas if a.number_of_nodes() == n and nx.is_connected(a))
        assert len(graphs_up_to_iso(n)) == ref_all
        assert sum(1 for _ in enumerate_connected_graphs(n)) == ref_conn


@given(graphs(max_n=7), st.randoms(use_true_random=False))
def test_canonical_form_is_relabeling_invariant(g, rnd):
    perm = list(range(g.n))
    rnd.shuffle(perm)
    assert canonical_form(g.relabel(perm)) == canonical_form(g)
    assert nx.is_isomorphic(to_nx(canonical_form(g)), to_nx(g))


def test_enumeration_bounds():
    with pytest.raises(GraphError):
        list(enumerate_connected_graphs(9))
    assert len(list(enumerate_connected_graphs(4, dedup=False))) == 38
