import pytest
from hypothesis import given

from copsolve.graph import Graph, GraphError, complete_graph, cycle_graph, named_graph, path_graph, petersen_graph, star_graph
from copsolve.subgraphs import longest_path_order
from copsolve.substitution import (
    clique_substitution,
    contract_red_edges,
    red_matching_is_perfect,
    verify_neighborhood_lemma,
    verify_substitution_freeness,
)

from conftest import graphs


def test_wheel_substitution_shape():
    r = clique_substitution(named_graph("wheel4"))
    assert r.h.n == 16 and len(r.red_edges) == 8
    # hub clique K^0 is a K4, rim cliques are triangles
    sizes = sorted(sum(1 for o in r.origin if o[0] == v) for v in range(5))
    assert sizes == [3, 3, 3, 3, 4]
    assert r.h.num_edges == 6 + 4 * 3 + 8


def test_small_cases():
    assert clique_substitution(complete_graph(2)).h == complete_graph(2)
    assert clique_substitution(path_graph(3)).h.degrees() == path_graph(4).degrees()
    r = clique_substitution(petersen_graph())
    assert r.h.n == 30 and len(r.red_edges) == 15


def test_rejects_bad_sources():
    with pytest.raises(GraphError):
        clique_substitution(Graph.from_edges(3, [(0, 1)]))
    with pytest.raises(GraphError):
        clique_substitution(Graph.from_edges(4, [(0, 1), (2, 3)]))
    with pytest.raises(GraphError):
        clique_substitution(complete_graph(13))  # 156 tokens


@given(graphs(min_n=2, max_n=7, connected=True))
def test_substitution_lemmas(g):
    r = clique_substitution(g)
    assert r.h.n == 2 * g.num_edges
    assert red_matching_is_perfect(r)
    assert contract_red_edges(r) == g
    assert verify_neighborhood_lemma(r)
    report = verify_substitution_freeness(r)
    assert all(report.values()), report


def test_neighbourhood_check_negative_controls():
    assert not verify_neighborhood_lemma(star_graph(3))
    assert not verify_neighborhood_lemma(star_graph(4))
    assert not verify_neighborhood_lemma(complete_graph(4))
    assert verify_neighborhood_lemma(cycle_graph(6), [2] * 6)


def test_freeness_report_uses_longest_path():
    r = clique_substitution(path_graph(5))
    assert longest_path_order(path_graph(5)) == 5
    assert verify_substitution_freeness(r)["induced_path_le_2p"]
    assert not verify_substitution_freeness(r, p=3)["induced_path_le_2p"]


def test_json_metadata():
    import json

    data = json.loads(clique_substitution(path_graph(3)).to_json())
    assert data["n"] == 4 and len(data["red_edges"]) == 2 and data["origin"][0] == [0, 1]
