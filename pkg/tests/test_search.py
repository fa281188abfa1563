import pytest
from hypothesis import given, settings

from upord import corpus
from upord.axioms import EdgeOrder, promote
from upord.digraph import from_edges
from upord.errors import BudgetExhausted, CyclicGraphError, GraphTooLarge
from upord.generate import all_dags
from upord.search import (
    BUDGET,
    NOT_PLANAR,
    PLANAR,
    SearchConfig,
    UndirectedGraph,
    complete_bipartite,
    complete_graph,
    count_upos,
    enumerate_upos,
    find_planar_orientation,
    is_upward_planar,
    orientations,
)
from tests.conftest import dags
from tests.oracles import has_upo_completion, naive_upos


def seqs(outcome):
    return {w.sequence for w in outcome.witnesses}


def test_known_enumerations():
    assert seqs(enumerate_upos(corpus.graph("PATH2"))) == {("e1", "e2")}
    assert seqs(enumerate_upos(corpus.graph("DIAMOND"))) == {("e1", "e3", "e2", "e4"), ("e2", "e4", "e1", "e3")}
    assert seqs(enumerate_upos(corpus.graph("TRIANGLE"))) == {("e1", "e2", "e3"), ("e3", "e1", "e2")}
    assert enumerate_upos(corpus.graph("PARALLEL")).count == 2


@pytest.mark.parametrize("name,count", [("PATH2", 1), ("FORK", 2), ("DIAMOND", 2), ("TRIANGLE", 2),
                                        ("PARALLEL", 2), ("NEST", 6), ("INTERLEAVE", 16)])
def test_counts(name, count):
    assert count_upos(corpus.graph(name)) == count


def test_fig4_is_upward_planar():
    g = corpus.graph("FIG4")
    out = is_upward_planar(g, SearchConfig(cap=19, allow_long=True))
    assert out.decision == PLANAR
    promote(g, out.witnesses[0])


def test_tiny_graphs_are_planar():
    for g in all_dags(2):
        assert is_upward_planar(g).planar


def test_input_guards():
    with pytest.raises(CyclicGraphError):
        enumerate_upos(from_edges([("e1", "a", "b"), ("e2", "b", "a")]))
    with pytest.raises(GraphTooLarge):
        enumerate_upos(corpus.graph("FIG4"))
    with pytest.raises(ValueError):
        SearchConfig(cap=17)
    assert SearchConfig(cap=17, allow_long=True).cap == 17


def test_budget_is_reported_not_guessed():
    g = corpus.graph("FIG4")
    cfg = SearchConfig(cap=19, allow_long=True, node_budget=500, mode="count")
    assert enumerate_upos(g, cfg).decision == BUDGET
    with pytest.raises(BudgetExhausted):
        count_upos(g, cfg)


def test_search_matches_naive_filter_up_to_four_edges():
    for g in all_dags(4):
        got = enumerate_upos(g, SearchConfig(mode="all"))
        want = naive_upos(g)
        assert got.witnesses == tuple(want), g
        assert got.decision == (PLANAR if want else NOT_PLANAR)


def test_pruned_prefixes_have_no_completion():
    checked = 0
    for g in all_dags(4):
        pruned = []
        enumerate_upos(g, SearchConfig(mode="all"), on_prune=lambda prefix, rule: pruned.append(prefix))
        for prefix in pruned[:6]:
            assert not has_upo_completion(g, prefix), (g, prefix)
            checked += 1
    assert checked > 50


@settings(max_examples=25)
@given(dags(max_edges=6))
def test_results_independent_of_worker_count(g):
    one = enumerate_upos(g, SearchConfig(mode="all"))
    two = enumerate_upos(g, SearchConfig(mode="all", workers=2))
    assert one.witnesses == two.witnesses and one.count == two.count
    first1 = enumerate_upos(g, SearchConfig(mode="first"))
    first2 = enumerate_upos(g, SearchConfig(mode="first", workers=2))
    assert first1.witnesses == first2.witnesses


@given(dags(max_edges=6))
def test_every_witness_validates(g):
    for w in enumerate_upos(g, SearchConfig(mode="all")).witnesses:
        promote(g, w)


def test_outcome_json_shape():
    doc = enumerate_upos(corpus.graph("DIAMOND")).to_json()
    assert doc["decision"] == PLANAR and doc["count"] == 2
    assert doc["witnesses"][0] == ["e1", "e3", "e2", "e4"]
    assert set(doc["statistics"]) == {"nodes", "pruned_U2", "pruned_U3"}


# -- undirected graphs -----------------------------------------------------------


def test_orientations_cover_all_sign_vectors():
    ug = UndirectedGraph(("a", "b", "c"), (("x", "a", "b"), ("y", "b", "c")))
    assert len(list(orientations(ug))) == 4


def test_triangle_and_k4_orientations():
    tri = find_planar_orientation(complete_graph(3))
    assert tri.decision == PLANAR
    promote(tri.orientation, tri.order)
    k4 = find_planar_orientation(complete_graph(4))
    assert k4.decision == PLANAR
    promote(k4.orientation, k4.order)


def test_large_orientation_search_needs_opt_in():
    with pytest.raises(GraphTooLarge):
        find_planar_orientation(complete_bipartite(3, 3), SearchConfig(cap=9))


@pytest.mark.long
def test_k33_has_no_planar_orientation():
    out = find_planar_orientation(complete_bipartite(3, 3), SearchConfig(cap=9, allow_long=True))
    assert out.decision == NOT_PLANAR
    assert out.orientations_tried == 2**9


@pytest.mark.long
def test_fig4_full_count():
    g = corpus.graph("FIG4")
    assert count_upos(g, SearchConfig(cap=19, allow_long=True)) == 1527552
    assert EdgeOrder(corpus.get("FIG4").order.sequence) == is_upward_planar(
        g, SearchConfig(cap=19, allow_long=True)
    ).witnesses[0]
