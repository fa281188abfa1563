import pytest
from hypothesis import given

from upord import corpus
from upord.digraph import (
    Digraph,
    build_digraph,
    edge_poset,
    edge_reaches,
    from_edges,
    is_acyclic,
    is_progressive_graph,
    reflexive_reaches,
    subgraph,
    vertex_reaches,
)
from upord.errors import DanglingEndpoint, DuplicateId, SelfLoop, UnknownEdge, UnknownVertex
from tests.conftest import dags


def test_duplicate_ids_rejected():
    with pytest.raises(DuplicateId):
        build_digraph("aa", [])
    with pytest.raises(DuplicateId):
        build_digraph("ab", [("e", "a", "b"), ("e", "a", "b")])


def test_dangling_endpoint_and_self_loop():
    with pytest.raises(DanglingEndpoint):
        build_digraph("a", [("e", "a", "b")])
    with pytest.raises(SelfLoop):
        build_digraph("a", [("e", "a", "a")])


def test_unknown_lookups():
    g = corpus.graph("PATH2")
    with pytest.raises(UnknownVertex):
        g.in_edges("zz")
    with pytest.raises(UnknownEdge):
        g.src("zz")


def test_parallel_edges_kept_distinct():
    g = corpus.graph("PARALLEL")
    assert g.out_edges("u") == ("e1", "e2")
    assert g.degree("v") == 2


def test_classification_on_diamond():
    g = corpus.graph("DIAMOND")
    assert g.sources == ("a",)
    assert g.sinks == ("d",)
    assert g.progressive_vertices == ("b", "c")
    assert g.input_edges == {"e1", "e2"}
    assert g.output_edges == {"e3", "e4"}


def test_isolated_vertex_is_source_and_sink():
    g = build_digraph("abz", [("e1", "a", "b")])
    assert g.isolated_vertices == ("z",)
    assert g.is_source("z") and g.is_sink("z")
    assert not is_progressive_graph(g)


def test_reachability_forms():
    g = corpus.graph("PATH2")
    assert vertex_reaches(g, "a", "c")
    assert not vertex_reaches(g, "a", "a")
    assert reflexive_reaches(g, "a", "a")
    assert edge_reaches(g, "e1", "e2")
    assert not edge_reaches(g, "e1", "e1")
    assert not edge_reaches(g, "e2", "e1")


def test_edge_poset_of_triangle():
    g = corpus.graph("TRIANGLE")
    assert edge_poset(g) == {("e1", "e2")}


def test_cycle_detection():
    g = from_edges([("e1", "a", "b"), ("e2", "b", "a")])
    assert not is_acyclic(g)
    assert g.topological_order is None
    assert not is_progressive_graph(g)


def test_progressive_fixtures():
    assert is_progressive_graph(corpus.graph("FIG4"))
    assert not is_progressive_graph(corpus.graph("DIAMOND"))


def test_subgraph_checks_endpoints():
    g = corpus.graph("DIAMOND")
    h = subgraph(g, "abd", ["e1", "e3"])
    assert h.edge_ids == ("e1", "e3")
    with pytest.raises(DanglingEndpoint):
        subgraph(g, "ab", ["e3"])


@given(dags())
def test_edge_poset_is_transitive_and_irreflexive(g: Digraph):
    rel = edge_poset(g)
    assert all(a != b for a, b in rel)
    for a, b in rel:
        for c, d in rel:
            if b == c:
                assert (a, d) in rel


@given(dags())
def test_reversal_swaps_sources_and_sinks(g: Digraph):
    r = g.reversed()
    assert set(r.sources) == set(g.sinks)
    assert set(r.sinks) == set(g.sources)
    assert r.reversed() == g
