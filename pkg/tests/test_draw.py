import re

import pytest
from hypothesis import given

from upord import corpus
from upord.axioms import EdgeOrder, promote
from upord.digraph import build_digraph, from_edges
from upord.draw import (
    Drawing,
    SvgStyle,
    check_drawing,
    emit_svg,
    layout_pop,
    layout_upo,
    segments_intersect,
    vertex_rotations,
)
from upord.errors import CertificateFailed, NotPOP
from upord.extension import build_cpp
from upord.search import enumerate_upos
from tests.conftest import upo_graphs


def O(*edges):
    return EdgeOrder(edges)


def certify(d):
    full = check_drawing(d)
    visible = check_drawing(d, d.visible_graph(), boxed=False)
    return full, visible


def expected_rotations(g, order):
    return {
        v: (tuple(sorted(g.in_edges(v), key=order.rank)), tuple(sorted(g.out_edges(v), key=order.rank)))
        for v in g.vertices
    }


def test_segment_predicate():
    assert segments_intersect((0, 0), (2, 2), (0, 2), (2, 0))
    assert segments_intersect((0, 0), (2, 0), (1, 0), (3, 0))
    assert not segments_intersect((0, 0), (1, 1), (2, 2), (3, 3))
    assert segments_intersect((0, 0), (2, 2), (1, 1), (5, 0))


def test_path_of_three_edges():
    c = build_cpp(promote(from_edges([("e", "s", "t")]), O("e")))
    d = layout_pop(c.target, c.order)
    cert = check_drawing(d)
    assert cert.ok and cert.boxed
    ys = [d.coords[v][1] for v in ("s^-", "s", "t", "t^+")]
    assert ys == sorted(ys, reverse=True) and len(set(ys)) == 4


def test_layout_pop_rejects_non_pop():
    with pytest.raises(NotPOP):
        layout_pop(corpus.graph("DIAMOND"), O("e1", "e3", "e2", "e4"))
    f = corpus.get("FIG4")
    with pytest.raises(NotPOP):
        layout_pop(f.graph, f.order.with_ranks_swapped(7, 9))


def test_diamond_extension_is_boxed_and_crossing_free():
    c = build_cpp(promote(corpus.graph("DIAMOND"), O("e1", "e3", "e2", "e4")))
    d = layout_pop(c.target, c.order)
    cert = check_drawing(d)
    assert cert.crossing_free and cert.monotone and cert.boxed
    assert len(d.polylines) == 6


def test_fig4_rotations_match_printed_order():
    f = corpus.get("FIG4")
    d = layout_pop(f.graph, f.order)
    assert check_drawing(d).ok
    assert vertex_rotations(d) == expected_rotations(f.graph, f.order)


@pytest.mark.parametrize("name", ["DIAMOND", "NEST", "TRIANGLE", "INTERLEAVE", "PARALLEL"])
def test_every_corpus_upo_draws(name):
    g = corpus.graph(name)
    for w in enumerate_upos(g).witnesses:
        d = layout_upo(promote(g, w))
        full, visible = certify(d)
        assert full.ok and full.boxed and visible.ok
        assert vertex_rotations(d) == expected_rotations(g, w)
        assert d.visible_graph().edges == g.edges


def test_triangle_orders_are_mirror_images():
    g = corpus.graph("TRIANGLE")
    left = vertex_rotations(layout_upo(promote(g, O("e3", "e1", "e2"))))
    right = vertex_rotations(layout_upo(promote(g, O("e1", "e2", "e3"))))
    assert left["a"][1] == ("e3", "e1") and right["a"][1] == ("e1", "e3")
    assert left["c"][0] == ("e3", "e2") and right["c"][0] == ("e2", "e3")


def test_diamond_orders_are_mirror_images():
    g = corpus.graph("DIAMOND")
    a = vertex_rotations(layout_upo(promote(g, O("e1", "e3", "e2", "e4"))))
    b = vertex_rotations(layout_upo(promote(g, O("e2", "e4", "e1", "e3"))))
    for v in g.vertices:
        assert a[v][0] == tuple(reversed(b[v][0])) and a[v][1] == tuple(reversed(b[v][1]))


def test_hand_made_crossing_is_caught():
    g = build_digraph("abcd", [("x", "a", "d"), ("y", "b", "c")])
    coords = {"a": (0, 0), "b": (2, 0), "c": (0, -2), "d": (2, -2)}
    d = Drawing(g, coords, {"x": ((0, 0), (2, -2)), "y": ((2, 0), (0, -2))})
    cert = check_drawing(d)
    assert not cert.crossing_free and cert.monotone
    assert any("'x'" in v and "'y'" in v for v in cert.violations)


def test_hand_made_horizontal_edge_is_caught():
    g = build_digraph("ab", [("x", "a", "b")])
    d = Drawing(g, {"a": (0, 0), "b": (2, 0)}, {"x": ((0, 0), (2, 0))})
    cert = check_drawing(d)
    assert not cert.monotone and not cert.ok


def test_edge_through_vertex_is_caught():
    g = build_digraph("abc", [("x", "a", "c"), ("y", "b", "c")])
    coords = {"a": (0, 0), "b": (0, -1), "c": (0, -2)}
    d = Drawing(g, coords, {"x": ((0, 0), (0, -2)), "y": ((0, -1), (0, -2))})
    assert not check_drawing(d).crossing_free


def test_shared_endpoint_is_exempt():
    g = build_digraph("abc", [("x", "a", "b"), ("y", "a", "c")])
    coords = {"a": (0, 0), "b": (-1, -1), "c": (1, -1)}
    d = Drawing(g, coords, {"x": ((0, 0), (-1, -1)), "y": ((0, 0), (1, -1))})
    assert check_drawing(d).ok


def test_overlapping_parallel_segments_are_caught():
    g = build_digraph("ab", [("x", "a", "b"), ("y", "a", "b")])
    coords = {"a": (0, 0), "b": (0, -2)}
    d = Drawing(g, coords, {"x": ((0, 0), (0, -2)), "y": ((0, 0), (0, -2))})
    assert not check_drawing(d).crossing_free


def test_svg_counts_and_determinism():
    d = layout_upo(promote(corpus.graph("DIAMOND"), O("e1", "e3", "e2", "e4")))
    svg = emit_svg(d)
    assert svg.count("<path") == 4
    assert "stroke-dasharray" in svg
    assert svg == emit_svg(layout_upo(promote(corpus.graph("DIAMOND"), O("e1", "e3", "e2", "e4"))))
    assert "stroke-dasharray" not in emit_svg(d, SvgStyle(box=False))
    assert 'class="rank"' not in emit_svg(d, SvgStyle(labels=False))


def test_fig4_svg_has_nineteen_labels():
    f = corpus.get("FIG4")
    svg = emit_svg(layout_upo(promote(f.graph, f.order)))
    labels = re.findall(r'class="rank"[^>]*>(\d+)<', svg)
    assert sorted(map(int, labels)) == list(range(1, 20))
    assert svg.count("<path") == 19


def test_svg_refuses_bad_drawing():
    g = build_digraph("ab", [("x", "a", "b")])
    d = Drawing(g, {"a": (0, 0), "b": (2, 0)}, {"x": ((0, 0), (2, 0))})
    with pytest.raises(CertificateFailed):
        emit_svg(d)


@given(upo_graphs(max_edges=8))
def test_random_upos_draw_with_faithful_rotations(gu):
    g, order = gu
    d = layout_upo(promote(g, order))
    full, visible = certify(d)
    assert full.ok and full.boxed and visible.ok
    assert vertex_rotations(d) == expected_rotations(g, order)
