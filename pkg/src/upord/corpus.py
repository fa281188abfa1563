"""Named fixture graphs shared by tests, scripts and the ``corpus`` command."""

from __future__ import annotations

from dataclasses import dataclass

from upord.axioms import EdgeOrder
from upord.digraph import Digraph, build_digraph
from upord.errors import UnknownFixture


@dataclass(frozen=True)
class Fixture:
    name: str
    graph: Digraph
    order: EdgeOrder | None = None
    note: str = ""


def _fig4() -> Fixture:
    # The POP-graph of the progressive plane graph drawn as "Figure 4". Edge
    # e<k> carries printed label k. Sources in<k> and sinks out<k> are named
    # after the label of their unique edge; x1..x6 are the progressive vertices
    # (x1 is the junction below inputs 2-4, x2 receives 1, 5 and 6, x3 is the
    # lower junction, x4 receives 10 and 11, x5 lies on 15-16, x6 on 17-18).
    edges = [
        ("e1", "in1", "x2"),
        ("e2", "in2", "x1"),
        ("e3", "in3", "x1"),
        ("e4", "in4", "x1"),
        ("e5", "x1", "x2"),
        ("e6", "x1", "x2"),
        ("e7", "x2", "out7"),
        ("e8", "x2", "x3"),
        ("e9", "x1", "x3"),
        ("e10", "in10", "x4"),
        ("e11", "in11", "x4"),
        ("e12", "x4", "x3"),
        ("e13", "x3", "out13"),
        ("e14", "x3", "out14"),
        ("e15", "x4", "x5"),
        ("e16", "x5", "out16"),
        ("e17", "in17", "x6"),
        ("e18", "x6", "out18"),
        ("e19", "in19", "out19"),
    ]
    vertices = [
        "in1", "in2", "in3", "in4", "in10", "in11", "in17", "in19",
        "x1", "x2", "x3", "x4", "x5", "x6",
        "out7", "out13", "out14", "out16", "out18", "out19",
    ]
    g = build_digraph(vertices, edges)
    order = EdgeOrder(tuple(f"e{k}" for k in range(1, 20)))
    return Fixture("FIG4", g, order, "POP-graph with printed edge labels 1..19")


def _build() -> dict[str, Fixture]:
    fx = [
        Fixture("PATH2", build_digraph("abc", [("e1", "a", "b"), ("e2", "b", "c")])),
        Fixture("FORK", build_digraph("abc", [("e1", "a", "b"), ("e2", "a", "c")])),
        Fixture(
            "DIAMOND",
            build_digraph("abcd", [("e1", "a", "b"), ("e2", "a", "c"), ("e3", "b", "d"), ("e4", "c", "d")]),
        ),
        Fixture("TRIANGLE", build_digraph("abc", [("e1", "a", "b"), ("e2", "b", "c"), ("e3", "a", "c")])),
        Fixture("PARALLEL", build_digraph("uv", [("e1", "u", "v"), ("e2", "u", "v")])),
        Fixture("NEST", build_digraph("abvw", [("e1", "a", "v"), ("e2", "b", "v"), ("e3", "a", "w")])),
        Fixture(
            "INTERLEAVE",
            build_digraph(
                ["s1", "s2", "s3", "s4", "v1", "v2"],
                [("x1", "s1", "v1"), ("x2", "s2", "v2"), ("x3", "s3", "v1"), ("x4", "s4", "v2")],
            ),
        ),
        _fig4(),
    ]
    return {f.name: f for f in fx}


FIXTURES: dict[str, Fixture] = _build()


def names() -> list[str]:
    return list(FIXTURES)


def get(name: str) -> Fixture:
    try:
        return FIXTURES[name.upper()]
    except KeyError:
        raise UnknownFixture(name) from None


def graph(name: str) -> Digraph:
    return get(name).graph
