"""Directed multigraphs with stable identifiers.

A :class:`Digraph` is immutable after construction. Incidence sets, source and
sink classification and reachability are derived from the two stored fields and
cached on first use, so every query is a pure function of the graph.
"""

from __future__ import annotations

from collections.abc import Hashable, Iterable, Sequence
from dataclasses import dataclass, field
from functools import cached_property

from upord.errors import (
    DanglingEndpoint,
    DuplicateId,
    SelfLoop,
    UnknownEdge,
    UnknownVertex,
)

VertexId = Hashable
EdgeId = Hashable
Edge = tuple[EdgeId, VertexId, VertexId]


def id_key(x: Hashable) -> tuple:
    """Sort key that orders ints numerically, then everything else as strings."""
    if isinstance(x, bool) or not isinstance(x, int):
        return (1, str(x))
    return (0, x)


@dataclass(frozen=True)
class Digraph:
    vertices: tuple[VertexId, ...]
    edges: tuple[Edge, ...]
    _src: dict = field(init=False, repr=False, compare=False)
    _tgt: dict = field(init=False, repr=False, compare=False)
    _in: dict = field(init=False, repr=False, compare=False)
    _out: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        vertices = tuple(self.vertices)
        edges = tuple((e, s, t) for e, s, t in self.edges)
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "edges", edges)
        vset = set()
        for v in vertices:
            if v in vset:
                raise DuplicateId(f"duplicate vertex id {v!r}")
            vset.add(v)
        src: dict = {}
        tgt: dict = {}
        inc: dict = {v: [] for v in vertices}
        out: dict = {v: [] for v in vertices}
        for e, s, t in edges:
            if e in src:
                raise DuplicateId(f"duplicate edge id {e!r}")
            if s not in vset or t not in vset:
                missing = s if s not in vset else t
                raise DanglingEndpoint(f"edge {e!r} has unknown endpoint {missing!r}")
            if s == t:
                raise SelfLoop(f"edge {e!r} is a self-loop at {s!r}")
            src[e] = s
            tgt[e] = t
            out[s].append(e)
            inc[t].append(e)
        object.__setattr__(self, "_src", src)
        object.__setattr__(self, "_tgt", tgt)
        object.__setattr__(self, "_in", {v: tuple(es) for v, es in inc.items()})
        object.__setattr__(self, "_out", {v: tuple(es) for v, es in out.items()})

    # -- incidence ---------------------------------------------------------

    @property
    def edge_ids(self) -> tuple[EdgeId, ...]:
        return tuple(e for e, _, _ in self.edges)

    def __len__(self) -> int:
        return len(self.edges)

    def has_vertex(self, v: VertexId) -> bool:
        return v in self._in

    def has_edge(self, e: EdgeId) -> bool:
        return e in self._src

    def src(self, e: EdgeId) -> VertexId:
        try:
            return self._src[e]
        except KeyError:
            raise UnknownEdge(e) from None

    def tgt(self, e: EdgeId) -> VertexId:
        try:
            return self._tgt[e]
        except KeyError:
            raise UnknownEdge(e) from None

    def in_edges(self, v: VertexId) -> tuple[EdgeId, ...]:
        try:
            return self._in[v]
        except KeyError:
            raise UnknownVertex(v) from None

    def out_edges(self, v: VertexId) -> tuple[EdgeId, ...]:
        try:
            return self._out[v]
        except KeyError:
            raise UnknownVertex(v) from None

    def incident_edges(self, v: VertexId) -> tuple[EdgeId, ...]:
        return self.in_edges(v) + self.out_edges(v)

    def degree(self, v: VertexId) -> int:
        return len(self.in_edges(v)) + len(self.out_edges(v))

    # -- classification ----------------------------------------------------

    @cached_property
    def sources(self) -> tuple[VertexId, ...]:
        return tuple(v for v in self.vertices if not self._in[v])

    @cached_property
    def sinks(self) -> tuple[VertexId, ...]:
        return tuple(v for v in self.vertices if not self._out[v])

    def is_source(self, v: VertexId) -> bool:
        return not self.in_edges(v)

    def is_sink(self, v: VertexId) -> bool:
        return not self.out_edges(v)

    def is_progressive_vertex(self, v: VertexId) -> bool:
        return bool(self.in_edges(v)) and bool(self.out_edges(v))

    @cached_property
    def progressive_vertices(self) -> tuple[VertexId, ...]:
        return tuple(v for v in self.vertices if self._in[v] and self._out[v])

    @cached_property
    def input_edges(self) -> frozenset:
        """Edges whose source endpoint is a source of the graph."""
        return frozenset(e for e, s, _ in self.edges if not self._in[s])

    @cached_property
    def output_edges(self) -> frozenset:
        """Edges whose target endpoint is a sink of the graph."""
        return frozenset(e for e, _, t in self.edges if not self._out[t])

    @cached_property
    def isolated_vertices(self) -> tuple[VertexId, ...]:
        return tuple(v for v in self.vertices if not self._in[v] and not self._out[v])

    # -- reachability ------------------------------------------------------

    @cached_property
    def _descendants(self) -> dict:
        # BFS from every vertex; terminates on cyclic graphs too.
        desc = {}
        for v in self.vertices:
            seen = set()
            stack = [self._tgt[e] for e in self._out[v]]
            while stack:
                w = stack.pop()
                if w in seen:
                    continue
                seen.add(w)
                stack.extend(self._tgt[e] for e in self._out[w])
            desc[v] = frozenset(seen)
        return desc

    @cached_property
    def topological_order(self) -> tuple[VertexId, ...] | None:
        """Kahn order with ties broken by vertex position; None when cyclic."""
        indeg = {v: len(self._in[v]) for v in self.vertices}
        pos = {v: i for i, v in enumerate(self.vertices)}
        ready = sorted((v for v in self.vertices if indeg[v] == 0), key=pos.__getitem__)
        order = []
        while ready:
            v = ready.pop(0)
            order.append(v)
            fresh = []
            for e in self._out[v]:
                w = self._tgt[e]
                indeg[w] -= 1
                if indeg[w] == 0:
                    fresh.append(w)
            if fresh:
                ready = sorted(ready + fresh, key=pos.__getitem__)
        if len(order) != len(self.vertices):
            return None
        return tuple(order)

    def descendants(self, v: VertexId) -> frozenset:
        if v not in self._in:
            raise UnknownVertex(v)
        return self._descendants[v]

    # -- derived graphs ----------------------------------------------------

    def reversed(self) -> Digraph:
        return Digraph(self.vertices, tuple((e, t, s) for e, s, t in self.edges))

    def relabeled(self, vmap: dict, emap: dict) -> Digraph:
        return Digraph(
            tuple(vmap[v] for v in self.vertices),
            tuple((emap[e], vmap[s], vmap[t]) for e, s, t in self.edges),
        )


def build_digraph(vertices: Iterable[VertexId], edges: Iterable[Sequence]) -> Digraph:
    return Digraph(tuple(vertices), tuple(tuple(e) for e in edges))


def from_edges(edges: Iterable[Sequence]) -> Digraph:
    """Build a graph whose vertex list is the order of first appearance in ``edges``."""
    edges = [tuple(e) for e in edges]
    seen: dict = {}
    for _, s, t in edges:
        seen.setdefault(s, None)
        seen.setdefault(t, None)
    return Digraph(tuple(seen), tuple(edges))


def is_acyclic(g: Digraph) -> bool:
    return g.topological_order is not None


def vertex_reaches(g: Digraph, v: VertexId, w: VertexId) -> bool:
    """True iff a directed path with at least one edge runs from v to w."""
    if not g.has_vertex(w):
        raise UnknownVertex(w)
    return w in g.descendants(v)


def reflexive_reaches(g: Digraph, v: VertexId, w: VertexId) -> bool:
    if not g.has_vertex(w):
        raise UnknownVertex(w)
    return v == w or w in g.descendants(v)


def edge_reaches(g: Digraph, e1: EdgeId, e2: EdgeId) -> bool:
    """True iff some directed path starts with e1 and ends with e2 (never for e1 == e2)."""
    t1 = g.tgt(e1)
    s2 = g.src(e2)
    if e1 == e2:
        return False
    return reflexive_reaches(g, t1, s2)


def edge_poset(g: Digraph) -> frozenset[tuple[EdgeId, EdgeId]]:
    """The strict order e1 -> e2 on edges, as a set of pairs."""
    pairs = set()
    for e1, _, t1 in g.edges:
        reach = g.descendants(t1) | {t1}
        for e2, s2, _ in g.edges:
            if e1 != e2 and s2 in reach:
                pairs.add((e1, e2))
    return frozenset(pairs)


def is_progressive_graph(g: Digraph) -> bool:
    """Acyclic, and every source and every sink has total degree one."""
    if not is_acyclic(g):
        return False
    return all(g.degree(v) == 1 for v in g.vertices if g.is_source(v) or g.is_sink(v))


def subgraph(g: Digraph, vs: Iterable[VertexId], es: Iterable[EdgeId]) -> Digraph:
    """Sub-multigraph on the given vertices and edges, in the parent's order."""
    vs = set(vs)
    es = set(es)
    for v in vs:
        if not g.has_vertex(v):
            raise UnknownVertex(v)
    for e in es:
        s, t = g.src(e), g.tgt(e)
        if s not in vs or t not in vs:
            raise DanglingEndpoint(f"edge {e!r} leaves the vertex subset")
    return Digraph(
        tuple(v for v in g.vertices if v in vs),
        tuple(edge for edge in g.edges if edge[0] in es),
    )
