"""Canonical progressive planar (CPP) extensions of upward planarly ordered graphs.

Given a UPO-graph (G, <), every source v of G receives one new in-edge e_v and
every sink w one new out-edge e_w:

* source v: from a fresh vertex when the up-ladder U(v) is empty (case 1),
  otherwise from the smallest member of U(v) (case 2); e_v is ranked
  immediately before O(v)^-.
* sink w: to a fresh vertex when the down-ladder D(w) is empty (case 3),
  otherwise to the smallest member of D(w) (case 4); e_w is ranked
  immediately after I(w)^+.

The result is a progressive graph with a planar order, and restricting that
order back to E(G) recovers <.
"""

from __future__ import annotations

from collections.abc import Hashable, Iterable
from dataclasses import dataclass, field

from upord.axioms import (
    EdgeOrder,
    Hull,
    UpoGraph,
    check_u4,
    is_planar_order,
    is_upo,
    promote,
)
from upord.digraph import Digraph, is_progressive_graph
from upord.errors import (
    ConfigMismatch,
    InternalInvariantViolation,
    SourceMismatch,
    UnknownVertex,
    ValidationFailed,
)


def _out_hull(g: Digraph, order: EdgeOrder, v) -> Hull:
    return Hull.of(order.rank(e) for e in g.out_edges(v))


def _in_hull(g: Digraph, order: EdgeOrder, v) -> Hull:
    return Hull.of(order.rank(e) for e in g.in_edges(v))


def _ladder(u: UpoGraph, v, hull_fn) -> list:
    g, order = u.g, u.order
    if not g.has_vertex(v):
        raise UnknownVertex(v)
    own = hull_fn(g, order, v)
    if own.empty:
        return []
    members = [(hull_fn(g, order, w), w) for w in g.vertices]
    members = [(h, w) for h, w in members if own.is_proper_subset(h)]
    members.sort(key=lambda hw: len(hw[0]))
    for (h1, _), (h2, _) in zip(members, members[1:]):
        if not h1.is_proper_subset(h2):
            raise InternalInvariantViolation("ladder is not a chain under strict inclusion")
    return [w for _, w in members]


def ladder_u(u: UpoGraph, v) -> list:
    """Vertices whose out-hull strictly contains hull(O(v)), smallest hull first."""
    return _ladder(u, v, _out_hull)


def ladder_d(u: UpoGraph, v) -> list:
    """Vertices whose in-hull strictly contains hull(I(v)), smallest hull first."""
    return _ladder(u, v, _in_hull)


# -- single-edge extension ---------------------------------------------------


@dataclass(frozen=True)
class ExtensionStep:
    """One added edge. ``anchor`` is the fresh endpoint (cases 1, 3) or the ladder minimum (2, 4)."""

    case: int
    vertex: Hashable
    edge: Hashable
    anchor: Hashable

    @property
    def at_source(self) -> bool:
        return self.case in (1, 2)

    def endpoints(self) -> tuple:
        return (self.anchor, self.vertex) if self.at_source else (self.vertex, self.anchor)

    def to_json(self) -> dict:
        return {"case": self.case, "vertex": self.vertex, "edge": self.edge, "anchor": self.anchor}


def _fresh(base: str, taken) -> str:
    name = base
    while name in taken:
        name += "'"
    return name


def fresh_names(g: Digraph, v) -> tuple[str, str]:
    """Deterministic (edge id, fresh endpoint id) for the edge added at v."""
    taken = set(g.vertices) | set(g.edge_ids)
    role = "^-" if g.is_source(v) else "^+"
    return _fresh(f"e_{v}", taken), _fresh(f"{v}{role}", taken)


def step_for(u: UpoGraph, v, edge=None, fresh_vertex=None) -> ExtensionStep:
    """The configuration that applies at source or sink v."""
    g = u.g
    if g.degree(v) == 0:
        raise ConfigMismatch(f"isolated vertex {v!r} has no CPP configuration")
    default_edge, default_vertex = fresh_names(g, v)
    edge = default_edge if edge is None else edge
    if g.is_source(v):
        ladder = ladder_u(u, v)
        return ExtensionStep(2, v, edge, ladder[0]) if ladder else ExtensionStep(1, v, edge, fresh_vertex or default_vertex)
    if g.is_sink(v):
        ladder = ladder_d(u, v)
        return ExtensionStep(4, v, edge, ladder[0]) if ladder else ExtensionStep(3, v, edge, fresh_vertex or default_vertex)
    raise ConfigMismatch(f"{v!r} is neither a source nor a sink")


def _check_step(u: UpoGraph, step: ExtensionStep) -> None:
    g = u.g
    v = step.vertex
    if not g.has_vertex(v):
        raise UnknownVertex(v)
    if g.has_edge(step.edge):
        raise ConfigMismatch(f"edge id {step.edge!r} already in use")
    if step.case in (1, 2):
        if not g.is_source(v) or not g.out_edges(v):
            raise ConfigMismatch(f"cases 1 and 2 need a non-isolated source, got {v!r}")
        ladder = ladder_u(u, v)
    elif step.case in (3, 4):
        if not g.is_sink(v) or not g.in_edges(v):
            raise ConfigMismatch(f"cases 3 and 4 need a non-isolated sink, got {v!r}")
        ladder = ladder_d(u, v)
    else:
        raise ConfigMismatch(f"unknown case {step.case!r}")
    if step.case in (1, 3):
        if ladder:
            raise ConfigMismatch(f"case {step.case} needs an empty ladder at {v!r}")
        if g.has_vertex(step.anchor):
            raise ConfigMismatch(f"vertex id {step.anchor!r} already in use")
    elif not ladder:
        raise ConfigMismatch(f"case {step.case} needs a nonempty ladder at {v!r}")
    elif step.anchor != ladder[0]:
        raise ConfigMismatch(f"case {step.case} must attach to {ladder[0]!r}, not {step.anchor!r}")


def insertion_index(u: UpoGraph, step: ExtensionStep) -> int:
    """0-based slot of the new edge in u's edge sequence."""
    g, order = u.g, u.order
    if step.at_source:
        return min(order.rank(e) for e in g.out_edges(step.vertex)) - 1
    return max(order.rank(e) for e in g.in_edges(step.vertex))


def extension_graph(u: UpoGraph, step: ExtensionStep) -> Digraph:
    g = u.g
    s, t = step.endpoints()
    vertices = g.vertices
    if step.case in (1, 3):
        vertices = vertices + (step.anchor,)
    return Digraph(vertices, g.edges + ((step.edge, s, t),))


def extend_once(u: UpoGraph, step: ExtensionStep) -> UpoGraph:
    """Add one edge in one of the four configurations, at its forced rank."""
    u.require_validated()
    _check_step(u, step)
    seq = list(u.order.sequence)
    seq.insert(insertion_index(u, step), step.edge)
    gamma = extension_graph(u, step)
    order = EdgeOrder(tuple(seq))
    try:
        return promote(gamma, order)
    except ValidationFailed as exc:
        raise InternalInvariantViolation(f"extension at {step.vertex!r} is not upward planar") from exc


# -- full extension ----------------------------------------------------------


@dataclass(frozen=True)
class CppExtension:
    source: Digraph
    target: Digraph
    order: EdgeOrder
    vertex_map: dict = field(hash=False)
    edge_map: dict = field(hash=False)
    added: tuple[ExtensionStep, ...] = ()

    def to_json(self) -> dict:
        from upord.io import graph_to_json

        return {
            "source": graph_to_json(self.source),
            "target": graph_to_json(self.target),
            "target_order": list(self.order.sequence),
            "vertex_map": [[k, v] for k, v in self.vertex_map.items()],
            "edge_map": [[k, v] for k, v in self.edge_map.items()],
            "added": [s.to_json() for s in self.added],
        }

    @classmethod
    def from_json(cls, doc: dict) -> CppExtension:
        from upord.io import graph_from_json

        return cls(
            graph_from_json(doc["source"]),
            graph_from_json(doc["target"]),
            EdgeOrder(tuple(doc["target_order"])),
            {k: v for k, v in doc["vertex_map"]},
            {k: v for k, v in doc["edge_map"]},
            tuple(ExtensionStep(**s) for s in doc["added"]),
        )


def _steps(u: UpoGraph) -> list[ExtensionStep]:
    g = u.g
    return [step_for(u, v) for v in g.vertices if g.is_source(v) or g.is_sink(v)]


def build_cpp(u: UpoGraph) -> CppExtension:
    """The unique order-preserving CPP extension of a validated UPO-graph.

    Every added edge sits next to a distinct slot of the original sequence
    (before O(v)^- for a source, after I(w)^+ for a sink), so all edges are
    placed in one pass.
    """
    u.require_validated()
    g = u.g
    if g.isolated_vertices:
        raise ConfigMismatch(f"isolated vertices {list(g.isolated_vertices)!r} have no CPP extension")
    steps = _steps(u)
    before: dict = {}
    after: dict = {}
    for st in steps:
        slot = insertion_index(u, st)
        if st.at_source:
            before[u.order.sequence[slot]] = st.edge
        else:
            after[u.order.sequence[slot - 1]] = st.edge
    seq = []
    for e in u.order.sequence:
        if e in before:
            seq.append(before[e])
        seq.append(e)
        if e in after:
            seq.append(after[e])
    fresh = tuple(st.anchor for st in steps if st.case in (1, 3))
    target = Digraph(g.vertices + fresh, g.edges + tuple((st.edge, *st.endpoints()) for st in steps))
    cpp = CppExtension(
        g,
        target,
        EdgeOrder(tuple(seq)),
        {v: v for v in g.vertices},
        {e: e for e in g.edge_ids},
        tuple(steps),
    )
    verdict = validate_cpp(g, cpp)
    if not verdict.ok:
        raise InternalInvariantViolation(f"constructed extension fails: {verdict.failures()}")
    if not check_u4(target, cpp.order, limit=1).holds:
        raise InternalInvariantViolation("constructed extension violates U4")
    return cpp


def build_cpp_sequential(u: UpoGraph, vertex_order: Iterable) -> CppExtension:
    """Build the extension by repeated :func:`extend_once`, recomputing ladders each step.

    Naming follows the original graph, so the result is comparable with :func:`build_cpp`.
    """
    u.require_validated()
    g = u.g
    names = {v: fresh_names(g, v) for v in g.vertices if g.is_source(v) or g.is_sink(v)}
    current = u
    steps = []
    for v in vertex_order:
        edge, vertex = names[v]
        st = step_for(current, v, edge=edge, fresh_vertex=vertex)
        steps.append(st)
        current = extend_once(current, st)
    return CppExtension(
        g, current.g, current.order, {v: v for v in g.vertices}, {e: e for e in g.edge_ids}, tuple(steps)
    )


# -- validation --------------------------------------------------------------


@dataclass(frozen=True)
class CppVerdict:
    embedding: bool
    target_progressive: bool
    target_planar_order: bool
    e1: bool
    e2: bool
    e3: bool
    e4: bool
    partition: bool
    order_preserving: bool
    messages: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        """All conditions of a CPP extension; order preservation is reported separately."""
        return all(
            (self.embedding, self.target_progressive, self.target_planar_order,
             self.e1, self.e2, self.e3, self.e4, self.partition)
        )

    def failures(self) -> list[str]:
        names = ("embedding", "target_progressive", "target_planar_order", "e1", "e2", "e3", "e4", "partition")
        return [n for n in names if not getattr(self, n)]

    def to_json(self) -> dict:
        out = {n: getattr(self, n) for n in (
            "embedding", "target_progressive", "target_planar_order",
            "e1", "e2", "e3", "e4", "partition", "order_preserving")}
        out["ok"] = self.ok
        out["messages"] = list(self.messages)
        return out


def validate_cpp(g: Digraph, cand: CppExtension) -> CppVerdict:
    """Check every CPP condition from the raw graphs and maps; the added-edge table is ignored."""
    gamma, order = cand.target, cand.order
    phi0, phi1 = cand.vertex_map, cand.edge_map
    msgs: list[str] = []

    embedding = (
        set(phi0) == set(g.vertices)
        and set(phi1) == set(g.edge_ids)
        and len(set(phi0.values())) == len(phi0)
        and len(set(phi1.values())) == len(phi1)
        and all(gamma.has_vertex(x) for x in phi0.values())
        and all(gamma.has_edge(x) for x in phi1.values())
    )
    if embedding:
        embedding = all(
            gamma.src(phi1[e]) == phi0[s] and gamma.tgt(phi1[e]) == phi0[t] for e, s, t in g.edges
        )
    if not embedding:
        msgs.append("phi is not an incidence-preserving injection")
    try:
        order.check_covers(gamma)
        order_ok = True
    except ValueError:
        order_ok = False
        msgs.append("target order does not cover the target edges")

    progressive = is_progressive_graph(gamma)
    planar = progressive and order_ok and is_planar_order(gamma, order)
    if not planar:
        msgs.append("target is not a POP-graph")
    if not embedding:
        return CppVerdict(False, progressive, planar, False, False, False, False, False, False, tuple(msgs))

    boundary = set(gamma.sources) | set(gamma.sinks)
    image = set(phi0.values())
    e1 = image == set(gamma.vertices) - boundary
    e2 = len(gamma.edges) == len(g.edges) + len(g.sources) + len(g.sinks)
    e3 = all(
        not set(gamma.in_edges(phi0[v])) & set(gamma.out_edges(phi0[w]))
        for v in g.sources for w in g.sinks
    )
    e4 = True
    if order_ok:
        mapped = set(phi1.values())
        for e in gamma.edge_ids:
            if e in mapped or e in gamma.input_edges or e in gamma.output_edges:
                continue
            r = order.rank(e)
            outs = [order.rank(x) for x in gamma.out_edges(gamma.src(e))]
            ins = [order.rank(x) for x in gamma.in_edges(gamma.tgt(e))]
            if not (min(outs) < r < max(outs) or min(ins) < r < max(ins)):
                e4 = False
                msgs.append(f"added edge {e!r} is not strictly inside a hull")
    else:
        e4 = False
    for flag, name in ((e1, "E1"), (e2, "E2"), (e3, "E3")):
        if not flag:
            msgs.append(f"{name} fails")

    added = set(gamma.edge_ids) - set(phi1.values())
    pieces = [set(gamma.in_edges(phi0[v])) for v in g.sources]
    pieces += [set(gamma.out_edges(phi0[w])) for w in g.sinks]
    union = set().union(*pieces) if pieces else set()
    partition = (
        all(len(p) == 1 for p in pieces)
        and union == added
        and sum(len(p) for p in pieces) == len(union)
    )
    if not partition:
        msgs.append("added edges are not one in-edge per source and one out-edge per sink")

    preserving = order_ok and all(
        order.rank(phi1[a]) < order.rank(phi1[b])
        for a, b in zip(_induced(g, cand), _induced(g, cand)[1:])
    )
    return CppVerdict(True, progressive, planar, e1, e2, e3, e4, partition, preserving, tuple(msgs))


def _induced(g: Digraph, cand: CppExtension) -> list:
    inverse = {x: e for e, x in cand.edge_map.items()}
    return [inverse[x] for x in cand.order.sequence if x in inverse]


def restrict_order(cpp: CppExtension) -> EdgeOrder:
    """The order induced on E(G) by a valid CPP extension; always upward planar."""
    verdict = validate_cpp(cpp.source, cpp)
    if not verdict.ok:
        raise ValidationFailed(f"not a CPP extension: {verdict.failures()}", verdict)
    order = EdgeOrder(tuple(_induced(cpp.source, cpp)))
    if not is_upo(cpp.source, order):
        raise ValidationFailed("induced order is not upward planar")
    return order


def claim_preserved(cpp: CppExtension) -> bool:
    """Extremal in-/out-edges of G stay extremal after embedding (checked for every edge)."""
    g, gamma = cpp.source, cpp.target
    order_g = EdgeOrder(tuple(_induced(g, cpp)))
    rg, rt = order_g.rank, cpp.order.rank

    def extremes(graph, rank, edges):
        ranks = [rank(x) for x in edges]
        return min(ranks), max(ranks)

    for e, s, t in g.edges:
        x = cpp.edge_map[e]
        for side_g, side_t, vg, vt in (
            (g.in_edges, gamma.in_edges, t, gamma.tgt(x)),
            (g.out_edges, gamma.out_edges, s, gamma.src(x)),
        ):
            lo_g, hi_g = extremes(g, rg, side_g(vg))
            lo_t, hi_t = extremes(gamma, rt, side_t(vt))
            if (rg(e) == lo_g) != (rt(x) == lo_t) or (rg(e) == hi_g) != (rt(x) == hi_t):
                return False
    return True


def cpp_isomorphic(a: CppExtension, b: CppExtension) -> bool:
    """True iff a rank-preserving isomorphism lambda of the targets satisfies phi_b = lambda . phi_a."""
    if a.source != b.source:
        raise SourceMismatch("extensions of different graphs")
    ta, tb = a.target, b.target
    if len(ta.edges) != len(tb.edges) or len(ta.vertices) != len(tb.vertices):
        return False
    lam1 = dict(zip(a.order.sequence, b.order.sequence))
    lam0: dict = {}
    for x in a.order.sequence:
        y = lam1[x]
        for va, vb in ((ta.src(x), tb.src(y)), (ta.tgt(x), tb.tgt(y))):
            if lam0.setdefault(va, vb) != vb:
                return False
    if len(set(lam0.values())) != len(lam0) or len(lam0) != len(ta.vertices):
        return False
    g = a.source
    if any(lam1[a.edge_map[e]] != b.edge_map[e] for e in g.edge_ids):
        return False
    return all(lam0.get(a.vertex_map[v]) == b.vertex_map[v] for v in g.vertices)


def relabel_cpp(cpp: CppExtension, vertex_names: dict, edge_names: dict) -> CppExtension:
    """Rename target vertices and edges (missing keys keep their names)."""
    vn = {v: vertex_names.get(v, v) for v in cpp.target.vertices}
    en = {e: edge_names.get(e, e) for e in cpp.target.edge_ids}
    return CppExtension(
        cpp.source,
        cpp.target.relabeled(vn, en),
        EdgeOrder(tuple(en[e] for e in cpp.order.sequence)),
        {v: vn[x] for v, x in cpp.vertex_map.items()},
        {e: en[x] for e, x in cpp.edge_map.items()},
        tuple(
            ExtensionStep(s.case, s.vertex, en[s.edge], vn[s.anchor]) for s in cpp.added
        ),
    )
