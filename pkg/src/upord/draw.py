"""Layered drawings of POP- and UPO-graphs with an exact geometric certificate.

Layout of a POP-graph (G, <):

* layer(v) is the longest-path depth from the sources; every sink is pushed to
  the deepest layer D so that sources and sinks lie on the two box sides;
* vertex row 2L holds the layer-L vertices, corridor row 2L+1 sits below it;
* edge e of rank r occupies column 2r on every row strictly between its ends;
* a vertex sits on an odd column next to its extremal edges: 2*I(v)^+ + 1 when
  it has in-edges, 2*O(v)^- - 1 for a source.

Between two consecutive rows only one vertex row's fans move sideways, and a
planar order keeps every edge ranked strictly inside a fan's hull attached
below (resp. above) that vertex, so fans on the same row never overlap.
:func:`check_drawing` certifies this with integer orientation tests rather
than trusting the argument.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from xml.sax.saxutils import escape

from upord.axioms import EdgeOrder, UpoGraph, is_planar_order
from upord.digraph import Digraph, id_key, is_progressive_graph
from upord.errors import CertificateFailed, NotPOP

Point = tuple[int, int]


@dataclass(frozen=True)
class Drawing:
    graph: Digraph
    coords: dict = field(hash=False)
    polylines: dict = field(hash=False)
    box: tuple[int, int, int, int] | None = None  # (x_min, y_min, x_max, y_max)
    layers: dict = field(default_factory=dict, hash=False)
    labels: dict = field(default_factory=dict, hash=False)
    hidden_vertices: frozenset = frozenset()
    hidden_edges: frozenset = frozenset()

    def visible_graph(self) -> Digraph:
        g = self.graph
        return Digraph(
            tuple(v for v in g.vertices if v not in self.hidden_vertices),
            tuple(t for t in g.edges if t[0] not in self.hidden_edges),
        )

    def to_json(self) -> dict:
        g = self.graph
        return {
            "vertices": [
                {"id": v, "x": self.coords[v][0], "y": self.coords[v][1],
                 "layer": self.layers.get(v), "hidden": v in self.hidden_vertices}
                for v in g.vertices
            ],
            "edges": [
                {"id": e, "src": s, "tgt": t, "points": [list(p) for p in self.polylines[e]],
                 "label": self.labels.get(e), "hidden": e in self.hidden_edges}
                for e, s, t in g.edges
            ],
            "box": list(self.box) if self.box else None,
        }


@dataclass(frozen=True)
class GeometryCertificate:
    crossing_free: bool
    monotone: bool
    boxed: bool | None
    violations: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return self.crossing_free and self.monotone and self.boxed is not False

    def to_json(self) -> dict:
        return {
            "crossing_free": self.crossing_free,
            "monotone": self.monotone,
            "boxed": self.boxed,
            "ok": self.ok,
            "violations": list(self.violations),
        }


# -- layout ------------------------------------------------------------------


def layers(g: Digraph) -> dict:
    depth: dict = {}
    for v in g.topological_order:
        ins = g.in_edges(v)
        depth[v] = 1 + max(depth[g.src(e)] for e in ins) if ins else 0
    deepest = max(depth.values(), default=0)
    for v in g.sinks:
        if g.in_edges(v):
            depth[v] = deepest
    return depth


def layout_pop(g: Digraph, order: EdgeOrder) -> Drawing:
    if not is_progressive_graph(g) or not is_planar_order(g, order):
        raise NotPOP("layout needs a progressive graph with a planar order")
    rank = order.ranks
    layer = layers(g)
    coords: dict = {}
    for v in g.vertices:
        ins = g.in_edges(v)
        x = 2 * max(rank[e] for e in ins) + 1 if ins else 2 * min(rank[e] for e in g.out_edges(v)) - 1
        coords[v] = (x, -2 * layer[v])
    polylines = {}
    for e, s, t in g.edges:
        col = 2 * rank[e]
        inner = [(col, -row) for row in range(2 * layer[s] + 1, 2 * layer[t])]
        polylines[e] = (coords[s], *inner, coords[t])
    xs = [p[0] for pl in polylines.values() for p in pl]
    deepest = max(layer.values(), default=0)
    box = (min(xs) - 1, -2 * deepest, max(xs) + 1, 0)
    d = Drawing(g, coords, polylines, box, layer, dict(rank))
    cert = check_drawing(d)
    if not cert.ok:
        raise CertificateFailed("layout of a POP-graph failed its certificate", cert)
    return d


def layout_upo(u: UpoGraph) -> Drawing:
    """Draw the CPP-extension and hide what it added; labels are ranks in u's order."""
    from upord.extension import build_cpp

    cpp = build_cpp(u)
    full = layout_pop(cpp.target, cpp.order)
    phi0, phi1 = cpp.vertex_map, cpp.edge_map
    d = Drawing(
        full.graph,
        full.coords,
        full.polylines,
        full.box,
        full.layers,
        {phi1[e]: r for e, r in u.order.ranks.items()},
        frozenset(full.graph.vertices) - set(phi0.values()),
        frozenset(full.graph.edge_ids) - set(phi1.values()),
    )
    cert = check_drawing(d, d.visible_graph(), boxed=False)
    if not cert.ok:
        raise CertificateFailed("visible part of the drawing failed its certificate", cert)
    return d


# -- certificate ---------------------------------------------------------------


def _orient(a: Point, b: Point, c: Point) -> int:
    v = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    return (v > 0) - (v < 0)


def _on_segment(p: Point, a: Point, b: Point) -> bool:
    return (
        _orient(a, b, p) == 0
        and min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
        and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])
    )


def segments_intersect(a: Point, b: Point, c: Point, d: Point) -> bool:
    """Closed-segment intersection with exact integer arithmetic."""
    o1, o2, o3, o4 = _orient(a, b, c), _orient(a, b, d), _orient(c, d, a), _orient(c, d, b)
    if o1 != o2 and o3 != o4 and 0 not in (o1, o2, o3, o4):
        return True
    return (
        (o1 == 0 and _on_segment(c, a, b))
        or (o2 == 0 and _on_segment(d, a, b))
        or (o3 == 0 and _on_segment(a, c, d))
        or (o4 == 0 and _on_segment(b, c, d))
    )


def _touch_only_at(p: Point, a: Point, b: Point, c: Point, d: Point) -> bool:
    """Segments ab and cd both end at p; true iff p is their only common point."""
    u = b if a == p else a
    w = d if c == p else c
    if _orient(p, u, w) != 0:
        return True
    # collinear: overlap beyond p iff both run away from p in the same direction
    return (u[0] - p[0]) * (w[0] - p[0]) + (u[1] - p[1]) * (w[1] - p[1]) < 0


def check_drawing(d: Drawing, g: Digraph | None = None, boxed: bool | None = None) -> GeometryCertificate:
    """Certify the drawing of g (default: the whole drawn graph).

    ``boxed`` defaults to whether the drawing has a box; when checked, sources
    must lie on the top side, sinks on the bottom side and everything else
    strictly inside.
    """
    g = d.graph if g is None else g
    boxed = d.box is not None if boxed is None else boxed
    violations: list[str] = []
    monotone = True
    crossing_free = True

    vpos = {}
    for v in g.vertices:
        if v not in d.coords:
            violations.append(f"vertex {v!r} has no coordinates")
            crossing_free = False
            continue
        p = d.coords[v]
        if p in vpos:
            violations.append(f"vertices {vpos[p]!r} and {v!r} share {p}")
            crossing_free = False
        vpos[p] = v

    segs = []  # (edge, index, a, b)
    for e, s, t in g.edges:
        pl = d.polylines.get(e)
        if not pl or len(pl) < 2 or pl[0] != d.coords.get(s) or pl[-1] != d.coords.get(t):
            violations.append(f"edge {e!r} is not drawn between its endpoints")
            crossing_free = False
            continue
        for i, (a, b) in enumerate(zip(pl, pl[1:])):
            if not b[1] < a[1]:
                monotone = False
                violations.append(f"edge {e!r} segment {i} is not strictly descending")
            segs.append((e, i, a, b))

    ends = {e: (d.coords.get(s), d.coords.get(t)) for e, s, t in g.edges}
    for e, i, a, b in segs:
        for p, v in vpos.items():
            if p in ends[e] and p in (a, b):
                continue
            if _on_segment(p, a, b):
                crossing_free = False
                violations.append(f"edge {e!r} segment {i} passes through vertex {v!r}")

    # y-extent buckets keep the pair scan near linear for layered drawings
    segs.sort(key=lambda s: -max(s[2][1], s[3][1]))
    for k, (e1, i1, a, b) in enumerate(segs):
        lo1 = min(a[1], b[1])
        for e2, i2, c, dd in segs[k + 1:]:
            if max(c[1], dd[1]) < lo1:
                break
            if e1 == e2 and abs(i1 - i2) <= 1:
                continue
            if max(a[0], b[0]) < min(c[0], dd[0]) or max(c[0], dd[0]) < min(a[0], b[0]):
                continue
            if not segments_intersect(a, b, c, dd):
                continue
            shared = {a, b} & {c, dd} & set(ends[e1]) & set(ends[e2])
            if shared and all(_touch_only_at(p, a, b, c, dd) for p in shared) and len(shared) == 1:
                continue
            crossing_free = False
            violations.append(f"segments {e1!r}[{i1}] and {e2!r}[{i2}] intersect")

    box_ok = None
    if boxed:
        box_ok = d.box is not None
        if box_ok:
            x0, y0, x1, y1 = d.box
            for v, (x, y) in ((v, d.coords[v]) for v in g.vertices if v in d.coords):
                if g.is_source(v):
                    good = y == y1 and x0 < x < x1
                elif g.is_sink(v):
                    good = y == y0 and x0 < x < x1
                else:
                    good = y0 < y < y1 and x0 < x < x1
                if not good:
                    box_ok = False
                    violations.append(f"vertex {v!r} is misplaced relative to the box")
            for e, i, a, b in segs:
                if not all(x0 < p[0] < x1 and y0 <= p[1] <= y1 for p in (a, b)):
                    box_ok = False
                    violations.append(f"edge {e!r} leaves the box")
        else:
            violations.append("drawing has no box")
    return GeometryCertificate(crossing_free, monotone, box_ok, tuple(violations))


def vertex_rotations(d: Drawing, g: Digraph | None = None) -> dict:
    """Left-to-right (in-edges, out-edges) at each vertex, read off the geometry."""
    g = d.visible_graph() if g is None else g
    out = {}
    for v in g.vertices:
        vx, vy = d.coords[v]

        def slope(e, incoming):
            pl = d.polylines[e]
            px, py = pl[-2] if incoming else pl[1]
            return Fraction(px - vx, abs(py - vy))

        out[v] = (
            tuple(sorted(g.in_edges(v), key=lambda e: slope(e, True))),
            tuple(sorted(g.out_edges(v), key=lambda e: slope(e, False))),
        )
    return out


# -- vector output -------------------------------------------------------------


@dataclass(frozen=True)
class SvgStyle:
    labels: bool = True
    box: bool = True
    unit: int = 24
    margin: int = 24
    vertex_radius: float = 3.5


def _fmt(v: float) -> str:
    s = f"{v:.2f}".rstrip("0").rstrip(".")
    return "0" if s == "-0" else s


def emit_svg(d: Drawing, style: SvgStyle = SvgStyle()) -> str:
    visible = d.visible_graph()
    cert = check_drawing(d, visible, boxed=False)
    if not cert.ok:
        raise CertificateFailed("refusing to emit an uncertified drawing", cert)
    full = check_drawing(d) if d.box is not None else None

    pts = [p for pl in d.polylines.values() for p in pl] + list(d.coords.values())
    x0 = min(p[0] for p in pts) - 1 if d.box is None else d.box[0]
    x1 = max(p[0] for p in pts) + 1 if d.box is None else d.box[2]
    y0 = min(p[1] for p in pts) if d.box is None else d.box[1]
    y1 = max(p[1] for p in pts) if d.box is None else d.box[3]
    u, m = style.unit, style.margin

    def X(x):
        return _fmt(m + (x - x0) * u)

    def Y(y):
        return _fmt(m + (y1 - y) * u)

    width = _fmt(2 * m + (x1 - x0) * u)
    height = _fmt(2 * m + (y1 - y0) * u)
    meta = {"certificate": cert.to_json(), "routing_certificate": full.to_json() if full else None}
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f"<metadata>{escape(json.dumps(meta, sort_keys=True))}</metadata>",
        "<defs>",
        '<marker id="arrow" viewBox="0 0 10 10" refX="10" refY="5" markerWidth="7" markerHeight="7" '
        'orient="auto-start-reverse">',
        '<polygon points="0,0 10,5 0,10" fill="black"/>',
        "</marker>",
        "</defs>",
    ]
    if style.box and d.box is not None:
        bx0, by0, bx1, by1 = d.box
        lines.append(
            f'<rect x="{X(bx0)}" y="{Y(by1)}" width="{_fmt((bx1 - bx0) * u)}" height="{_fmt((by1 - by0) * u)}" '
            'fill="none" stroke="gray" stroke-dasharray="6,4"/>'
        )
    rank = {e: d.labels.get(e, 0) for e in visible.edge_ids}
    for e in sorted(visible.edge_ids, key=lambda e: (rank[e], id_key(e))):
        pl = d.polylines[e]
        path = " ".join(("M" if i == 0 else "L") + f"{X(x)},{Y(y)}" for i, (x, y) in enumerate(pl))
        lines.append(
            f'<path id="edge-{escape(str(e))}" d="{path}" fill="none" stroke="black" marker-end="url(#arrow)"/>'
        )
    if style.labels:
        for e in sorted(visible.edge_ids, key=lambda e: (rank[e], id_key(e))):
            if e not in d.labels:
                continue
            pl = d.polylines[e]
            a, b = pl[(len(pl) - 1) // 2], pl[len(pl) // 2]
            lx, ly = (a[0] + b[0]) / 2, (a[1] + b[1]) / 2
            lines.append(
                f'<text class="rank" x="{_fmt(m + (lx - x0) * u + 4)}" y="{_fmt(m + (y1 - ly) * u - 4)}" '
                f'font-size="11">{d.labels[e]}</text>'
            )
    for v in sorted(visible.vertices, key=id_key):
        x, y = d.coords[v]
        lines.append(f'<circle cx="{X(x)}" cy="{Y(y)}" r="{_fmt(style.vertex_radius)}" fill="black"/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"

