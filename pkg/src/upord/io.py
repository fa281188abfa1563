"""Graph and order file formats, plus the byte-stable verdict document.

Graph text format, one item per line, ``#`` starts a comment::

    a            # declares vertex a (needed only for isolated vertices)
    e1 a b       # edge e1 from a to b

Graph JSON format: ``{"vertices": [...], "edges": [{"id": .., "src": .., "tgt": ..}]}``.
Order files list edge ids in increasing rank, whitespace separated, or as a JSON list.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path

from upord import __version__
from upord.axioms import EdgeOrder
from upord.digraph import Digraph
from upord.errors import GraphError, ParseError


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def _ident(x, what: str) -> str:
    if isinstance(x, bool) or not isinstance(x, (str, int)):
        raise ParseError(f"{what} must be a string, got {x!r}")
    return str(x)


def _build(vertices, edges) -> Digraph:
    seen = dict.fromkeys(vertices)
    for _, s, t in edges:
        seen.setdefault(s)
        seen.setdefault(t)
    try:
        return Digraph(tuple(seen), tuple(edges))
    except GraphError as exc:
        raise ParseError(str(exc)) from exc


def parse_graph_text(text: str) -> Digraph:
    vertices, edges = [], []
    for n, raw in enumerate(text.splitlines(), start=1):
        parts = _strip(raw).split()
        if not parts:
            continue
        if len(parts) == 1:
            vertices.append(parts[0])
        elif len(parts) == 3:
            edges.append(tuple(parts))
        else:
            raise ParseError(f"line {n}: expected '<edge> <src> <tgt>' or '<vertex>', got {raw.strip()!r}")
    return _build(vertices, edges)


def graph_to_text(g: Digraph) -> str:
    lines = [str(v) for v in g.vertices]
    lines += [f"{e} {s} {t}" for e, s, t in g.edges]
    return "\n".join(lines) + "\n"


def graph_from_json(doc) -> Digraph:
    if not isinstance(doc, dict) or "edges" not in doc:
        raise ParseError("graph JSON needs an 'edges' list")
    try:
        edges = [
            (_ident(d["id"], "edge id"), _ident(d["src"], "src"), _ident(d["tgt"], "tgt"))
            for d in doc["edges"]
        ]
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed edge entry: {exc}") from exc
    vertices = [_ident(v, "vertex id") for v in doc.get("vertices", [])]
    return _build(vertices, edges)


def graph_to_json(g: Digraph) -> dict:
    return {
        "vertices": list(g.vertices),
        "edges": [{"id": e, "src": s, "tgt": t} for e, s, t in g.edges],
    }


def parse_graph(text: str) -> Digraph:
    if text.lstrip().startswith("{"):
        try:
            return graph_from_json(json.loads(text))
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from exc
    return parse_graph_text(text)


def parse_order(text: str) -> EdgeOrder:
    if text.lstrip().startswith("["):
        try:
            items = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from exc
        ids = [_ident(x, "edge id") for x in items]
    else:
        ids = [tok for line in text.splitlines() for tok in _strip(line).split()]
    try:
        return EdgeOrder(tuple(ids))
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def order_to_text(order: EdgeOrder) -> str:
    return "\n".join(str(e) for e in order.sequence) + "\n"


def read_text(path: str | Path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror or exc}") from exc


def load_graph(path: str | Path) -> Digraph:
    return parse_graph(read_text(path))


def load_order(path: str | Path, g: Digraph | None = None) -> EdgeOrder:
    order = parse_order(read_text(path))
    if g is not None:
        try:
            order.check_covers(g)
        except ValueError as exc:
            raise ParseError(f"{path}: {exc}") from exc
    return order


def dumps(doc) -> str:
    """Canonical JSON: sorted keys, fixed separators, trailing newline."""
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def digest(*chunks: bytes) -> str:
    h = hashlib.sha256()
    for c in chunks:
        h.update(len(c).to_bytes(8, "big"))
        h.update(c)
    return h.hexdigest()


@dataclass
class VerdictDocument:
    command: str
    input_digest: str
    version: str = __version__
    axioms: dict = field(default_factory=dict)
    search: dict | None = None
    certificate: dict | None = None
    extra: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        doc = {"tool": "upord", "version": self.version, "command": self.command, "input_digest": self.input_digest}
        if self.axioms:
            doc["axioms"] = {k: r.to_json() for k, r in self.axioms.items()}
        if self.search is not None:
            doc["search"] = self.search
        if self.certificate is not None:
            doc["certificate"] = self.certificate
        doc.update(self.extra)
        return doc

    def render(self) -> str:
        return dumps(self.to_json())
