"""Command-line entry point.

Exit codes: 0 pass, 1 semantic failure (axiom fails, no order exists),
2 input error, 3 search budget exhausted, 4 internal defect.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field, replace
from pathlib import Path

from upord import corpus
from upord.axioms import AXIOMS, EdgeOrder, check, promote
from upord.digraph import Digraph, is_acyclic, is_progressive_graph
from upord.draw import SvgStyle, check_drawing, emit_svg, layout_upo
from upord.errors import (
    BudgetExhausted,
    CertificateFailed,
    ConfigMismatch,
    GraphError,
    GraphTooLarge,
    InternalInvariantViolation,
    OrderMismatch,
    ParseError,
    PreconditionFailed,
    UnknownFixture,
    ValidationFailed,
)
from upord.extension import build_cpp, cpp_isomorphic, restrict_order
from upord.io import (
    VerdictDocument,
    digest,
    dumps,
    graph_to_text,
    load_graph,
    load_order,
    order_to_text,
    parse_graph_text,
    read_text,
)
from upord.search import (
    BUDGET,
    NOT_PLANAR,
    PLANAR,
    SearchConfig,
    UndirectedGraph,
    enumerate_upos,
    find_planar_orientation,
)

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_BUDGET, EXIT_DEFECT = 0, 1, 2, 3, 4

AXIOM_GROUPS = {
    "POP": ("U1", "P2"),
    "UPO": ("U1", "U2", "U3"),
    "ALL": AXIOMS,
}
PROGRESSIVE_ONLY = ("U4",)


def parse_axioms(text: str) -> tuple[str, ...]:
    out: list[str] = []
    for tok in (t.strip() for t in text.split(",")):
        if not tok:
            continue
        names = AXIOM_GROUPS.get(tok.upper(), (tok.upper(),))
        for n in names:
            if n not in AXIOMS:
                raise ParseError(f"unknown axiom {tok!r}; choose from {', '.join((*AXIOM_GROUPS, *AXIOMS))}")
            if n not in out:
                out.append(n)
    if not out:
        raise ParseError("empty axiom selection")
    return tuple(out)


@dataclass
class Manifest:
    """Everything a command needs; files are read and parsed on construction."""

    graph_path: Path | None = None
    order_path: Path | None = None
    output: Path | None = None
    axioms: tuple[str, ...] = ("U1", "U2", "U3")
    search: SearchConfig = field(default_factory=SearchConfig)
    style: SvgStyle = field(default_factory=SvgStyle)
    graph: Digraph | None = field(default=None, init=False)
    order: EdgeOrder | None = field(default=None, init=False)
    raw: list = field(default_factory=list, init=False)

    def __post_init__(self) -> None:
        if self.graph_path is not None:
            text = read_text(self.graph_path)
            self.raw.append(text.encode())
            self.graph = load_graph(self.graph_path)
        if self.order_path is not None:
            self.raw.append(read_text(self.order_path).encode())
            self.order = load_order(self.order_path, self.graph)

    @property
    def digest(self) -> str:
        return digest(*self.raw)


def _search_config(args, mode: str) -> SearchConfig:
    return SearchConfig(
        cap=args.cap,
        time_budget=args.budget,
        node_budget=args.node_budget,
        mode=getattr(args, "mode", None) or mode,
        workers=args.workers,
        allow_long=args.opt_in_long,
    )


def _emit(text: str, output: Path | None) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        output.write_text(text, encoding="utf-8")


def _require_acyclic(g: Digraph) -> None:
    if not is_acyclic(g):
        raise GraphError("graph has a directed cycle")


# -- commands -----------------------------------------------------------------


def cmd_check(m: Manifest) -> int:
    g, order = m.graph, m.order
    _require_acyclic(g)
    progressive = is_progressive_graph(g)
    selected = m.axioms
    skipped = ()
    if not progressive and any(a in PROGRESSIVE_ONLY for a in selected):
        if selected == AXIOM_GROUPS["ALL"]:
            skipped = PROGRESSIVE_ONLY
            selected = tuple(a for a in selected if a not in PROGRESSIVE_ONLY)
        else:
            raise PreconditionFailed("U4 is defined for progressive graphs only")
    reports = check(g, order, selected)
    extra = {"progressive": progressive, "selected": list(m.axioms)}
    if skipped:
        extra["skipped"] = list(skipped)
    ok = all(r.holds for r in reports.values())
    if m.axioms == AXIOM_GROUPS["POP"]:
        ok = ok and progressive
    extra["holds"] = ok
    _emit(VerdictDocument("check", m.digest, axioms=reports, extra=extra).render(), m.output)
    return EXIT_OK if ok else EXIT_FAIL


def _decision_code(decision: str) -> int:
    return {PLANAR: EXIT_OK, NOT_PLANAR: EXIT_FAIL, BUDGET: EXIT_BUDGET}[decision]


def cmd_search(m: Manifest, command: str) -> int:
    _require_acyclic(m.graph)
    out = enumerate_upos(m.graph, m.search)
    doc = VerdictDocument(command, m.digest, search=out.to_json())
    _emit(doc.render(), m.output)
    return _decision_code(out.decision)


def cmd_extend(m: Manifest) -> int:
    g = m.graph
    _require_acyclic(g)
    try:
        u = promote(g, m.order)
    except ValidationFailed as exc:
        doc = VerdictDocument("extend", m.digest, axioms={exc.report.axiom: exc.report}, extra={"holds": False})
        _emit(doc.render(), m.output)
        return EXIT_FAIL
    cpp = build_cpp(u)
    back = restrict_order(cpp)
    round_trip = back == m.order and cpp_isomorphic(cpp, build_cpp(promote(g, back)))
    doc = VerdictDocument("extend", m.digest, extra={"extension": cpp.to_json(), "round_trip": round_trip})
    _emit(doc.render(), m.output)
    return EXIT_OK if round_trip else EXIT_DEFECT


def cmd_draw(m: Manifest, use_search: bool, json_out: Path | None) -> int:
    g = m.graph
    _require_acyclic(g)
    order = m.order
    if order is None:
        if not use_search:
            raise ParseError("draw needs an order file or --search")
        out = enumerate_upos(g, replace(m.search, mode="first"))
        if out.decision != PLANAR:
            print(f"no upward planar order: {out.decision}", file=sys.stderr)
            return _decision_code(out.decision)
        order = EdgeOrder(out.witnesses[0])
    try:
        u = promote(g, order)
    except ValidationFailed as exc:
        print(f"order is not upward planar: {exc}", file=sys.stderr)
        return EXIT_FAIL
    d = layout_upo(u)
    svg = emit_svg(d, m.style)
    _emit(svg, m.output)
    if json_out is not None:
        doc = {"drawing": d.to_json(), "certificate": check_drawing(d, d.visible_graph(), boxed=False).to_json(),
               "routing_certificate": check_drawing(d).to_json(), "order": list(order.sequence)}
        json_out.write_text(dumps(doc), encoding="utf-8")
    return EXIT_OK


def parse_undirected(text: str) -> UndirectedGraph:
    g = parse_graph_text(text)
    try:
        return UndirectedGraph(g.vertices, g.edges)
    except GraphError as exc:
        raise ParseError(str(exc)) from exc


def cmd_orient(path: Path, cfg: SearchConfig, output: Path | None) -> int:
    text = read_text(path)
    ug = parse_undirected(text)
    out = find_planar_orientation(ug, cfg)
    _emit(VerdictDocument("orient", digest(text.encode()), search=out.to_json()).render(), output)
    return _decision_code(out.decision)


def cmd_corpus(action: str, name: str | None, directory: Path) -> int:
    if action == "list":
        for n in corpus.names():
            print(n)
        return EXIT_OK
    if name is None:
        raise ParseError("corpus dump needs a fixture name")
    fx = corpus.get(name)
    directory.mkdir(parents=True, exist_ok=True)
    (directory / f"{fx.name}.graph").write_text(graph_to_text(fx.graph), encoding="utf-8")
    written = [f"{fx.name}.graph"]
    if fx.order is not None:
        (directory / f"{fx.name}.order").write_text(order_to_text(fx.order), encoding="utf-8")
        written.append(f"{fx.name}.order")
    for w in written:
        print(directory / w)
    return EXIT_OK


# -- argument parsing -----------------------------------------------------------


def _add_search_flags(p: argparse.ArgumentParser, modes: bool = True) -> None:
    p.add_argument("--cap", type=int, default=12, help="maximum number of edges (default 12)")
    p.add_argument("--budget", type=float, default=None, help="time budget in seconds")
    p.add_argument("--node-budget", type=int, default=None, help="maximum search nodes")
    if modes:
        p.add_argument("--mode", choices=("first", "count", "all"), default=None)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--opt-in-long", action="store_true", help="allow runs beyond the default size guards")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="upord", description="Upward planar orders on DAGs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="check axioms for a graph and an edge order")
    p.add_argument("graph", type=Path)
    p.add_argument("order", type=Path)
    p.add_argument("--axioms", default="UPO", help="comma list of axioms or groups POP, UPO, ALL")
    p.add_argument("-o", "--output", type=Path)

    for name, help_ in (("find-order", "search for an upward planar order"), ("count", "count upward planar orders")):
        p = sub.add_parser(name, help=help_)
        p.add_argument("graph", type=Path)
        _add_search_flags(p)
        p.add_argument("-o", "--output", type=Path)

    p = sub.add_parser("extend", help="build the canonical progressive planar extension")
    p.add_argument("graph", type=Path)
    p.add_argument("order", type=Path)
    p.add_argument("-o", "--output", type=Path)

    p = sub.add_parser("draw", help="draw a graph from an upward planar order")
    p.add_argument("graph", type=Path)
    p.add_argument("order", type=Path, nargs="?")
    p.add_argument("--search", action="store_true", help="find an order when none is given")
    p.add_argument("--labels", action=argparse.BooleanOptionalAction, default=True)
    p.add_argument("--box", action=argparse.BooleanOptionalAction, default=True)
    p.add_argument("--json", type=Path, dest="json_out", help="also write coordinates and certificates")
    _add_search_flags(p, modes=False)
    p.add_argument("-o", "--output", type=Path)

    p = sub.add_parser("orient", help="search orientations of an undirected graph")
    p.add_argument("graph", type=Path, help="edge list '<id> <u> <v>'")
    _add_search_flags(p, modes=False)
    p.add_argument("-o", "--output", type=Path)

    p = sub.add_parser("corpus", help="list or dump the fixture graphs")
    p.add_argument("action", choices=("list", "dump"))
    p.add_argument("name", nargs="?")
    p.add_argument("-d", "--directory", type=Path, default=Path("."))
    return parser


def run(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    c = args.command
    if c == "corpus":
        return cmd_corpus(args.action, args.name, args.directory)
    if c == "orient":
        return cmd_orient(args.graph, _search_config(args, "first"), args.output)
    if c == "check":
        return cmd_check(Manifest(args.graph, args.order, args.output, axioms=parse_axioms(args.axioms)))
    if c in ("find-order", "count"):
        cfg = _search_config(args, "first" if c == "find-order" else "count")
        return cmd_search(Manifest(args.graph, output=args.output, search=cfg), c)
    if c == "extend":
        return cmd_extend(Manifest(args.graph, args.order, args.output))
    if c == "draw":
        m = Manifest(
            args.graph, args.order, args.output,
            search=_search_config(args, "first"),
            style=SvgStyle(labels=args.labels, box=args.box),
        )
        return cmd_draw(m, args.search, args.json_out)
    raise AssertionError(c)


def main(argv: list[str] | None = None) -> int:
    try:
        return run(argv)
    except BudgetExhausted as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (InternalInvariantViolation, CertificateFailed) as exc:
        print(f"internal defect: {exc}", file=sys.stderr)
        return EXIT_DEFECT
    except (ParseError, GraphError, OrderMismatch, UnknownFixture, GraphTooLarge,
            ConfigMismatch, PreconditionFailed, ValueError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Exception as exc:  # anything else is a bug, not a verdict
        print(f"internal defect: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DEFECT


if __name__ == "__main__":
    sys.exit(main())
