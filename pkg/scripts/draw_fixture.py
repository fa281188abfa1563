"""Draw a built-in fixture (FIG4 by default) as SVG with rank labels."""

import argparse
import sys

from upord import corpus
from upord.axioms import promote
from upord.draw import SvgStyle, check_drawing, emit_svg, layout_upo
from upord.search import SearchConfig, is_upward_planar


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("name", nargs="?", default="FIG4", choices=corpus.names())
    ap.add_argument("-o", "--output", default="fixture.svg")
    ap.add_argument("--unit", type=int, default=24)
    args = ap.parse_args(argv)

    fx = corpus.get(args.name)
    order = fx.order
    if order is None:
        order = is_upward_planar(fx.graph, SearchConfig(cap=32, allow_long=True)).witnesses[0]
    d = layout_upo(promote(fx.graph, order))
    cert = check_drawing(d, d.visible_graph(), boxed=False)
    with open(args.output, "w") as fh:
        fh.write(emit_svg(d, SvgStyle(unit=args.unit)))
    print(f"{args.name}: {len(fx.graph.edges)} edges, crossing_free={cert.crossing_free} "
          f"monotone={cert.monotone} -> {args.output}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
