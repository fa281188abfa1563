"""Exhaustively match canonical extensions against upward planar orders.

For every DAG up to the given edge count this enumerates all valid progressive
planar extensions by brute force, restricts each one, and checks that the
restriction is a bijection onto the UPOs found by search. Slow beyond 4 edges.
"""

import argparse
import os
import sys
import time

sys.path.insert(0, os.path.join(os.path.dirname(__file__), os.pardir))

from tests.oracles import all_cpp_extensions  # noqa: E402
from upord.axioms import promote  # noqa: E402
from upord.extension import build_cpp, cpp_isomorphic, restrict_order  # noqa: E402
from upord.generate import all_dags  # noqa: E402
from upord.search import SearchConfig, enumerate_upos  # noqa: E402


def check_graph(g) -> str | None:
    found = list(all_cpp_extensions(g))
    induced = [restrict_order(c) for c in found]
    if len(set(induced)) != len(induced):
        return "two extensions restrict to the same order"
    upos = set(enumerate_upos(g, SearchConfig(mode="all")).witnesses)
    if set(induced) != upos:
        return f"{len(induced)} extensions but {len(upos)} orders"
    for c, o in zip(found, induced):
        if not cpp_isomorphic(build_cpp(promote(g, o)), c):
            return f"extension for {o.sequence} is not the canonical one"
    return None


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-edges", type=int, default=3)
    ap.add_argument("--min-edges", type=int, default=1)
    args = ap.parse_args(argv)

    t0 = time.perf_counter()
    n = failures = 0
    for g in all_dags(args.max_edges, min_edges=args.min_edges):
        n += 1
        why = check_graph(g)
        if why:
            failures += 1
            print("FAIL", g.edges, why)
    print(f"{n} graphs, {failures} failures, {time.perf_counter() - t0:.1f}s")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
