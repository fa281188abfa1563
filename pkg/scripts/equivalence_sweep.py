"""Compare the four characterizations of a planar order on every small progressive DAG.

Each U1-respecting order of each progressive DAG up to the given edge count is
classified by U1+P2, U2+P3, U1+U2+U3+A and U2+U3+U4. Prints per-size totals and
any order on which the four disagree.
"""

import argparse
import sys
import time
from collections import Counter

from upord.axioms import EdgeOrder, planar_order_equivalence
from upord.generate import all_progressive_dags, linear_extensions


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-edges", type=int, default=5)
    args = ap.parse_args(argv)

    t0 = time.perf_counter()
    graphs, orders, pops, bad = Counter(), Counter(), Counter(), []
    for g in all_progressive_dags(args.max_edges):
        m = len(g.edges)
        graphs[m] += 1
        for seq in linear_extensions(g):
            v = planar_order_equivalence(g, EdgeOrder(seq))
            orders[m] += 1
            pops[m] += v.pop
            if not v.all_equal:
                bad.append((g, seq, v.values))

    print(f"{'edges':>5} {'graphs':>7} {'orders':>7} {'planar':>7}")
    for m in sorted(graphs):
        print(f"{m:>5} {graphs[m]:>7} {orders[m]:>7} {pops[m]:>7}")
    for g, seq, values in bad:
        print("disagreement:", g.edges, seq, values)
    print(f"{len(bad)} disagreements in {time.perf_counter() - t0:.1f}s")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
