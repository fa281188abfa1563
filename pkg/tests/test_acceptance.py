"""Acceptance criteria 1-9, one pass/fail line each.

Runs under pytest (lines are repeated in the terminal summary) or directly:

    python -m tests.test_acceptance

Sizes, seeds and time limits are pinned here and must not be loosened to make a
criterion pass.
"""

from __future__ import annotations

import functools
import random
import sys
import time
from collections import Counter

from upord import corpus
from upord.axioms import (
    EdgeOrder,
    check,
    check_u1,
    check_u3,
    is_planar_order,
    is_upo,
    promote,
    planar_order_equivalence,
)
from upord.digraph import subgraph
from upord.draw import check_drawing, layout_pop, layout_upo, vertex_rotations
from upord.errors import CertificateFailed
from upord.extension import (
    build_cpp,
    cpp_isomorphic,
    extension_graph,
    insertion_index,
    relabel_cpp,
    restrict_order,
    step_for,
    validate_cpp,
)
from upord.generate import all_dags, all_progressive_dags, linear_extensions, random_dag
from upord.search import (
    NOT_PLANAR,
    PLANAR,
    SearchConfig,
    complete_bipartite,
    complete_graph,
    count_upos,
    enumerate_upos,
    find_planar_orientation,
)
from tests.acceptance_log import record
from tests.oracles import naive_upos

SEED = 20261015
RANDOM_DAGS = 1000
RANDOM_MAX_EDGES = 7
CONFIG_SAMPLES = 500
SUBGRAPH_SAMPLES = 1000
SUBGRAPH_MAX_EDGES = 8

LIMIT_FIG4 = 1.0
LIMIT_EQUIVALENCE = 300.0
LIMIT_BIJECTION = 300.0
LIMIT_ORACLE = 120.0
LIMIT_SMALL_ORIENT = 10.0
LIMIT_K33 = 1800.0

KNOWN_COUNTS = {"PATH2": 1, "FORK": 2, "DIAMOND": 2, "TRIANGLE": 2, "PARALLEL": 2}


@functools.lru_cache(maxsize=None)
def random_upos() -> tuple:
    """Every UPO of 1000 seeded random DAGs with at most 7 edges, as (graph, order) pairs."""
    rng = random.Random(SEED)
    out = []
    for _ in range(RANDOM_DAGS):
        g = random_dag(rng, max_edges=RANDOM_MAX_EDGES)
        for w in enumerate_upos(g, SearchConfig(mode="all")).witnesses:
            out.append((g, w))
    return tuple(out)


def _expected_rotations(g, order):
    return {
        v: (tuple(sorted(g.in_edges(v), key=order.rank)), tuple(sorted(g.out_edges(v), key=order.rank)))
        for v in g.vertices
    }


def _laminar(intervals) -> bool:
    spans = [(min(r), max(r)) for r in intervals if r]
    for i, (a1, b1) in enumerate(spans):
        for a2, b2 in spans[i + 1:]:
            disjoint = b1 < a2 or b2 < a1
            nested = (a1 <= a2 and b2 <= b1) or (a2 <= a1 and b1 <= b2)
            if not (disjoint or nested):
                return False
    return True


def laminar_hulls(g, order) -> bool:
    # Computed from raw ranks, independently of the Hull class.
    ins = [[order.rank(e) for e in g.in_edges(v)] for v in g.vertices]
    outs = [[order.rank(e) for e in g.out_edges(v)] for v in g.vertices]
    return _laminar(ins) and _laminar(outs)


# -- criteria ----------------------------------------------------------------------


def test_criterion_1_fig4():
    f = corpus.get("FIG4")
    t0 = time.perf_counter()
    reports = check(f.graph, f.order)
    ok_axioms = all(r.holds for r in reports.values())
    ok = ok_axioms and is_planar_order(f.graph, f.order) and is_upo(f.graph, f.order)
    elapsed = time.perf_counter() - t0
    ok = ok and elapsed < LIMIT_FIG4
    failed = [a for a, r in reports.items() if not r.holds]
    record(1, ok, f"FIG4 axioms {sorted(reports)} failed={failed} in {elapsed:.3f}s (< {LIMIT_FIG4}s)")
    assert ok


def test_criterion_2_equivalence():
    t0 = time.perf_counter()
    cases = discrepancies = pops = drawn = 0
    for g in all_progressive_dags(5):
        for seq in linear_extensions(g):
            order = EdgeOrder(seq)
            v = planar_order_equivalence(g, order)
            cases += 1
            if not v.all_equal:
                discrepancies += 1
                continue
            if v.pop:
                pops += 1
                # Second route: a POP must admit a certified planar drawing with these rotations.
                d = layout_pop(g, order)
                if check_drawing(d).ok and vertex_rotations(d) == _expected_rotations(g, order):
                    drawn += 1
    elapsed = time.perf_counter() - t0
    ok = discrepancies == 0 and drawn == pops and cases > 0 and elapsed < LIMIT_EQUIVALENCE
    record(2, ok, f"{cases} (graph, U1 order) pairs, {discrepancies} discrepancies, "
                  f"{pops} POPs of which {drawn} drawn, {elapsed:.1f}s (< {LIMIT_EQUIVALENCE:.0f}s)")
    assert ok


def test_criterion_3_bijection():
    t0 = time.perf_counter()
    pairs = random_upos()
    failures = []
    for g, order in pairs:
        u = promote(g, order)
        c = build_cpp(u)
        if not validate_cpp(g, c).ok or restrict_order(c) != order:
            failures.append((g, order, "restrict"))
            continue
        # Rename everything the construction added, then go back and forth.
        added_v = [v for v in c.target.vertices if v not in c.vertex_map.values()]
        added_e = [e for e in c.target.edge_ids if e not in c.edge_map.values()]
        other = relabel_cpp(c, {v: f"x{i}" for i, v in enumerate(added_v)},
                            {e: f"y{i}" for i, e in enumerate(added_e)})
        back = build_cpp(promote(g, restrict_order(other)))
        if not (cpp_isomorphic(back, other) and cpp_isomorphic(other, back)):
            failures.append((g, order, "isomorphism"))
    elapsed = time.perf_counter() - t0
    graphs = len({id(g) for g, _ in pairs})
    ok = not failures and graphs > 0 and elapsed < LIMIT_BIJECTION
    record(3, ok, f"{RANDOM_DAGS} random DAGs (seed {SEED}, <= {RANDOM_MAX_EDGES} edges), "
                  f"{len(pairs)} UPOs on {graphs} upward planar DAGs, {len(failures)} failures, "
                  f"{elapsed:.1f}s (< {LIMIT_BIJECTION:.0f}s)")
    assert ok, failures[:3]


def test_criterion_4_unique_insertion():
    rng = random.Random(SEED + 4)
    pairs = random_upos()
    per_case = Counter()
    failures = 0
    for _ in range(CONFIG_SAMPLES):
        g, order = rng.choice(pairs)
        u = promote(g, order)
        v = rng.choice([x for x in g.vertices if g.is_source(x) or g.is_sink(x)])
        step = step_for(u, v)
        gamma = extension_graph(u, step)
        good = []
        for k in range(len(order) + 1):
            seq = list(order.sequence)
            seq.insert(k, step.edge)
            if is_upo(gamma, EdgeOrder(tuple(seq))):
                good.append(k)
        per_case[step.case] += 1
        if good != [insertion_index(u, step)]:
            failures += 1
    ok = failures == 0 and sum(per_case.values()) >= CONFIG_SAMPLES
    cases = ", ".join(f"case {k}: {per_case[k]}" for k in (1, 2, 3, 4))
    record(4, ok, f"{CONFIG_SAMPLES} (UPO, configuration) pairs [{cases}], {failures} failures")
    assert ok


def test_criterion_5_heredity_and_laminarity():
    rng = random.Random(SEED + 5)
    done = failures = 0
    while done < SUBGRAPH_SAMPLES:
        g = random_dag(rng, max_edges=SUBGRAPH_MAX_EDGES, max_vertices=7)
        found = enumerate_upos(g, SearchConfig(mode="first")).witnesses
        if not found:
            continue
        order = found[0]
        if not laminar_hulls(g, order):
            failures += 1
        es = [e for e in g.edge_ids if rng.random() < 0.6]
        vs = {x for e in es for x in (g.src(e), g.tgt(e))}
        vs |= {x for x in g.vertices if rng.random() < 0.3}
        h = subgraph(g, vs, es)
        sub = order.restrict(es)
        if not (check_u1(h, sub).holds and check_u3(h, sub).holds and laminar_hulls(h, sub)):
            failures += 1
        done += 1
    ok = failures == 0
    record(5, ok, f"{done} random (UPO, subgraph) pairs with <= {SUBGRAPH_MAX_EDGES} edges, {failures} failures")
    assert ok


def test_criterion_6_search_oracle():
    t0 = time.perf_counter()
    graphs = discrepancies = total = 0
    for g in all_dags(5):
        got = enumerate_upos(g, SearchConfig(mode="all"))
        want = naive_upos(g)
        graphs += 1
        total += len(want)
        if got.witnesses != tuple(want) or got.count != len(want):
            discrepancies += 1
    elapsed = time.perf_counter() - t0
    ok = discrepancies == 0 and elapsed < LIMIT_ORACLE
    record(6, ok, f"{graphs} DAGs with <= 5 edges, {total} UPOs, {discrepancies} discrepancies, "
                  f"{elapsed:.1f}s (< {LIMIT_ORACLE:.0f}s)")
    assert ok


def test_criterion_7_drawings():
    pairs = random_upos()
    bad = refused = 0
    for g, order in pairs:
        try:
            d = layout_upo(promote(g, order))
        except CertificateFailed:
            refused += 1
            continue
        full = check_drawing(d)
        visible = check_drawing(d, d.visible_graph(), boxed=False)
        if not (full.ok and full.boxed and visible.ok and vertex_rotations(d) == _expected_rotations(g, order)):
            bad += 1
    ok = bad == 0 and refused == 0
    record(7, ok, f"{len(pairs)} UPOs drawn, {refused} CertificateFailed, {bad} bad certificates or rotations")
    assert ok


def test_criterion_8_known_counts():
    got = {name: count_upos(corpus.graph(name)) for name in KNOWN_COUNTS}
    brute = {name: len(naive_upos(corpus.graph(name))) for name in KNOWN_COUNTS}
    ok = got == KNOWN_COUNTS == brute
    record(8, ok, f"counts {got}, brute force {brute}")
    assert ok


def test_criterion_9_orientations():
    t0 = time.perf_counter()
    tri = find_planar_orientation(complete_graph(3))
    k4 = find_planar_orientation(complete_graph(4))
    small = time.perf_counter() - t0
    small_ok = tri.decision == PLANAR and k4.decision == PLANAR and small < LIMIT_SMALL_ORIENT
    for out in (tri, k4):
        if out.decision == PLANAR:
            small_ok = small_ok and is_upo(out.orientation, out.order)
    t1 = time.perf_counter()
    k33 = find_planar_orientation(complete_bipartite(3, 3), SearchConfig(cap=9, allow_long=True))
    big = time.perf_counter() - t1
    big_ok = k33.decision == NOT_PLANAR and k33.orientations_tried == 2**9 and big < LIMIT_K33
    ok = small_ok and big_ok
    record(9, ok, f"triangle {tri.decision}, K4 {k4.decision} in {small:.2f}s (< {LIMIT_SMALL_ORIENT:.0f}s); "
                  f"K3,3 {k33.decision} after {k33.orientations_tried} orientations "
                  f"({k33.acyclic_orientations} acyclic) in {big:.1f}s")
    assert ok


CRITERIA = [v for k, v in sorted(globals().items()) if k.startswith("test_criterion_")]


def main() -> int:
    failed = 0
    for fn in CRITERIA:
        try:
            fn()
        except AssertionError:
            failed += 1
    print(f"{len(CRITERIA) - failed}/{len(CRITERIA)} criteria pass")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
