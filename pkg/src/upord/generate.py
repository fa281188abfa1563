"""Graph generators: exhaustive small DAGs up to isomorphism, random DAGs, linear extensions."""

from __future__ import annotations

import random
from collections.abc import Iterator
from functools import lru_cache
from itertools import permutations, product

from upord.digraph import Digraph, edge_poset, is_progressive_graph

Pairs = tuple[tuple[int, int], ...]


def _acyclic(n: int, pairs: Pairs) -> bool:
    out = [[] for _ in range(n)]
    indeg = [0] * n
    for s, t in pairs:
        out[s].append(t)
        indeg[t] += 1
    ready = [v for v in range(n) if indeg[v] == 0]
    seen = 0
    while ready:
        v = ready.pop()
        seen += 1
        for w in out[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                ready.append(w)
    return seen == n


def _canonical(n: int, pairs: Pairs) -> Pairs:
    """Lexicographically least relabeling, permuting only within degree classes."""
    indeg = [0] * n
    outdeg = [0] * n
    for s, t in pairs:
        outdeg[s] += 1
        indeg[t] += 1
    sig = [(indeg[v], outdeg[v]) for v in range(n)]
    classes: dict = {}
    for v in range(n):
        classes.setdefault(sig[v], []).append(v)
    groups = [classes[k] for k in sorted(classes)]
    best = None
    for choice in product(*(permutations(gr) for gr in groups)):
        label = {}
        nxt = 0
        for perm in choice:
            for v in perm:
                label[v] = nxt
                nxt += 1
        form = tuple(sorted((label[s], label[t]) for s, t in pairs))
        if best is None or form < best:
            best = form
    return best


@lru_cache(maxsize=None)
def connected_dags(m: int) -> tuple[tuple[int, Pairs], ...]:
    """All connected acyclic multigraphs with exactly m edges, as (n, pairs), up to isomorphism."""
    if m == 1:
        return ((2, ((0, 1),)),)
    found: dict = {}
    for n, pairs in connected_dags(m - 1):
        candidates = []
        for u in range(n):
            for v in range(n):
                if u != v:
                    candidates.append((n, pairs + ((u, v),)))
            candidates.append((n + 1, pairs + ((n, u),)))
            candidates.append((n + 1, pairs + ((u, n),)))
        for n2, p2 in candidates:
            if n2 == n and not _acyclic(n2, p2):
                continue
            key = (n2, _canonical(n2, p2))
            found.setdefault(key, None)
    return tuple(sorted(found))


def _to_digraph(n: int, pairs: Pairs) -> Digraph:
    return Digraph(
        tuple(f"v{i}" for i in range(n)),
        tuple((f"e{j}", f"v{s}", f"v{t}") for j, (s, t) in enumerate(pairs, start=1)),
    )


def _union(components) -> tuple[int, Pairs]:
    n = 0
    pairs = []
    for cn, cp in components:
        pairs.extend((s + n, t + n) for s, t in cp)
        n += cn
    return n, tuple(pairs)


def all_dags(max_edges: int, min_edges: int = 1) -> Iterator[Digraph]:
    """Every acyclic multigraph without isolated vertices having min..max edges, once per isomorphism class."""
    comps = [(m, c) for m in range(1, max_edges + 1) for c in connected_dags(m)]

    def rec(start: int, budget: int, chosen: list):
        total = max_edges - budget
        if chosen and total >= min_edges:
            yield _union([c for _, c in chosen])
        for i in range(start, len(comps)):
            m, c = comps[i]
            if m <= budget:
                chosen.append(comps[i])
                yield from rec(i, budget - m, chosen)
                chosen.pop()

    for n, pairs in rec(0, max_edges, []):
        yield _to_digraph(n, pairs)


def all_progressive_dags(max_edges: int) -> Iterator[Digraph]:
    return (g for g in all_dags(max_edges) if is_progressive_graph(g))


def random_dag(rng: random.Random, max_edges: int = 7, max_vertices: int = 6, parallel: float = 0.1) -> Digraph:
    """Random acyclic multigraph with 1..max_edges edges and no isolated vertices.

    Vertices get a hidden random topological order; edges point forward in it.
    The vertex count is large enough for m distinct pairs when max_vertices
    allows. Each edge repeats an earlier pair with probability ``parallel``
    (or when no fresh pair is left), otherwise it joins a new pair.
    """
    m = rng.randint(1, max_edges)
    lo = 2
    while lo < max_vertices and lo * (lo - 1) // 2 < m:
        lo += 1
    n = rng.randint(lo, max_vertices)
    labels = [f"v{i}" for i in range(n)]
    rng.shuffle(labels)
    fresh = [(s, t) for s in range(n) for t in range(s + 1, n)]
    rng.shuffle(fresh)
    pairs: list[tuple[int, int]] = []
    while len(pairs) < m:
        if pairs and (not fresh or rng.random() < parallel):
            pairs.append(rng.choice(pairs))
        else:
            pairs.append(fresh.pop())
    used = sorted({x for p in pairs for x in p}, key=lambda i: labels[i])
    return Digraph(
        tuple(labels[i] for i in used),
        tuple((f"e{j}", labels[s], labels[t]) for j, (s, t) in enumerate(pairs, start=1)),
    )


def linear_extensions(g: Digraph) -> Iterator[tuple]:
    """All orders of E(g) compatible with the edge poset, in lexicographic edge-index order."""
    edges = g.edge_ids
    idx = {e: i for i, e in enumerate(edges)}
    preds = [0] * len(edges)
    for a, b in edge_poset(g):
        preds[idx[b]] |= 1 << idx[a]
    m = len(edges)
    seq: list = []

    def rec(placed: int):
        if len(seq) == m:
            yield tuple(seq)
            return
        for i in range(m):
            if not placed >> i & 1 and preds[i] & ~placed == 0:
                seq.append(edges[i])
                yield from rec(placed | 1 << i)
                seq.pop()

    yield from rec(0)
