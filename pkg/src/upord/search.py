"""Exhaustive search for upward planar orders.

The search walks linear extensions of the edge poset (so U1 holds by
construction) and cuts a branch as soon as U2 or U3 is already decided false:

* U2: once every in-edge of a progressive vertex v is placed, the next edge
  must be an out-edge of v (successor form, equivalent to U2 under U1).
* U3: when the last in-edge (out-edge) of a vertex v2 is placed, its hull is
  final and every edge already placed strictly inside it is known. Each such
  edge's head (tail) v1 must have all its in-edges (out-edges) placed, none
  before the start of the hull.

Both rules reject only prefixes with no valid completion, and together with
U1 they decide U2 and U3 exactly, so completed sequences are precisely the
upward planar orders.
"""

from __future__ import annotations

import time
from collections.abc import Callable
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from itertools import product

from upord.axioms import EdgeOrder
from upord.digraph import Digraph, edge_poset, is_acyclic
from upord.errors import BudgetExhausted, CyclicGraphError, GraphTooLarge

MAX_CAP = 16
LONG_CAP = 32
PLANAR = "planar"
NOT_PLANAR = "not-planar"
BUDGET = "budget-exhausted"
MODES = ("first", "count", "all")


@dataclass(frozen=True)
class SearchConfig:
    cap: int = 12
    time_budget: float | None = None  # seconds
    node_budget: int | None = None
    mode: str = "all"
    workers: int = 1
    allow_long: bool = False  # opt-in for caps above MAX_CAP and large orientation searches

    def __post_init__(self) -> None:
        limit = LONG_CAP if self.allow_long else MAX_CAP
        if not 0 <= self.cap <= limit:
            raise ValueError(f"edge cap must lie in 0..{limit}")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")
        if self.workers < 1:
            raise ValueError("workers must be positive")


@dataclass(frozen=True)
class SearchOutcome:
    decision: str
    witnesses: tuple[EdgeOrder, ...] = ()
    count: int = 0
    stats: dict = field(default_factory=dict)

    @property
    def planar(self) -> bool:
        return self.decision == PLANAR

    def to_json(self) -> dict:
        return {
            "decision": self.decision,
            "count": self.count,
            "witnesses": [list(w.sequence) for w in self.witnesses],
            "statistics": dict(sorted(self.stats.items())),
        }


class _Budget(Exception):
    pass


class _Searcher:
    def __init__(self, g: Digraph, cfg: SearchConfig, on_prune: Callable | None = None):
        self.g = g
        self.cfg = cfg
        self.on_prune = on_prune
        edges = g.edge_ids
        self.edges = edges
        m = self.m = len(edges)
        idx = {e: i for i, e in enumerate(edges)}
        vidx = {v: i for i, v in enumerate(g.vertices)}
        self.preds = [0] * m
        for a, b in edge_poset(g):
            self.preds[idx[b]] |= 1 << idx[a]
        self.src = [vidx[g.src(e)] for e in edges]
        self.tgt = [vidx[g.tgt(e)] for e in edges]
        nv = len(g.vertices)
        self.n_in = [len(g.in_edges(v)) for v in g.vertices]
        self.n_out = [len(g.out_edges(v)) for v in g.vertices]
        self.out_mask = [0] * nv
        for i in range(m):
            self.out_mask[self.src[i]] |= 1 << i
        self.progressive = [self.n_in[v] > 0 and self.n_out[v] > 0 for v in range(nv)]
        # Mutable search state.
        self.seq: list[int] = []
        self.in_placed = [0] * nv
        self.out_placed = [0] * nv
        self.in_first = [-1] * nv
        self.out_first = [-1] * nv
        self.nodes = 0
        self.prunes = {"U2": 0, "U3": 0}
        self.count = 0
        self.found: list[tuple[int, ...]] = []
        self.deadline = None if cfg.time_budget is None else time.monotonic() + cfg.time_budget
        self.stop = False

    def _prune(self, rule: str, i: int) -> None:
        self.prunes[rule] += 1
        if self.on_prune is not None:
            self.on_prune(tuple(self.edges[k] for k in self.seq) + (self.edges[i],), rule)

    def _closure_ok(self, v2: int, lo: int, hi: int, ends: list, placed: list, total: list, first: list) -> bool:
        for q in range(lo + 1, hi):
            v1 = ends[self.seq[q]]
            if v1 == v2:
                continue
            if placed[v1] != total[v1] or first[v1] < lo:
                return False
        return True

    def _place(self, i: int) -> bool:
        """Append edge i; False (with state unchanged) when a U3 closure fails."""
        p = len(self.seq)
        s, t = self.src[i], self.tgt[i]
        self.seq.append(i)
        self.in_placed[t] += 1
        self.out_placed[s] += 1
        if self.in_first[t] < 0:
            self.in_first[t] = p
        if self.out_first[s] < 0:
            self.out_first[s] = p
        ok = True
        if self.in_placed[t] == self.n_in[t]:
            ok = self._closure_ok(t, self.in_first[t], p, self.tgt, self.in_placed, self.n_in, self.in_first)
        if ok and self.out_placed[s] == self.n_out[s]:
            ok = self._closure_ok(s, self.out_first[s], p, self.src, self.out_placed, self.n_out, self.out_first)
        if not ok:
            self._unplace(i)
        return ok

    def _unplace(self, i: int) -> None:
        p = len(self.seq) - 1
        s, t = self.src[i], self.tgt[i]
        self.seq.pop()
        self.in_placed[t] -= 1
        self.out_placed[s] -= 1
        if self.in_first[t] == p:
            self.in_first[t] = -1
        if self.out_first[s] == p:
            self.out_first[s] = -1

    def _tick(self) -> None:
        self.nodes += 1
        if self.cfg.node_budget is not None and self.nodes > self.cfg.node_budget:
            raise _Budget
        if self.deadline is not None and self.nodes % 256 == 0 and time.monotonic() > self.deadline:
            raise _Budget

    def _dfs(self, placed: int, required: int) -> None:
        if len(self.seq) == self.m:
            self.count += 1
            if self.cfg.mode != "count":
                self.found.append(tuple(self.seq))
            if self.cfg.mode == "first":
                self.stop = True
            return
        for i in range(self.m):
            if placed >> i & 1 or self.preds[i] & ~placed:
                continue
            if required and not required >> i & 1:
                self._prune("U2", i)
                continue
            self._tick()
            if not self._place(i):
                self._prune("U3", i)
                continue
            t = self.tgt[i]
            nxt = self.out_mask[t] if self.progressive[t] and self.in_placed[t] == self.n_in[t] else 0
            self._dfs(placed | 1 << i, nxt)
            self._unplace(i)
            if self.stop:
                return

    def roots(self) -> list[int]:
        return [i for i in range(self.m) if not self.preds[i]]

    def run(self, first: int | None = None) -> bool:
        """Search the whole tree, or the subtree starting with edge ``first``. False on budget."""
        try:
            if first is None:
                self._dfs(0, 0)
            else:
                self._tick()
                if self._place(first):
                    t = self.tgt[first]
                    nxt = self.out_mask[t] if self.progressive[t] and self.in_placed[t] == self.n_in[t] else 0
                    self._dfs(1 << first, nxt)
                    self._unplace(first)
                else:
                    self._prune("U3", first)
        except _Budget:
            return False
        return True

    def stats(self) -> dict:
        return {"nodes": self.nodes, "pruned_U2": self.prunes["U2"], "pruned_U3": self.prunes["U3"]}


def _check_input(g: Digraph, cfg: SearchConfig) -> None:
    if not is_acyclic(g):
        raise CyclicGraphError("upward planar orders exist only on acyclic graphs")
    if len(g.edges) > cfg.cap:
        raise GraphTooLarge(f"{len(g.edges)} edges exceed the search cap of {cfg.cap}")


def _subtree(args) -> tuple[bool, int, list, dict]:
    g, cfg, first = args
    s = _Searcher(g, cfg)
    done = s.run(first)
    return done, s.count, s.found, s.stats()


def _sort_key(g: Digraph):
    return lambda order: order.rank_vector(g)


def enumerate_upos(g: Digraph, cfg: SearchConfig | None = None, on_prune: Callable | None = None) -> SearchOutcome:
    """Search the upward planar orders of g according to ``cfg.mode``.

    In mode "all" the witnesses are sorted by rank vector (ranks listed in the
    graph's edge order). In mode "first" the witness is the first order met in
    depth-first order, which does not depend on ``cfg.workers``.
    ``on_prune(prefix, rule)`` is called for every rejected extension and forces
    a sequential search.
    """
    cfg = cfg or SearchConfig()
    _check_input(g, cfg)
    if cfg.workers > 1 and on_prune is None and len(g.edges) > 1:
        results = _parallel(g, cfg)
    else:
        s = _Searcher(g, cfg, on_prune)
        results = [(s.run(), s.count, s.found, s.stats())]

    edges = g.edge_ids
    complete = True
    count = 0
    found: list = []
    stats = {"nodes": 0, "pruned_U2": 0, "pruned_U3": 0}
    for done, c, f, st in results:
        for k in stats:
            stats[k] += st[k]
        count += c
        found.extend(f)
        if not done:
            complete = False
            break
        if cfg.mode == "first" and f:
            break
    witnesses = [EdgeOrder(tuple(edges[i] for i in seq)) for seq in found]
    if cfg.mode == "first":
        witnesses = witnesses[:1]
        count = len(witnesses)
    elif cfg.mode == "all":
        witnesses.sort(key=_sort_key(g))
    if cfg.mode == "first" and witnesses:
        decision = PLANAR
    elif not complete:
        decision = BUDGET
    else:
        decision = PLANAR if count else NOT_PLANAR
    return SearchOutcome(decision, tuple(witnesses), count, stats)


def _parallel(g: Digraph, cfg: SearchConfig) -> list:
    roots = _Searcher(g, cfg).roots()
    jobs = [(g, cfg, r) for r in roots]
    with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
        return list(pool.map(_subtree, jobs))


def is_upward_planar(g: Digraph, cfg: SearchConfig | None = None) -> SearchOutcome:
    cfg = cfg or SearchConfig()
    return enumerate_upos(g, replace(cfg, mode="first"))


def count_upos(g: Digraph, cfg: SearchConfig | None = None) -> int:
    """Number of upward planar orders. Raises BudgetExhausted if the search was cut short."""
    cfg = cfg or SearchConfig()
    out = enumerate_upos(g, replace(cfg, mode="count"))
    if out.decision == BUDGET:
        raise BudgetExhausted(f"search stopped after {out.stats['nodes']} nodes")
    return out.count


# -- undirected planarity through orientations ---------------------------------


@dataclass(frozen=True)
class UndirectedGraph:
    vertices: tuple
    edges: tuple  # (edge id, u, v)

    def __post_init__(self) -> None:
        # Reuse Digraph validation for ids, endpoints and loops.
        Digraph(tuple(self.vertices), tuple(self.edges))


def complete_graph(n: int) -> UndirectedGraph:
    vs = tuple(f"k{i}" for i in range(n))
    es = tuple((f"{vs[i]}{vs[j]}", vs[i], vs[j]) for i in range(n) for j in range(i + 1, n))
    return UndirectedGraph(vs, es)


def complete_bipartite(a: int, b: int) -> UndirectedGraph:
    left = tuple(f"a{i}" for i in range(a))
    right = tuple(f"b{j}" for j in range(b))
    es = tuple((f"{u}{w}", u, w) for u in left for w in right)
    return UndirectedGraph(left + right, es)


@dataclass(frozen=True)
class OrientationOutcome:
    decision: str
    orientation: Digraph | None = None
    order: EdgeOrder | None = None
    orientations_tried: int = 0
    acyclic_orientations: int = 0

    def to_json(self) -> dict:
        out = {
            "decision": self.decision,
            "orientations_tried": self.orientations_tried,
            "acyclic_orientations": self.acyclic_orientations,
        }
        if self.orientation is not None:
            out["orientation"] = [list(e) for e in self.orientation.edges]
            out["order"] = list(self.order.sequence)
        return out


LONG_ORIENTATION_EDGES = 8


def orientations(ug: UndirectedGraph):
    """All 2^m orientations in sign-vector order (bit i set reverses edge i)."""
    for signs in product((0, 1), repeat=len(ug.edges)):
        yield Digraph(
            ug.vertices,
            tuple((e, v, u) if flip else (e, u, v) for (e, u, v), flip in zip(ug.edges, signs)),
        )


def find_planar_orientation(ug: UndirectedGraph, cfg: SearchConfig | None = None) -> OrientationOutcome:
    """Look for an acyclic orientation that carries an upward planar order.

    Graphs with more than LONG_ORIENTATION_EDGES edges need ``cfg.allow_long``.
    """
    cfg = cfg or SearchConfig()
    m = len(ug.edges)
    if m > cfg.cap:
        raise GraphTooLarge(f"{m} edges exceed the search cap of {cfg.cap}")
    if m > LONG_ORIENTATION_EDGES and not cfg.allow_long:
        raise GraphTooLarge(f"2^{m} orientations; pass the long-run opt-in to search them")
    deadline = None if cfg.time_budget is None else time.monotonic() + cfg.time_budget
    tried = acyclic = 0
    for g in orientations(ug):
        tried += 1
        if not is_acyclic(g):
            continue
        acyclic += 1
        budget = None if deadline is None else max(deadline - time.monotonic(), 0.0)
        if budget == 0.0:
            return OrientationOutcome(BUDGET, None, None, tried, acyclic)
        out = enumerate_upos(g, replace(cfg, time_budget=budget, mode="first", workers=1))
        if out.decision == PLANAR:
            return OrientationOutcome(PLANAR, g, out.witnesses[0], tried, acyclic)
        if out.decision == BUDGET:
            return OrientationOutcome(BUDGET, None, None, tried, acyclic)
    return OrientationOutcome(NOT_PLANAR, None, None, tried, acyclic)
