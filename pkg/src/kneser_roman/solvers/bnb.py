"""Depth-first branch-and-bound over per-vertex label domains.

The search itself lives in the compiled :mod:`._kernel`; this module sets up
the arrays, seeds the incumbent, enforces the time budget between chunks of
nodes and splits the tree across threads.

Branching takes the free vertex with the most free neighbours and tries its
largest remaining label first.  On Kneser-mode graphs the "not this label"
branch removes the label from the vertex's whole orbit under the permutations
of {1..n} that fix every vertex already set on the path (orbital branching),
so symmetric copies of a subtree are explored once.
"""

from __future__ import annotations

import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from ..graphs import Graph, _bits
from ..labelings import Labeling
from . import _kernel as K
from .common import Invariant, SolveResult, SolverError, Strategy, assert_certificate

CHUNK = 4096
LAG_ITERS = 30
SEARCH_ROUNDS = 20_000
SEARCH_WORK = 20_000_000  # rounds x adjacency entries
SEARCH_SEED = 20241015
_INV_CODE = {Invariant.RDN: K.RDN, Invariant.TRDN: K.TRDN, Invariant.SRDN: K.SRDN}
_WARM_CAP = 20_000_000


@dataclass
class _Problem:
    n: int
    inv: int
    low: int
    ptr: np.ndarray
    idx: np.ndarray
    elem: np.ndarray
    orbits: bool
    iters: int

    @classmethod
    def build(cls, g: Graph, inv: Invariant, orbits: bool, iters: int) -> "_Problem":
        n = g.order
        ptr = np.zeros(n + 1, dtype=np.int64)
        idx = []
        for v in range(n):
            idx.extend(_bits(g.rows[v]))
            ptr[v + 1] = len(idx)
        elem = np.zeros(max(n, 1), dtype=np.uint64)
        if orbits:
            for v, s in enumerate(g.subsets):
                elem[v] = np.uint64(sum(1 << (x - 1) for x in s))
        return cls(
            n, _INV_CODE[inv], inv.variant.low, ptr, np.array(idx, dtype=np.int64), elem, orbits, iters
        )


class _Stack:
    """Resumable DFS stack; frame f holds the domains, element classes, the
    parent's bound and the parent's Lagrange multipliers."""

    def __init__(self, p: _Problem, n_elem: int):
        n = p.n
        self.frames = frames = 2 * n + 4
        self.dom = np.zeros((frames, n), dtype=np.int8)
        self.cls = np.zeros((frames, max(n_elem, 1)), dtype=np.uint64)
        self.ncls = np.zeros(frames, dtype=np.int64)
        self.lb = np.zeros(frames, dtype=np.int64)
        self.warm = frames * n <= _WARM_CAP
        rows = frames if self.warm else 1
        self.lam = np.zeros((rows, n))
        self.mu = np.zeros((rows, n))
        self.sp = np.zeros(1, dtype=np.int64)

    def push(self, dom: np.ndarray, cls: np.ndarray, ncls: int, lb: int, lam=None, mu=None) -> None:
        f = int(self.sp[0])
        self.dom[f] = dom
        self.cls[f, :ncls] = cls[:ncls]
        self.ncls[f] = ncls
        self.lb[f] = lb
        if self.warm and lam is not None:
            self.lam[f] = lam
            self.mu[f] = mu
        self.sp[0] = f + 1

    def open_frames(self):
        for f in range(int(self.sp[0])):
            yield f

    def open_bound(self) -> int | None:
        sp = int(self.sp[0])
        return int(self.lb[:sp].min()) if sp else None


class _Worker:
    def __init__(self, p: _Problem, shared: np.ndarray):
        self.p = p
        self.shared = shared
        self.own_best = np.array([np.iinfo(np.int64).max], dtype=np.int64)
        self.own_vals = np.zeros(p.n, dtype=np.int64)
        self.nodes = 0

    def run(self, st: _Stack, deadline: float) -> bool:
        p = self.p
        while True:
            nodes, done = K.run(
                p.ptr, p.idx, p.elem, p.orbits, p.n, p.inv, p.low, p.iters,
                st.dom, st.cls, st.ncls, st.lb, st.lam, st.mu, st.warm, st.sp,
                self.shared, self.own_best, self.own_vals, CHUNK,
            )
            self.nodes += int(nodes)
            if done:
                return True
            if time.perf_counter() > deadline:
                return False


def _upper_start(g: Graph, inv: Invariant, seed: Labeling | None) -> tuple[int, tuple[int, ...]]:
    if inv is Invariant.TRDN and any(r == 0 for r in g.rows):
        raise SolverError(f"{g.name()} admits no {inv.variant.value} (isolated vertex)")
    best = (g.order, (1,) * g.order)
    cands = []
    if seed is not None:
        assert_certificate(g, inv, seed, sum(seed.values))
        cands.append(seed)
    elif g.is_kneser:
        from .seeding import kneser_seed, symmetric_seed

        for s in (kneser_seed(g, inv), symmetric_seed(g, inv)):
            if s is not None:
                cands.append(s)
    for s in cands:
        if sum(s.values) < best[0]:
            best = (sum(s.values), s.values)
    return best


def _polish(p: _Problem, w: int, vals: tuple[int, ...]) -> tuple[int, tuple[int, ...]]:
    """Run the seeded local search from the starting incumbent."""
    from ._heuristic import search

    rounds = int(min(SEARCH_ROUNDS, max(50, SEARCH_WORK // max(1, p.idx.size))))
    out = search(p.ptr, p.idx, p.n, p.inv, p.low, np.array(vals, dtype=np.int64), rounds, SEARCH_SEED)
    if int(out.sum()) < w:
        return int(out.sum()), tuple(int(x) for x in out)
    return w, vals


def solve_bnb(
    g: Graph,
    inv: Invariant | str,
    budget: float = 600.0,
    *,
    threads: int = 1,
    symmetry: bool | None = None,
    seed: Labeling | None = None,
    lag_iters: int = LAG_ITERS,
) -> SolveResult:
    """Exact minimum weight by branch-and-bound, or a bracket if the budget runs out.

    ``symmetry`` (orbital branching) defaults to on for Kneser-mode graphs and
    is ignored elsewhere.  ``seed`` is an optional feasible labeling used as the
    starting incumbent.  Without one, Kneser-mode graphs start from the explicit
    constructions and the best block-symmetric labeling, and every graph then
    gets a short seeded local search.  ``lag_iters = 0`` switches the
    Lagrangian bound off.
    """
    inv = Invariant.parse(inv)
    if not budget > 0:
        raise SolverError("time budget must be positive")
    if threads < 1:
        raise SolverError("thread count must be at least 1")
    t0 = time.perf_counter()
    deadline = t0 + budget
    orbits = bool(g.is_kneser and (symmetry is None or symmetry) and g.params.n <= 64)
    n = g.order

    start_w, start_vals = _upper_start(g, inv, seed)
    if n == 0:
        cert = Labeling(inv.variant, ())
        assert_certificate(g, inv, cert, 0)
        return SolveResult(inv, 0, 0, cert, nodes=0, wall_time=time.perf_counter() - t0)

    p = _Problem.build(g, inv, orbits, lag_iters)
    if seed is None:
        start_w, start_vals = _polish(p, start_w, start_vals)
    n_elem = g.params.n if orbits else 1
    shared = np.array([start_w], dtype=np.int64)

    root = _Stack(p, n_elem)
    cls0 = np.zeros(max(n_elem, 1), dtype=np.uint64)
    if orbits:
        cls0[0] = np.uint64((1 << g.params.n) - 1)
    root.push(np.full(n, K.BL | K.B1 | K.B2, dtype=np.int8), cls0, 1 if orbits else 0, np.iinfo(np.int64).min)

    workers: list[_Worker] = []
    lock = threading.Lock()

    def new_worker() -> _Worker:
        w = _Worker(p, shared)
        with lock:
            workers.append(w)
        return w

    leftovers: list[_Stack] = []
    if threads == 1:
        if not new_worker().run(root, deadline):
            leftovers.append(root)
    else:
        # expand single-threaded until the stack holds enough disjoint subtrees
        first = new_worker()
        finished = False
        while int(root.sp[0]) < 4 * threads:
            nodes, finished = K.run(
                p.ptr, p.idx, p.elem, p.orbits, p.n, p.inv, p.low, p.iters,
                root.dom, root.cls, root.ncls, root.lb, root.lam, root.mu, root.warm, root.sp,
                shared, first.own_best, first.own_vals, 1,
            )
            first.nodes += int(nodes)
            if finished or time.perf_counter() > deadline:
                break
        tasks = []
        for f in root.open_frames():
            st = _Stack(p, n_elem)
            st.push(root.dom[f], root.cls[f], int(root.ncls[f]), int(root.lb[f]),
                    root.lam[f] if root.warm else None, root.mu[f] if root.warm else None)
            tasks.append(st)
        # deepest frames first: they are the ones a serial search would open next
        tasks.reverse()

        def job(st: _Stack) -> _Stack | None:
            return None if new_worker().run(st, deadline) else st

        with ThreadPoolExecutor(max_workers=threads) as pool:
            leftovers = [s for s in pool.map(job, tasks) if s is not None]

    weight, vals = start_w, start_vals
    for w in workers:
        if w.own_best[0] < weight:
            weight, vals = int(w.own_best[0]), tuple(int(x) for x in w.own_vals)
    cert = Labeling(inv.variant, tuple(vals))
    assert_certificate(g, inv, cert, weight)

    exhausted = bool(leftovers)
    lower = weight
    if exhausted:
        opens = [b for b in (s.open_bound() for s in leftovers) if b is not None]
        # every open frame carries the bound of an already evaluated parent
        lower = min([weight] + opens)
    return SolveResult(
        inv,
        int(lower),
        int(weight),
        cert,
        nodes=sum(w.nodes for w in workers),
        wall_time=time.perf_counter() - t0,
        strategy=Strategy.BNB,
        exhausted_budget=exhausted,
        notes={"orbital": orbits, "threads": threads},
    )

