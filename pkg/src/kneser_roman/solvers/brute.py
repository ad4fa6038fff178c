"""Exhaustive enumeration oracle.

Labelings are enumerated in lexicographic order (vertex 0 most significant,
labels ascending) in numpy chunks; the first feasible labeling of minimum
weight is the certificate.
"""

from __future__ import annotations

import time

import numpy as np

from ..graphs import Graph
from ..labelings import Labeling
from .common import Invariant, SolveResult, SolverError, Strategy, assert_certificate

BRUTE_CAP = 16
CHUNK = 1 << 18


def _feasible(inv: Invariant, labels: np.ndarray, adj: np.ndarray) -> np.ndarray:
    twos = (labels == 2).astype(np.float32)
    defended = twos @ adj > 0
    low = -1 if inv is Invariant.SRDN else 0
    ok = np.all((labels != low) | defended, axis=1)
    lf = labels.astype(np.float32)
    if inv is Invariant.TRDN:
        ok &= np.all(lf @ adj >= 1, axis=1)
    elif inv is Invariant.SRDN:
        closed = adj + np.eye(adj.shape[0], dtype=np.float32)
        ok &= np.all(lf @ closed >= 1, axis=1)
    return ok


def solve_brute(g: Graph, inv: Invariant | str, *, allow_large: bool = False) -> SolveResult:
    inv = Invariant.parse(inv)
    n = g.order
    if n > BRUTE_CAP and not allow_large:
        raise SolverError(f"brute force refuses order {n} > {BRUTE_CAP} without an override")
    t0 = time.perf_counter()
    codomain = np.array(inv.variant.codomain, dtype=np.int8)
    adj = np.zeros((n, n), dtype=np.float32)
    for u, v in g.edges():
        adj[u, v] = adj[v, u] = 1.0
    powers = 3 ** np.arange(n - 1, -1, -1, dtype=np.int64)
    total = 3**n
    best_w, best_idx = None, None
    for start in range(0, total, CHUNK):
        idx = np.arange(start, min(start + CHUNK, total), dtype=np.int64)
        labels = codomain[(idx[:, None] // powers) % 3]
        ok = _feasible(inv, labels, adj)
        if not ok.any():
            continue
        w = labels.sum(axis=1, dtype=np.int64)
        w = np.where(ok, w, np.iinfo(np.int64).max)
        i = int(np.argmin(w))
        if best_w is None or w[i] < best_w:
            best_w, best_idx = int(w[i]), int(idx[i])
    # every graph admits the all-1 labeling for RDF/SRDF; TRDF needs no isolated vertex
    if best_w is None:
        raise SolverError(f"{g.name()} admits no {inv.variant.value} (isolated vertex)")
    digits = [(best_idx // 3 ** (n - 1 - j)) % 3 for j in range(n)]
    cert = Labeling(inv.variant, tuple(int(codomain[d]) for d in digits))
    assert_certificate(g, inv, cert, best_w)
    return SolveResult(
        inv, best_w, best_w, cert, nodes=total, wall_time=time.perf_counter() - t0, strategy=Strategy.BRUTE
    )
