"""Initial incumbents for Kneser-mode graphs: the explicit constructions and
an exhaustive search over labelings with many element symmetries."""

from __future__ import annotations

from itertools import product
from math import comb, prod

import numpy as np

from ..constructions import ConstructionDomainError, construct_srdf, construct_trdf
from ..graphs import Graph
from ..labelings import Labeling
from .common import Invariant


def kneser_seed(g: Graph, inv: Invariant) -> Labeling | None:
    p = g.params
    if p is None:
        return None
    try:
        if inv is Invariant.SRDN:
            if p.k != 2:
                return None
            return construct_srdf(p.n, g)[0]
        f = construct_trdf(p, g)
    except ConstructionDomainError:
        return None
    return f.as_variant(inv.variant)


# -- labelings constant on the orbits of a Young subgroup -------------------------

SYMMETRIC_TYPE_CAP = 10
SYMMETRIC_ROW_CAP = 2_000_000


def _partitions(n: int, m: int, top: int | None = None):
    """Non-increasing compositions of n into exactly m positive parts."""
    top = n if top is None else top
    if m == 1:
        if 1 <= n <= top:
            yield (n,)
        return
    for first in range(min(n - m + 1, top), 0, -1):
        for rest in _partitions(n - first, m - 1, first):
            yield (first,) + rest


def _types(blocks: tuple[int, ...], k: int):
    if len(blocks) == 1:
        if k <= blocks[0]:
            yield (k,)
        return
    for c in range(min(k, blocks[0]) + 1):
        for rest in _types(blocks[1:], k - c):
            yield (c,) + rest


def _best_on_quotient(blocks, k, inv: Invariant):
    types = list(_types(blocks, k))
    t = len(types)
    if t > SYMMETRIC_TYPE_CAP:
        return None
    # a type-c vertex has prod C(b_i - c_i, d_i) neighbours of type d
    A = np.array([[prod(comb(b - ci, di) for b, ci, di in zip(blocks, c, d)) for d in types] for c in types])
    size = np.array([prod(comb(b, ci) for b, ci in zip(blocks, c)) for c in types])
    low = inv.variant.low
    L = np.array(list(product(inv.variant.codomain, repeat=t)), dtype=np.int64)
    ok = np.all((L != low) | ((L == 2).astype(np.int64) @ A.T > 0), axis=1)
    opens = L @ A.T
    if inv is Invariant.TRDN:
        ok &= np.all(opens >= 1, axis=1)
    elif inv is Invariant.SRDN:
        ok &= np.all(opens + L >= 1, axis=1)
    if not ok.any():
        return None
    w = np.where(ok, L @ size, np.iinfo(np.int64).max)
    r = int(np.argmin(w))
    return int(w[r]), dict(zip(types, (int(x) for x in L[r])))


def symmetric_seed(g: Graph, inv: Invariant, max_blocks: int = 4) -> Labeling | None:
    """Best labeling of a Kneser-mode graph whose labels depend only on how a
    vertex meets each block of a partition of {1..n} into consecutive blocks."""
    p = g.params
    if p is None:
        return None
    best = None
    rows = 0
    for m in range(1, max_blocks + 1):
        for blocks in _partitions(p.n, m):
            if rows > SYMMETRIC_ROW_CAP:
                break
            hit = _best_on_quotient(blocks, p.k, inv)
            rows += 3 ** len(list(_types(blocks, p.k)))
            if hit is not None and (best is None or hit[0] < best[0]):
                best = (hit[0], blocks, hit[1])
    if best is None:
        return None
    _, blocks, labels = best
    where = [i for i, b in enumerate(blocks) for _ in range(b)]
    vals = []
    for s in g.subsets:
        c = [0] * len(blocks)
        for x in s:
            c[where[x - 1]] += 1
        vals.append(labels[tuple(c)])
    return Labeling(inv.variant, tuple(vals))
