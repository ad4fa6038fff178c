"""Iterated local search for a good starting incumbent.

Each round raises one or two random vertices to 2 and then greedily lowers
labels in random order while feasibility holds.  Rounds that end heavier than
the current labeling are undone, except for an occasional uphill step.  The
generator is seeded, so results are reproducible.
"""

from __future__ import annotations

import numpy as np
from numba import njit

from ._kernel import SRDN, TRDN

UPHILL = 0.05


@njit(cache=True)
def _counts(ptr, idx, n, f, s, c2):
    for v in range(n):
        s[v] = 0
        c2[v] = 0
        for j in range(ptr[v], ptr[v + 1]):
            u = idx[j]
            s[v] += f[u]
            if f[u] == 2:
                c2[v] += 1


@njit(cache=True)
def _can_set(ptr, idx, inv, low, f, s, c2, v, b):
    a = f[v]
    d = b - a
    if b == low and c2[v] == 0:
        return False
    if inv == SRDN and s[v] + b < 1:
        return False
    for j in range(ptr[v], ptr[v + 1]):
        w = idx[j]
        if a == 2 and b != 2 and f[w] == low and c2[w] == 1:
            return False
        if inv == TRDN and s[w] + d < 1:
            return False
        if inv == SRDN and s[w] + d + f[w] < 1:
            return False
    return True


@njit(cache=True)
def _apply(ptr, idx, f, s, c2, v, b):
    a = f[v]
    for j in range(ptr[v], ptr[v + 1]):
        w = idx[j]
        s[w] += b - a
        if a == 2:
            c2[w] -= 1
        if b == 2:
            c2[w] += 1
    f[v] = b


@njit(cache=True)
def _descend(ptr, idx, n, inv, low, f, s, c2):
    changed = True
    while changed:
        changed = False
        for v in np.random.permutation(n):
            for b in (low, 1):
                if b < f[v] and _can_set(ptr, idx, inv, low, f, s, c2, v, b):
                    _apply(ptr, idx, f, s, c2, v, b)
                    changed = True
                    break


@njit(cache=True)
def search(ptr, idx, n, inv, low, start, rounds, seed):
    """Best labeling found from the feasible ``start``."""
    np.random.seed(seed)
    f = start.copy()
    s = np.zeros(n, dtype=np.int64)
    c2 = np.zeros(n, dtype=np.int64)
    _counts(ptr, idx, n, f, s, c2)
    _descend(ptr, idx, n, inv, low, f, s, c2)
    best = f.copy()
    bw = f.sum()
    cw = bw
    keep = f.copy()
    for _ in range(rounds):
        keep[:] = f
        for _k in range(1 + np.random.randint(2)):
            v = np.random.randint(n)
            if f[v] != 2:
                _apply(ptr, idx, f, s, c2, v, 2)
        _descend(ptr, idx, n, inv, low, f, s, c2)
        w = f.sum()
        if w < bw:
            bw = w
            best[:] = f
        if w <= cw or np.random.random() < UPHILL:
            cw = w
        else:
            f[:] = keep
            _counts(ptr, idx, n, f, s, c2)
    return best

