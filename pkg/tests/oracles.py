"""Definition-level oracles, written without touching the package internals.

Graphs are plain adjacency dicts {v: set(neighbours)}; labelings are tuples.
Everything here is slow on purpose.
"""

from __future__ import annotations

import random
from itertools import combinations, product

CODOMAIN = {"RDN": (0, 1, 2), "TRDN": (0, 1, 2), "SRDN": (-1, 1, 2)}


def kneser_adj(n: int, k: int) -> tuple[list[tuple[int, ...]], dict[int, set[int]]]:
    verts = list(combinations(range(1, n + 1), k))
    adj = {i: set() for i in range(len(verts))}
    for i, a in enumerate(verts):
        for j, b in enumerate(verts):
            if i != j and not set(a) & set(b):
                adj[i].add(j)
    return verts, adj


def is_rdf(adj, f) -> bool:
    return all(f[v] != 0 or any(f[u] == 2 for u in adj[v]) for v in adj)


def is_trdf(adj, f) -> bool:
    return is_rdf(adj, f) and all(sum(f[u] for u in adj[v]) >= 1 for v in adj)


def is_srdf(adj, f) -> bool:
    if not all(f[v] != -1 or any(f[u] == 2 for u in adj[v]) for v in adj):
        return False
    return all(f[v] + sum(f[u] for u in adj[v]) >= 1 for v in adj)


FEASIBLE = {"RDN": is_rdf, "TRDN": is_trdf, "SRDN": is_srdf}


def naive_optimum(adj, inv: str) -> tuple[int, tuple[int, ...]]:
    """Lexicographically first labeling of minimum weight (labels ascending)."""
    ok = FEASIBLE[inv]
    best = None
    for f in product(CODOMAIN[inv], repeat=len(adj)):
        if ok(adj, f) and (best is None or sum(f) < best[0]):
            best = (sum(f), f)
    return best


def path_adj(n: int):
    return {v: {u for u in (v - 1, v + 1) if 0 <= u < n} for v in range(n)}


def cycle_adj(n: int):
    return {v: {(v - 1) % n, (v + 1) % n} for v in range(n)}


def complete_adj(n: int):
    return {v: set(range(n)) - {v} for v in range(n)}


def random_connected(rng: random.Random, n: int, p: float) -> list[tuple[int, int]]:
    """Random spanning tree plus independent extra edges."""
    edges = set()
    for v in range(1, n):
        edges.add((rng.randrange(v), v))
    for u, v in combinations(range(n), 2):
        if rng.random() < p:
            edges.add((u, v))
    return sorted(edges)


def corpus(seed: int = 20241015, count: int = 210, max_order: int = 8):
    """Seeded list of (order, edges) connected graphs with 2..max_order vertices."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.randint(2, max_order)
        out.append((n, random_connected(rng, n, rng.choice((0.1, 0.3, 0.5, 0.8)))))
    return out


def adj_from_edges(n: int, edges) -> dict[int, set[int]]:
    adj = {v: set() for v in range(n)}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    return adj


def repair_to_feasible(adj, f, signed):
    """Push a random labeling up until it is feasible."""
    f = list(f)
    low = -1 if signed else 0
    for v in adj:
        if f[v] == low and not any(f[u] == 2 for u in adj[v]):
            f[v] = 1
    if signed:
        changed = True
        while changed:
            changed = False
            for v in adj:
                if f[v] + sum(f[u] for u in adj[v]) < 1:
                    u = min((u for u in [v, *adj[v]] if f[u] < 2), key=lambda u: f[u])
                    f[u] = 1 if f[u] == -1 else 2
                    changed = True
    return tuple(f)
