"""Explicit certificate labelings on Kneser graphs.

* ``construct_trdf``: k+1 pairwise disjoint k-sets labelled 2, everything else
  0.  A total Roman (hence Roman) function of weight 2(k+1) once n >= k(k+1).
* ``construct_srdf``: signed Roman functions on K(n,2), n >= 12, of weight 3
  for odd n and 5 for even n, built from a split of {1..n} into a low block A
  and a high block B.
* ``hitting_witness``: the set-hitting argument behind the 2(k+1) lower bound.
  Given few 2-vertices, a small set S meets all of them, and every k-set
  S + {s} with s unused by the 2-vertices is forced to label 1.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from itertools import combinations

from .graphs import Graph, KneserDomainError, KneserParams, VertexSet, kneser_graph
from .labelings import Labeling, Variant


class ConstructionDomainError(KneserDomainError):
    pass


def _params(params: KneserParams | tuple[int, int]) -> KneserParams:
    return params if isinstance(params, KneserParams) else KneserParams(*params)


def trdf_twos(params: KneserParams | tuple[int, int]) -> list[tuple[int, ...]]:
    p = _params(params)
    n, k = p.n, p.k
    if k <= 1 or n < k * (k + 1):
        raise ConstructionDomainError(
            f"disjoint-blocks TRDF needs n >= k(k+1) and k > 1, got n={n}, k={k}"
        )
    return [tuple(range(i * k + 1, i * k + k + 1)) for i in range(k + 1)]


def construct_trdf(params: KneserParams | tuple[int, int], g: Graph | None = None) -> Labeling:
    """V2 = {1..k}, {k+1..2k}, ..., {k^2+1..k^2+k}; V1 empty; weight 2(k+1)."""
    p = _params(params)
    twos = trdf_twos(p)
    if g is None:
        g = kneser_graph(p)
    return Labeling.from_sets(Variant.TRDF, g.order, [g.index_of(s) for s in twos])


# -- signed constructions on K(n,2) -------------------------------------------

@dataclass(frozen=True)
class SrdfPartition:
    n: int
    case: str
    A_n: frozenset[int]
    B_n: frozenset[int]
    A_n2: frozenset[tuple[int, int]]
    B_n2: frozenset[tuple[int, int]]
    C_n2: frozenset[tuple[int, int]]
    V2: frozenset[tuple[int, int]]
    V1: frozenset[tuple[int, int]]
    Vm1: frozenset[tuple[int, int]]

    def to_json(self) -> str:
        def pairs(s):
            return [list(p) for p in sorted(s)]

        return json.dumps(
            {
                "n": self.n,
                "case": self.case,
                "A_n": sorted(self.A_n),
                "B_n": sorted(self.B_n),
                "A_n2": pairs(self.A_n2),
                "B_n2": pairs(self.B_n2),
                "C_n2": pairs(self.C_n2),
                "V2": pairs(self.V2),
                "V1": pairs(self.V1),
                "Vm1": pairs(self.Vm1),
            },
            indent=2,
        )


def srdf_case(n: int) -> str:
    if n % 2:
        return "odd"
    return "0mod4" if n % 4 == 0 else "2mod4"


def _pair(a: int, b: int) -> tuple[int, int]:
    return (a, b) if a < b else (b, a)


def srdf_partition(n: int) -> SrdfPartition:
    if n < 12 or (n % 2 and n < 13):
        raise ConstructionDomainError(f"signed Roman construction needs n >= 12, got n={n}")
    case = srdf_case(n)
    if case == "odd":
        a_size = (n - 3) // 2
    else:
        a_size = (n - 2) // 2
    A = frozenset(range(1, a_size + 1))
    B = frozenset(range(a_size + 1, n + 1))
    A2 = frozenset(combinations(sorted(A), 2))
    B2 = frozenset(combinations(sorted(B), 2))
    C2 = frozenset(_pair(a, b) for a in A for b in B)
    if case == "odd":
        m = a_size
        # cycle 1-2-...-m-1 on the low block
        twos = {_pair(i, i + 1) for i in range(1, m)} | {_pair(1, m)}
        minus = set(C2)
    elif case == "0mod4":
        twos = {(i, i + 1) for i in range(1, (n - 4) // 2, 2)}
        twos |= {(i, i + 1) for i in range(n // 2, n - 1, 2)}
        twos |= {(1, 3), (2, 4)}
        minus = set(C2) - {((n - 2) // 2, n)}
    else:
        twos = {(i, i + 1) for i in range(1, (n - 2) // 2, 2)}
        twos |= {(i, i + 1) for i in range(n // 2, n, 2)}
        twos |= {(1, 3), (2, 4), (n // 2, (n + 4) // 2)}
        minus = set(C2)
    ones = set(combinations(range(1, n + 1), 2)) - twos - minus
    return SrdfPartition(
        n, case, A, B, A2, B2, C2, frozenset(twos), frozenset(ones), frozenset(minus)
    )


def construct_srdf(n: int, g: Graph | None = None) -> tuple[Labeling, SrdfPartition]:
    part = srdf_partition(n)
    if g is None:
        g = kneser_graph((n, 2))
    f = Labeling.from_sets(
        Variant.SRDF, g.order, [g.index_of(s) for s in part.V2], [g.index_of(s) for s in part.V1]
    )
    return f, part


def srdf_closed_forms(n: int) -> tuple[int, int, int, int]:
    """(|V2|, |V1|, |V-1|, weight) predicted by the closed forms of the construction."""
    case = srdf_case(n)
    if case == "odd":
        return (n - 3) // 2, (n * n - 4 * n + 15) // 4, (n * n - 9) // 4, 3
    if case == "0mod4":
        return (n + 2) // 2, (n * n - 4 * n + 4) // 4, (n * n - 8) // 4, 5
    return (n + 6) // 2, (n * n - 4 * n - 8) // 4, (n * n - 4) // 4, 5


# -- hitting witness -------------------------------------------------------------

@dataclass(frozen=True)
class HittingWitness:
    S: frozenset[int]
    X: frozenset[int]
    Y: frozenset[tuple[int, ...]]

    def check(self, params: KneserParams, V2: list[tuple[int, ...]]) -> None:
        """Raise AssertionError unless the witness invariants hold against ``V2``."""
        k = params.k
        assert len(self.S) <= k - 1, "hitting set larger than k-1"
        assert all(self.S & set(v) for v in V2), "a 2-vertex misses the hitting set"
        used = set().union(*map(set, V2)) if V2 else set()
        assert not (self.X & used), "X meets a 2-vertex"
        assert not (self.X & self.S), "X meets the hitting set"
        assert self.X <= frozenset(range(1, params.n + 1)), "X outside the ground set"
        twos = {tuple(sorted(v)) for v in V2}
        for y in self.Y:
            assert len(y) == k, "Y vertex of wrong size"
            assert y not in twos, "Y meets V2"
            assert all(set(y) & set(v) for v in V2), "Y vertex adjacent to a 2-vertex"


def hitting_witness(
    params: KneserParams | tuple[int, int],
    V2: list[tuple[int, ...]] | list[set[int]],
    *,
    mode: str = "strict",
    shared: int | None = None,
) -> HittingWitness:
    """Greedy max-coverage hitting set of size k-1 for the given 2-vertices.

    ``mode="strict"`` needs 1 <= |V2| <= k-1.  ``mode="pair"`` accepts |V2| = k
    containing two intersecting sets; ``shared`` (default: smallest common
    element of the first intersecting pair) seeds S.
    """
    p = _params(params)
    n, k = p.n, p.k
    sets = [frozenset(v) for v in V2]
    if any(len(s) != k or not s <= set(range(1, n + 1)) for s in sets):
        raise ConstructionDomainError("every V2 vertex must be a k-subset of {1..n}")
    chosen: list[int] = []
    pending = list(sets)
    if mode == "strict":
        if not 1 <= len(sets) <= k - 1:
            raise ConstructionDomainError(f"strict mode needs 1 <= |V2| <= k-1, got {len(sets)}")
    elif mode == "pair":
        if len(sets) != k:
            raise ConstructionDomainError(f"pair mode needs |V2| = k, got {len(sets)}")
        if shared is None:
            meets = [a & b for a, b in combinations(sets, 2) if a & b]
            if not meets:
                raise ConstructionDomainError("pair mode needs two intersecting V2 vertices")
            shared = min(meets[0])
        if sum(shared in s for s in sets) < 2:
            raise ConstructionDomainError(f"element {shared} is not shared by two V2 vertices")
        chosen.append(shared)
        pending = [s for s in pending if shared not in s]
    else:
        raise ValueError(f"unknown mode {mode!r}")
    while pending:
        counts = Counter(x for s in pending for x in s)
        top = max(counts.values())
        pick = min(x for x, c in counts.items() if c == top)
        chosen.append(pick)
        pending = [s for s in pending if pick not in s]
    if len(chosen) > k - 1:
        raise ConstructionDomainError(
            f"no hitting set of size k-1={k - 1} found (greedy needed {len(chosen)})"
        )
    used = set().union(*sets)
    spare = [x for x in range(1, n + 1) if x not in used and x not in chosen]
    pad = [x for x in range(1, n + 1) if x not in chosen and x in used]
    # pad with elements already used by V2 so that X keeps every unused element
    while len(chosen) < k - 1:
        if pad:
            chosen.append(pad.pop(0))
        else:
            chosen.append(spare.pop())
    S = frozenset(chosen)
    X = frozenset(x for x in range(1, n + 1) if x not in used and x not in S)
    Y = frozenset(tuple(sorted(S | {s})) for s in X)
    w = HittingWitness(S, X, Y)
    w.check(p, [tuple(sorted(s)) for s in sets])
    return w


def forced_ones(g: Graph, witness: HittingWitness) -> VertexSet:
    return g.mask_of(witness.Y)
