"""Closed-form bounds and interval bookkeeping with provenance.

Each endpoint of a :class:`BoundsRecord` remembers which rule produced it.
Formula-based operations refuse parameters outside their hypotheses: below
the threshold the formulas are simply wrong (K(9,3) has Roman domination
number 14, not 8).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace
from enum import Enum

from .constructions import srdf_closed_forms
from .graphs import Graph, GraphError, KneserDomainError, KneserParams


class Provenance(str, Enum):
    THM1 = "Thm1"
    PROP1 = "Prop1"
    OBS1 = "Obs1"
    THM2 = "Thm2"
    COR1 = "Cor1"
    THM4_L = "Thm4-L"
    THM4_U = "Thm4-U"
    SOLVER = "SolverExact"
    CERT = "Certificate"


class Quantity(str, Enum):
    GAMMA = "GAMMA"
    RDN = "RDN"
    TRDN = "TRDN"
    SRDN = "SRDN"


class BoundsInconsistency(ValueError):
    pass


@dataclass(frozen=True)
class BoundsRecord:
    quantity: Quantity
    graph: str
    lower: int | None = None
    lower_from: Provenance | None = None
    upper: int | None = None
    upper_from: Provenance | None = None

    def __post_init__(self):
        if self.lower is not None and self.upper is not None and self.lower > self.upper:
            raise BoundsInconsistency(
                f"{self.quantity.value} on {self.graph}: lower {self.lower} ({_tag(self.lower_from)}) "
                f"exceeds upper {self.upper} ({_tag(self.upper_from)})"
            )

    @property
    def closed(self) -> bool:
        return self.lower is not None and self.lower == self.upper

    def raise_lower(self, value: int, why: Provenance) -> "BoundsRecord":
        if self.lower is not None and value <= self.lower:
            return self
        return replace(self, lower=value, lower_from=why)

    def cut_upper(self, value: int, why: Provenance) -> "BoundsRecord":
        if self.upper is not None and value >= self.upper:
            return self
        return replace(self, upper=value, upper_from=why)

    def to_dict(self) -> dict:
        def end(v, p):
            return None if v is None else {"value": v, "provenance": p.value}

        return {
            "invariant": self.quantity.value,
            "graph": self.graph,
            "lower": end(self.lower, self.lower_from),
            "upper": end(self.upper, self.upper_from),
            "closed": self.closed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def _tag(p: Provenance | None) -> str:
    return p.value if p else "unset"


def _kp(params) -> KneserParams:
    return params if isinstance(params, KneserParams) else KneserParams(*params)


def kneser_gamma(params: KneserParams | tuple[int, int]) -> int:
    """Domination number k+1 of K(n,k) for n >= k(k+1), k > 1."""
    p = _kp(params)
    if p.k < 2 or p.n < p.k * (p.k + 1):
        raise KneserDomainError(f"domination formula needs k > 1 and n >= k(k+1); got n={p.n}, k={p.k}")
    return p.k + 1


def kneser_rdn_trdn(params: KneserParams | tuple[int, int]) -> tuple[int, int]:
    p = _kp(params)
    if p.k < 2 or p.n < p.k * (p.k + 1):
        raise KneserDomainError(
            f"Roman/total Roman formula needs k > 1 and n >= k(k+1); got n={p.n}, k={p.k}"
        )
    v = 2 * (p.k + 1)
    return v, v


def srdn_lower_regular(g: Graph) -> int:
    """ceil(order / (d+1)) for a d-regular graph.

    Summing the closed-neighbourhood condition over all vertices counts every
    label d+1 times, so (d+1) f(V) >= order.
    """
    d = g.regular_degree()
    if d is None:
        raise GraphError(f"{g.name()} is not regular")
    if g.order == 0:
        return 0
    return -(-g.order // (d + 1))


# -- sandwich ---------------------------------------------------------------------

def sandwich(
    gamma: BoundsRecord | None,
    rdn: BoundsRecord | None,
    trdn: BoundsRecord | None = None,
) -> tuple[BoundsRecord | None, BoundsRecord | None, BoundsRecord | None]:
    """Tighten the three intervals of one graph to a fixpoint of
    gamma <= RDN <= 2 gamma and RDN <= TRDN.

    A missing record is created (unbounded) when a neighbour can inform it.
    Pass ``trdn`` only for graphs without isolated vertices.
    """
    graph = next((r.graph for r in (gamma, rdn, trdn) if r is not None), "?")
    if gamma is None:
        gamma = BoundsRecord(Quantity.GAMMA, graph)
    if rdn is None:
        rdn = BoundsRecord(Quantity.RDN, graph)
    has_t = trdn is not None
    for r, q in ((gamma, Quantity.GAMMA), (rdn, Quantity.RDN), (trdn, Quantity.TRDN)):
        if r is not None and r.quantity is not q:
            raise ValueError(f"expected a {q.value} record, got {r.quantity.value}")
    try:
        while True:
            before = (gamma, rdn, trdn)
            if gamma.lower is not None:
                rdn = rdn.raise_lower(gamma.lower, Provenance.PROP1)
            if gamma.upper is not None:
                rdn = rdn.cut_upper(2 * gamma.upper, Provenance.PROP1)
            if rdn.upper is not None:
                gamma = gamma.cut_upper(rdn.upper, Provenance.PROP1)
            if rdn.lower is not None:
                gamma = gamma.raise_lower(math.ceil(rdn.lower / 2), Provenance.PROP1)
            if has_t:
                if rdn.lower is not None:
                    trdn = trdn.raise_lower(rdn.lower, Provenance.OBS1)
                if trdn.upper is not None:
                    rdn = rdn.cut_upper(trdn.upper, Provenance.OBS1)
            if (gamma, rdn, trdn) == before:
                break
    except BoundsInconsistency as e:
        raise BoundsInconsistency(f"inconsistent bounds: {e}") from None
    return gamma, rdn, trdn


# -- assembly for Kneser graphs ------------------------------------------------------

def kneser_records(params: KneserParams | tuple[int, int], g: Graph | None = None) -> dict[Quantity, BoundsRecord]:
    """Whatever the closed forms say about K(n,k); absent rules leave endpoints unset."""
    p = _kp(params)
    name = f"K({p.n},{p.k})"
    out = {q: BoundsRecord(q, name) for q in Quantity}
    try:
        gm = kneser_gamma(p)
        out[Quantity.GAMMA] = BoundsRecord(Quantity.GAMMA, name, gm, Provenance.THM1, gm, Provenance.THM1)
        r, t = kneser_rdn_trdn(p)
        out[Quantity.RDN] = BoundsRecord(Quantity.RDN, name, r, Provenance.COR1, r, Provenance.COR1)
        out[Quantity.TRDN] = BoundsRecord(Quantity.TRDN, name, t, Provenance.THM2, t, Provenance.THM2)
    except KneserDomainError:
        pass
    if p.k == 2 and p.n >= 12:
        if g is None:
            from .graphs import kneser_graph

            g = kneser_graph(p)
        rec = out[Quantity.SRDN].raise_lower(srdn_lower_regular(g), Provenance.THM4_L)
        out[Quantity.SRDN] = rec.cut_upper(srdf_closed_forms(p.n)[3], Provenance.THM4_U)
    return out


def from_solver(rec: BoundsRecord, lower: int, upper: int, optimal: bool) -> BoundsRecord:
    """Fold a solver outcome into a record: exact when optimal, else the upper
    end comes from the verified certificate."""
    if optimal:
        return rec.raise_lower(lower, Provenance.SOLVER).cut_upper(upper, Provenance.SOLVER)
    return rec.raise_lower(lower, Provenance.SOLVER).cut_upper(upper, Provenance.CERT)
