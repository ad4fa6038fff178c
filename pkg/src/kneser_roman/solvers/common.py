from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum

from ..graphs import Graph
from ..labelings import Labeling, Variant, VerifierDefect, verify


class Invariant(str, Enum):
    RDN = "RDN"
    TRDN = "TRDN"
    SRDN = "SRDN"

    @property
    def variant(self) -> Variant:
        return {"RDN": Variant.RDF, "TRDN": Variant.TRDF, "SRDN": Variant.SRDF}[self.value]

    @classmethod
    def parse(cls, text: "str | Invariant") -> "Invariant":
        if isinstance(text, Invariant):
            return text
        return cls(text.upper())


class Strategy(str, Enum):
    BRUTE = "BruteForce"
    BNB = "BranchAndBound"
    EMIT = "EmitOnly"


class SolverError(ValueError):
    pass


@dataclass
class SolveRequest:
    invariant: Invariant
    strategy: Strategy = Strategy.BNB
    budget: float = 600.0
    threads: int = 1
    allow_large_brute: bool = False

    def __post_init__(self):
        self.invariant = Invariant.parse(self.invariant)
        self.strategy = Strategy(self.strategy)
        if self.budget <= 0:
            raise SolverError("time budget must be positive")
        if self.threads < 1:
            raise SolverError("thread count must be at least 1")


@dataclass
class SolveResult:
    invariant: Invariant
    lower: int
    upper: int
    certificate: Labeling
    nodes: int = 0
    wall_time: float = 0.0
    strategy: Strategy = Strategy.BNB
    exhausted_budget: bool = False
    notes: dict = field(default_factory=dict)

    @property
    def optimal(self) -> bool:
        return not self.exhausted_budget and self.lower == self.upper

    @property
    def optimum(self) -> int | str:
        return self.upper if self.optimal else "unknown(budget exhausted)"

    def to_dict(self, g: Graph | None = None) -> dict:
        cert = list(self.certificate.values)
        out = {
            "invariant": self.invariant.value,
            "strategy": self.strategy.value,
            "optimum": self.optimum,
            "lower": self.lower,
            "upper": self.upper,
            "nodes": self.nodes,
            "wall_time": round(self.wall_time, 6),
            "certificate": {
                "variant": self.certificate.variant.value,
                "values": cert,
            },
        }
        if g is not None:
            out["graph"] = g.name()
            out["certificate"]["vertex_ids"] = [g.vertex_id(v) for v in range(g.order)]
        return out

    def to_json(self, g: Graph | None = None, *, include_timing: bool = True) -> str:
        d = self.to_dict(g)
        if not include_timing:
            d.pop("wall_time")
        return json.dumps(d, indent=2)


def assert_certificate(g: Graph, inv: Invariant, f: Labeling, value: int) -> None:
    """Every solver exit path goes through here."""
    rep = verify(g, f)
    if f.variant is not inv.variant or not rep.feasible or rep.weight != value:
        raise VerifierDefect(
            f"solver certificate for {inv.value} fails verification "
            f"(feasible={rep.feasible}, weight={rep.weight}, claimed={value})"
        )


def check_certificate(g: Graph, inv: Invariant | str, claimed_value: int, f: Labeling) -> bool:
    inv = Invariant.parse(inv)
    if f.variant is not inv.variant:
        raise SolverError(f"{inv.value} needs a {inv.variant.value} labeling, got {f.variant.value}")
    rep = verify(g, f)
    return rep.feasible and rep.weight == claimed_value
