"""Roman, total Roman and signed Roman labelings and their verifiers."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import Iterable, Mapping, Sequence

import numpy as np

from .graphs import Graph, VertexSet


class Variant(str, Enum):
    RDF = "RDF"
    TRDF = "TRDF"
    SRDF = "SRDF"

    @property
    def codomain(self) -> tuple[int, ...]:
        return (-1, 1, 2) if self is Variant.SRDF else (0, 1, 2)

    @property
    def low(self) -> int:
        """The label that must be defended by a neighbouring 2."""
        return -1 if self is Variant.SRDF else 0


class LabelingError(ValueError):
    pass


class VerifierDefect(AssertionError):
    """Two equivalent formulations of a condition disagreed."""


@dataclass(frozen=True)
class Labeling:
    variant: Variant
    values: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "variant", Variant(self.variant))
        object.__setattr__(self, "values", tuple(self.values))
        allowed = self.variant.codomain
        for v, x in enumerate(self.values):
            if x not in allowed:
                raise LabelingError(f"vertex {v} has label {x}, not in {allowed} for {self.variant.value}")

    @classmethod
    def from_sets(
        cls,
        variant: Variant | str,
        order: int,
        twos: Iterable[int] = (),
        ones: Iterable[int] = (),
    ) -> "Labeling":
        """Labeling with the given 2- and 1-vertices; every other vertex gets the low label."""
        variant = Variant(variant)
        vals = [variant.low] * order
        for v in ones:
            vals[v] = 1
        for v in twos:
            if vals[v] == 1:
                raise LabelingError(f"vertex {v} listed as both 1 and 2")
            vals[v] = 2
        return cls(variant, tuple(vals))

    @property
    def order(self) -> int:
        return len(self.values)

    def part(self, label: int) -> VertexSet:
        m = 0
        for v, x in enumerate(self.values):
            if x == label:
                m |= 1 << v
        return VertexSet(m)

    def partition(self) -> dict[int, VertexSet]:
        return {x: self.part(x) for x in self.variant.codomain}

    def as_variant(self, variant: Variant | str) -> "Labeling":
        return Labeling(Variant(variant), self.values)

    def permuted(self, perm: Sequence[int]) -> "Labeling":
        vals = [0] * self.order
        for v, x in enumerate(self.values):
            vals[perm[v]] = x
        return Labeling(self.variant, tuple(vals))


@dataclass(frozen=True)
class VertexLedger:
    vertex: int
    alpha: int
    beta: int
    gamma: int
    label: int
    score: int

    def as_row(self) -> tuple[int, int, int, int, int]:
        return (self.alpha, self.beta, self.gamma, self.label, self.score)


@dataclass
class VerificationReport:
    variant: Variant
    feasible: bool
    weight: int
    violations: list[tuple[str, int]] = field(default_factory=list)
    ledgers: list[VertexLedger] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "variant": self.variant.value,
            "feasible": self.feasible,
            "weight": self.weight,
            "violations": [{"condition": c, "vertex": v} for c, v in self.violations],
            "ledgers": [asdict(lg) for lg in self.ledgers],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def weight(f: Labeling) -> int:
    return sum(f.values)


def _check_sizes(g: Graph, f: Labeling, variant: Variant) -> None:
    if f.variant is not variant:
        raise LabelingError(f"expected a {variant.value} labeling, got {f.variant.value}")
    if f.order != g.order:
        raise LabelingError(f"labeling has {f.order} values but the graph has {g.order} vertices")


def neighbour_sums(g: Graph, vec: Sequence[int]) -> np.ndarray:
    """sum of ``vec`` over N(v) for every v, via the dense adjacency matrix.

    Deliberately a different route from the mask/popcount code so the two can
    be cross-checked.
    """
    n = g.order
    out = np.zeros(n, dtype=np.int64)
    if n == 0:
        return out
    x = np.asarray(vec, dtype=np.float64)
    nbytes = (n + 7) // 8
    step = max(1, (1 << 22) // n)
    for s in range(0, n, step):
        chunk = g.rows[s:s + step]
        buf = b"".join(r.to_bytes(nbytes, "little") for r in chunk)
        bits = np.unpackbits(
            np.frombuffer(buf, dtype=np.uint8).reshape(len(chunk), nbytes), axis=1, bitorder="little"
        )[:, :n]
        out[s:s + len(chunk)] = np.rint(bits.astype(np.float64) @ x).astype(np.int64)
    return out


def _defended(g: Graph, f: Labeling, low: int) -> list[int]:
    """Low-labelled vertices without a 2-neighbour, checked two ways."""
    twos = f.part(2).mask
    by_mask = [v for v, x in enumerate(f.values) if x == low and not g.rows[v] & twos]
    seen2 = neighbour_sums(g, [x == 2 for x in f.values])
    by_quantifier = [v for v, x in enumerate(f.values) if x == low and seen2[v] == 0]
    if by_mask != by_quantifier:
        raise VerifierDefect("mask and quantifier forms of the 2-neighbour condition disagree")
    return by_quantifier


def verify_rdf(g: Graph, f: Labeling) -> VerificationReport:
    _check_sizes(g, f, Variant.RDF)
    bad = _defended(g, f, 0)
    return VerificationReport(Variant.RDF, not bad, weight(f), [("Eq1", v) for v in bad])


def verify_trdf(g: Graph, f: Labeling) -> VerificationReport:
    _check_sizes(g, f, Variant.TRDF)
    violations = [("Eq1", v) for v in _defended(g, f, 0)]
    sums = neighbour_sums(g, f.values)
    eq2 = [v for v in range(g.order) if sums[v] < 1]
    violations += [("Eq2", v) for v in eq2]
    # positive vertices induce no isolated vertex, and every 0-vertex sees a positive one
    positive = f.part(1).mask | f.part(2).mask
    alt = [v for v in range(g.order) if not g.rows[v] & positive]
    if alt != eq2:
        raise VerifierDefect("sum form and induced-subgraph form of the total condition disagree")
    violations.sort(key=lambda cv: (cv[1], cv[0]))
    return VerificationReport(Variant.TRDF, not violations, weight(f), violations)


def ledger(g: Graph, f: Labeling, v: int) -> VertexLedger:
    if f.variant is not Variant.SRDF:
        raise LabelingError("ledgers are defined for signed labelings")
    if f.order != g.order:
        raise LabelingError(f"labeling has {f.order} values but the graph has {g.order} vertices")
    g._check(v)
    row = g.rows[v]
    alpha = (row & f.part(2).mask).bit_count()
    beta = (row & f.part(1).mask).bit_count()
    gamma = (row & f.part(-1).mask).bit_count()
    label = f.values[v]
    return VertexLedger(v, alpha, beta, gamma, label, 2 * alpha + beta - gamma + label)


def ledgers(g: Graph, f: Labeling) -> list[VertexLedger]:
    p2, p1, pm = f.part(2).mask, f.part(1).mask, f.part(-1).mask
    out = []
    for v, row in enumerate(g.rows):
        a, b, c = (row & p2).bit_count(), (row & p1).bit_count(), (row & pm).bit_count()
        x = f.values[v]
        out.append(VertexLedger(v, a, b, c, x, 2 * a + b - c + x))
    return out


def verify_srdf(g: Graph, f: Labeling) -> VerificationReport:
    _check_sizes(g, f, Variant.SRDF)
    violations = [("Eq3", v) for v in _defended(g, f, -1)]
    rows = ledgers(g, f)
    sums = neighbour_sums(g, f.values)
    for lg in rows:
        closed_sum = f.values[lg.vertex] + int(sums[lg.vertex])
        if (closed_sum >= 1) != (lg.score >= 1) or lg.alpha + lg.beta + lg.gamma != g.degree(lg.vertex):
            raise VerifierDefect(f"closed-sum and ledger forms disagree at vertex {lg.vertex}")
        if closed_sum < 1:
            violations.append(("Eq4", lg.vertex))
    violations.sort(key=lambda cv: (cv[1], cv[0]))
    return VerificationReport(Variant.SRDF, not violations, weight(f), violations, rows)


VERIFIERS = {Variant.RDF: verify_rdf, Variant.TRDF: verify_trdf, Variant.SRDF: verify_srdf}


def verify(g: Graph, f: Labeling) -> VerificationReport:
    return VERIFIERS[f.variant](g, f)


# -- labeling files ------------------------------------------------------------

def dumps_labeling(g: Graph, f: Labeling) -> str:
    if f.order != g.order:
        raise LabelingError(f"labeling has {f.order} values but the graph has {g.order} vertices")
    lines = [f"{f.variant.value} {f.order}"]
    lines += [f"{g.vertex_id(v)} {x}" for v, x in enumerate(f.values)]
    return "\n".join(lines) + "\n"


def loads_labeling(g: Graph, text: str) -> Labeling:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise LabelingError("empty labeling file")
    head = lines[0].split()
    if len(head) != 2:
        raise LabelingError(f"malformed header {lines[0]!r}")
    try:
        variant = Variant(head[0].upper())
        count = int(head[1])
    except ValueError:
        raise LabelingError(f"malformed header {lines[0]!r}") from None
    if count != g.order:
        raise LabelingError(f"header declares {count} vertices but the graph has {g.order}")
    vals: list[int | None] = [None] * g.order
    for lineno, ln in enumerate(lines[1:], start=2):
        parts = ln.split()
        if len(parts) != 2:
            raise LabelingError(f"line {lineno}: expected 'vertex_id label'")
        try:
            v = g.parse_vertex_id(parts[0])
            x = int(parts[1])
        except (KeyError, ValueError, IndexError) as exc:
            raise LabelingError(f"line {lineno}: {exc}") from None
        if vals[v] is not None:
            raise LabelingError(f"line {lineno}: vertex {parts[0]} labelled twice")
        vals[v] = x
    missing = [g.vertex_id(v) for v, x in enumerate(vals) if x is None]
    if missing:
        raise LabelingError(f"no label for vertices {', '.join(missing[:5])}{'...' if len(missing) > 5 else ''}")
    return Labeling(variant, tuple(vals))


def labeling_from_subsets(
    g: Graph,
    variant: Variant | str,
    twos: Iterable[Iterable[int]] = (),
    ones: Iterable[Iterable[int]] = (),
) -> Labeling:
    """Kneser-mode labeling given as collections of subsets."""
    return Labeling.from_sets(
        variant, g.order, [g.index_of(s) for s in twos], [g.index_of(s) for s in ones]
    )


def labeling_from_mapping(variant: Variant | str, order: int, values: Mapping[int, int], default: int) -> Labeling:
    return Labeling(Variant(variant), tuple(values.get(v, default) for v in range(order)))
