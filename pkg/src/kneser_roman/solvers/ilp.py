"""0-1 models for Roman and signed Roman domination, written as LP files.

Encoding: x_v = 1 iff f(v) = 1 and y_v = 1 iff f(v) = 2.  Signed labelings map
-1 to x_v = y_v = 0, which is why the signed objective carries the constant
-|V|.  There is no model for total Roman domination.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from ..graphs import Graph, _bits
from ..labelings import Labeling
from .common import Invariant, SolverError

LINE_WIDTH = 78
ILP_BRUTE_CAP = 24


class UnsupportedModelError(SolverError):
    pass


Terms = tuple[tuple[int, str], ...]


@dataclass(frozen=True)
class Constraint:
    name: str
    terms: Terms
    sense: str
    rhs: int

    def holds(self, assign: dict[str, int]) -> bool:
        lhs = sum(c * assign[v] for c, v in self.terms)
        if self.sense == ">=":
            return lhs >= self.rhs
        if self.sense == "<=":
            return lhs <= self.rhs
        return lhs == self.rhs


@dataclass(frozen=True)
class IlpModel:
    name: str
    graph: str
    variables: tuple[str, ...]
    objective: Terms
    constant: int = 0
    constraints: tuple[Constraint, ...] = field(default_factory=tuple)

    def evaluate(self, assign: dict[str, int]) -> int:
        return sum(c * assign[v] for c, v in self.objective) + self.constant

    def feasible(self, assign: dict[str, int]) -> bool:
        return all(c.holds(assign) for c in self.constraints)


def _vid(g: Graph, v: int) -> str:
    return str(g.vertex_id(v))


def emit_ilp(g: Graph, inv: Invariant | str) -> IlpModel:
    inv = Invariant.parse(inv)
    if inv is Invariant.TRDN:
        raise UnsupportedModelError("no ILP model is defined for total Roman domination")
    ids = [_vid(g, v) for v in range(g.order)]
    xs = [f"x_{i}" for i in ids]
    ys = [f"y_{i}" for i in ids]
    variables = tuple(name for pair in zip(xs, ys) for name in pair)
    cover = []
    excl = []
    for v in range(g.order):
        terms = [(1, xs[v]), (1, ys[v])] + [(1, ys[u]) for u in _bits(g.rows[v])]
        cover.append(Constraint(f"dom_{ids[v]}", tuple(terms), ">=", 1))
        excl.append(Constraint(f"one_{ids[v]}", ((1, xs[v]), (1, ys[v])), "<=", 1))
    if inv is Invariant.RDN:
        objective = tuple(t for v in range(g.order) for t in ((1, xs[v]), (2, ys[v])))
        return IlpModel("RDP", g.name(), variables, objective, 0, tuple(cover + excl))
    closed = []
    for v in range(g.order):
        nb = [v] + list(_bits(g.rows[v]))
        nb.sort()
        terms = tuple(t for u in nb for t in ((2, xs[u]), (3, ys[u])))
        # sum over N[v] of (2x + 3y - 1) >= 1, constant moved to the right
        closed.append(Constraint(f"sum_{ids[v]}", terms, ">=", 1 + len(nb)))
    objective = tuple(t for v in range(g.order) for t in ((2, xs[v]), (3, ys[v])))
    return IlpModel("SRDP", g.name(), variables, objective, -g.order, tuple(excl + cover + closed))


def encode(model: IlpModel, g: Graph, f: Labeling) -> dict[str, int]:
    out = {}
    for v, val in enumerate(f.values):
        i = _vid(g, v)
        out[f"x_{i}"] = int(val == 1)
        out[f"y_{i}"] = int(val == 2)
    return out


def _expr(terms: Terms) -> list[str]:
    out = []
    for k, (c, v) in enumerate(terms):
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        body = v if mag == 1 else f"{mag} {v}"
        out.append(body if k == 0 and sign == "+" else f"{sign} {body}")
    return out


def _wrap(head: str, tokens: list[str]) -> list[str]:
    lines = []
    cur = head
    for tok in tokens:
        if len(cur) + 1 + len(tok) > LINE_WIDTH and cur.strip():
            lines.append(cur)
            cur = "   " + tok
        else:
            cur = f"{cur} {tok}" if cur else tok
    lines.append(cur)
    return lines


def write_lp(model: IlpModel) -> bytes:
    """CPLEX-style LP text; identical models give identical bytes."""
    lines = [f"\\ {model.name} model", f"\\ graph {model.graph}"]
    if model.variables:
        lines.append("Minimize")
        toks = _expr(model.objective)
        if model.constant:
            toks.append(f"{'-' if model.constant < 0 else '+'} {abs(model.constant)}")
        lines += _wrap(" obj:", toks)
        lines.append("Subject To")
        for c in model.constraints:
            lines += _wrap(f" {c.name}:", _expr(c.terms) + [c.sense, str(c.rhs)])
        lines.append("Bounds")
        lines += [f" 0 <= {v} <= 1" for v in model.variables]
        lines.append("Binary")
        lines += [f" {v}" for v in model.variables]
    lines.append("End")
    return ("\n".join(lines) + "\n").encode("ascii")


def solve_ilp_brute(model: IlpModel) -> tuple[int, dict[str, int]]:
    """Exhaustive 0-1 minimisation of a small model (for checking emitted models)."""
    nv = len(model.variables)
    if nv > ILP_BRUTE_CAP:
        raise SolverError(f"refusing to enumerate 2^{nv} assignments")
    best = None
    for bits in product((0, 1), repeat=nv):
        a = dict(zip(model.variables, bits))
        if model.feasible(a):
            val = model.evaluate(a)
            if best is None or val < best[0]:
                best = (val, a)
    if best is None:
        raise SolverError("model is infeasible")
    return best
