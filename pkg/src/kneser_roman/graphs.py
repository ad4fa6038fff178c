"""Simple graphs with dense bit-row adjacency, Kneser construction and I/O.

Vertices are indices ``0..order-1``.  Each adjacency row is a Python ``int``
whose bit ``u`` is set iff ``u`` is a neighbour, so neighbourhood queries are
mask operations and counts are popcounts.
"""

from __future__ import annotations

from dataclasses import InitVar, dataclass, field
from itertools import combinations
from math import comb
from typing import Iterable, Iterator, Sequence

import numpy as np

DEFAULT_VERTEX_CAP = 10_000


class GraphError(ValueError):
    """Base class for graph construction and parsing failures."""


class KneserDomainError(GraphError):
    pass


class GraphSizeError(GraphError):
    pass


class ParseError(GraphError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


def _bits(mask: int) -> Iterator[int]:
    if mask.bit_length() <= 256:
        while mask:
            low = mask & -mask
            yield low.bit_length() - 1
            mask ^= low
        return
    # wide masks: scanning the binary string beats repeated big-int updates
    digits = bin(mask)[:1:-1]
    i = digits.find("1")
    while i != -1:
        yield i
        i = digits.find("1", i + 1)


@dataclass(frozen=True)
class VertexSet:
    """Set of vertex indices stored as a bitmask."""

    mask: int = 0

    @classmethod
    def of(cls, vertices: Iterable[int]) -> "VertexSet":
        m = 0
        for v in vertices:
            m |= 1 << v
        return cls(m)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __iter__(self) -> Iterator[int]:
        return _bits(self.mask)

    def __contains__(self, v: object) -> bool:
        return isinstance(v, int) and v >= 0 and bool(self.mask >> v & 1)

    def __or__(self, other: "VertexSet") -> "VertexSet":
        return VertexSet(self.mask | other.mask)

    def __and__(self, other: "VertexSet") -> "VertexSet":
        return VertexSet(self.mask & other.mask)

    def __sub__(self, other: "VertexSet") -> "VertexSet":
        return VertexSet(self.mask & ~other.mask)

    def issubset(self, other: "VertexSet") -> bool:
        return self.mask & ~other.mask == 0

    def isdisjoint(self, other: "VertexSet") -> bool:
        return self.mask & other.mask == 0

    def sorted(self) -> list[int]:
        return list(self)


@dataclass(frozen=True)
class KneserParams:
    n: int
    k: int

    def __post_init__(self):
        if self.k < 1 or self.n < self.k:
            raise KneserDomainError(f"Kneser parameters need k >= 1 and n >= k, got n={self.n}, k={self.k}")

    @property
    def connected_mode(self) -> bool:
        return self.n > 2 * self.k and self.k > 1

    def check_connected_mode(self) -> None:
        if self.k <= 1:
            raise KneserDomainError(f"K({self.n},{self.k}): standing assumption k > 1 violated (K_(n,1) is complete)")
        if self.n <= 2 * self.k:
            raise KneserDomainError(
                f"K({self.n},{self.k}): standing assumption n > 2k violated (graph is disconnected or edgeless)"
            )


@dataclass(frozen=True, eq=False)
class Graph:
    """Immutable simple graph.

    ``rows[v]`` is the open-neighbourhood bitmask of ``v``.  In Kneser mode
    ``subsets[i]`` is the sorted k-subset of ``{1..n}`` with lexicographic rank i.
    """

    rows: tuple[int, ...]
    subsets: tuple[tuple[int, ...], ...] | None = None
    params: KneserParams | None = None
    _index: dict = field(default=None, repr=False, compare=False)
    # generators that are symmetric by construction skip the O(edges) check
    check: InitVar[bool] = True

    def __post_init__(self, check: bool):
        for v, row in enumerate(self.rows if check else ()):
            if row >> v & 1:
                raise GraphError(f"loop at vertex {v}")
            if row >> len(self.rows):
                raise GraphError(f"row {v} references a vertex beyond the order")
            for u in _bits(row):
                if not self.rows[u] >> v & 1:
                    raise GraphError(f"asymmetric adjacency between {v} and {u}")
        if self.subsets is not None:
            if len(self.subsets) != len(self.rows):
                raise GraphError("subset identities do not match the order")
            object.__setattr__(self, "_index", {s: i for i, s in enumerate(self.subsets)})

    @property
    def order(self) -> int:
        return len(self.rows)

    @property
    def all_mask(self) -> int:
        return (1 << len(self.rows)) - 1

    @property
    def is_kneser(self) -> bool:
        return self.subsets is not None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.rows == other.rows and self.subsets == other.subsets

    def __hash__(self) -> int:
        return hash((self.rows, self.subsets))

    def _check(self, v: int) -> None:
        if not 0 <= v < self.order:
            raise IndexError(f"vertex {v} out of range for order {self.order}")

    def degree(self, v: int) -> int:
        self._check(v)
        return self.rows[v].bit_count()

    def degrees(self) -> list[int]:
        return [r.bit_count() for r in self.rows]

    def edge_count(self) -> int:
        return sum(self.degrees()) // 2

    def edges(self) -> Iterator[tuple[int, int]]:
        for v, row in enumerate(self.rows):
            for u in _bits(row >> (v + 1) << (v + 1)):
                yield v, u

    def adjacent(self, u: int, v: int) -> bool:
        self._check(u)
        self._check(v)
        return bool(self.rows[u] >> v & 1)

    def closed_rows(self) -> list[int]:
        return [row | (1 << v) for v, row in enumerate(self.rows)]

    def regular_degree(self) -> int | None:
        degs = set(self.degrees())
        return degs.pop() if len(degs) == 1 else None

    # -- vertex identities ---------------------------------------------------
    def vertex_id(self, v: int) -> str:
        """Textual vertex id: ``a_b_c`` in Kneser mode, the index otherwise."""
        self._check(v)
        if self.subsets is None:
            return str(v)
        return "_".join(str(x) for x in self.subsets[v])

    def index_of(self, subset: Iterable[int]) -> int:
        if self._index is None:
            raise GraphError("graph has no subset identities")
        key = tuple(sorted(subset))
        try:
            return self._index[key]
        except KeyError:
            raise KeyError(f"{set(key)} is not a vertex of this graph") from None

    def parse_vertex_id(self, text: str) -> int:
        if self.subsets is None:
            v = int(text)
            self._check(v)
            return v
        return self.index_of(int(x) for x in text.split("_"))

    def mask_of(self, subsets: Iterable[Iterable[int]]) -> VertexSet:
        return VertexSet.of(self.index_of(s) for s in subsets)

    def name(self) -> str:
        if self.params is not None:
            return f"K({self.params.n},{self.params.k})"
        return f"G(order={self.order}, size={self.edge_count()})"


def open_neighborhood(g: Graph, v: int) -> VertexSet:
    g._check(v)
    return VertexSet(g.rows[v])


def closed_neighborhood(g: Graph, v: int) -> VertexSet:
    g._check(v)
    return VertexSet(g.rows[v] | (1 << v))


def is_connected(g: Graph) -> bool:
    if g.order == 0:
        raise GraphError("connectivity of the empty graph is undefined")
    seen = frontier = 1
    while frontier:
        nxt = 0
        for v in _bits(frontier):
            nxt |= g.rows[v]
        frontier = nxt & ~seen
        seen |= nxt
    return seen == g.all_mask


def from_edges(order: int, edges: Iterable[tuple[int, int]]) -> Graph:
    rows = [0] * order
    for u, v in edges:
        if u == v:
            raise GraphError(f"loop at vertex {u}")
        if not (0 <= u < order and 0 <= v < order):
            raise GraphError(f"edge ({u},{v}) out of range for order {order}")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph(tuple(rows), check=False)


def kneser_graph(
    params: KneserParams | tuple[int, int],
    *,
    permissive: bool = False,
    vertex_cap: int = DEFAULT_VERTEX_CAP,
) -> Graph:
    """Kneser graph K(n,k) with vertices in lexicographic order of their subsets."""
    if not isinstance(params, KneserParams):
        params = KneserParams(*params)
    n, k = params.n, params.k
    if not permissive:
        params.check_connected_mode()
    order = comb(n, k)
    if order > vertex_cap:
        raise GraphSizeError(f"K({n},{k}) has {order} vertices, above the cap of {vertex_cap}")
    subsets = tuple(combinations(range(1, n + 1), k))
    return Graph(_disjointness_rows(subsets, n), subsets, params, check=False)


def _disjointness_rows(subsets: Sequence[tuple[int, ...]], n: int) -> tuple[int, ...]:
    masks = [sum(1 << (x - 1) for x in s) for s in subsets]
    if n > 64:
        return tuple(sum(1 << j for j, mj in enumerate(masks) if not mi & mj) for mi in masks)
    m = np.array(masks, dtype=np.uint64)
    rows: list[int] = []
    step = max(1, (1 << 24) // max(len(masks), 1))
    for start in range(0, len(masks), step):
        block = (m[start:start + step, None] & m[None, :]) == 0
        packed = np.packbits(block, axis=1, bitorder="little")
        rows.extend(int.from_bytes(r.tobytes(), "little") for r in packed)
    return tuple(rows)


def path_graph(n: int) -> Graph:
    return from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return from_edges(n, combinations(range(n), 2))


def edgeless_graph(n: int) -> Graph:
    return Graph((0,) * n)


def relabel(g: Graph, perm: Sequence[int]) -> Graph:
    """Graph with vertex ``v`` renamed ``perm[v]`` (identities dropped)."""
    return from_edges(g.order, ((perm[u], perm[v]) for u, v in g.edges()))


# -- graph6 ------------------------------------------------------------------

GRAPH6_MAX_ORDER = 68719476735


def _g6_size(n: int) -> bytes:
    if n <= 62:
        return bytes([n + 63])
    if n <= 258047:
        return bytes([126, (n >> 12 & 63) + 63, (n >> 6 & 63) + 63, (n & 63) + 63])
    return bytes([126, 126] + [(n >> s & 63) + 63 for s in (30, 24, 18, 12, 6, 0)])


def to_graph6(g: Graph) -> bytes:
    n = g.order
    if n > GRAPH6_MAX_ORDER:
        raise GraphSizeError(f"order {n} exceeds the graph6 limit")
    bits = []
    for j in range(1, n):
        row = g.rows[j]
        for i in range(j):
            bits.append(row >> i & 1)
    bits += [0] * (-len(bits) % 6)
    body = bytes(
        63 + sum(bits[p + q] << (5 - q) for q in range(6)) for p in range(0, len(bits), 6)
    )
    return _g6_size(n) + body + b"\n"


def from_graph6(data: bytes) -> Graph:
    data = data.strip()
    pos = 0
    if data.startswith(b">>graph6<<"):
        pos = 10

    def byte(i: int) -> int:
        if i >= len(data):
            raise ParseError("truncated graph6 input", i)
        c = data[i]
        if not 63 <= c <= 126:
            raise ParseError(f"invalid graph6 byte {c!r}", i)
        return c - 63

    if pos >= len(data):
        raise ParseError("empty graph6 input", pos)
    if data[pos] != 126:
        n = byte(pos)
        pos += 1
    elif pos + 1 < len(data) and data[pos + 1] == 126:
        n = 0
        for i in range(pos + 2, pos + 8):
            n = n << 6 | byte(i)
        pos += 8
    else:
        n = 0
        for i in range(pos + 1, pos + 4):
            n = n << 6 | byte(i)
        pos += 4
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    if len(data) - pos < nbytes:
        raise ParseError(f"truncated graph6 input: expected {nbytes} data bytes", len(data))
    if len(data) - pos > nbytes:
        raise ParseError("trailing bytes after graph6 data", pos + nbytes)
    rows = [0] * n
    b = 0
    for j in range(1, n):
        for i in range(j):
            if byte(pos + b // 6) >> (5 - b % 6) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            b += 1
    return Graph(tuple(rows))


# -- DIMACS --------------------------------------------------------------------

def to_dimacs(g: Graph) -> bytes:
    lines = [f"p edge {g.order} {g.edge_count()}"]
    lines += [f"e {u + 1} {v + 1}" for u, v in g.edges()]
    return ("\n".join(lines) + "\n").encode()


def from_dimacs(data: bytes) -> Graph:
    order = None
    declared = 0
    edges: list[tuple[int, int]] = []
    offset = 0
    for raw in data.splitlines(keepends=True):
        line = raw.decode("ascii", errors="replace").strip()
        here = offset
        offset += len(raw)
        if not line or line[0] == "c":
            continue
        parts = line.split()
        if parts[0] == "p":
            if order is not None:
                raise ParseError("duplicate problem line", here)
            if len(parts) != 4 or parts[1] not in ("edge", "col"):
                raise ParseError("malformed problem line", here)
            try:
                order, declared = int(parts[2]), int(parts[3])
            except ValueError:
                raise ParseError("non-integer size in problem line", here) from None
        elif parts[0] == "e":
            if order is None:
                raise ParseError("edge before problem line", here)
            try:
                u, v = int(parts[1]), int(parts[2])
            except (ValueError, IndexError):
                raise ParseError("malformed edge line", here) from None
            if not (1 <= u <= order and 1 <= v <= order) or u == v:
                raise ParseError(f"invalid edge {u} {v}", here)
            edges.append((u - 1, v - 1))
        else:
            raise ParseError(f"unknown line type {parts[0]!r}", here)
    if order is None:
        raise ParseError("missing problem line", offset)
    g = from_edges(order, edges)
    if g.edge_count() != declared:
        raise ParseError(f"problem line declares {declared} edges, found {g.edge_count()}", offset)
    return g


FORMATS = ("graph6", "dimacs")


def ingest(text: bytes, fmt: str) -> Graph:
    if isinstance(text, str):
        text = text.encode()
    if fmt == "graph6":
        return from_graph6(text)
    if fmt == "dimacs":
        return from_dimacs(text)
    raise ValueError(f"unknown graph format {fmt!r}; expected one of {FORMATS}")


def export(g: Graph, fmt: str) -> bytes:
    if fmt == "graph6":
        return to_graph6(g)
    if fmt == "dimacs":
        return to_dimacs(g)
    raise ValueError(f"unknown graph format {fmt!r}; expected one of {FORMATS}")


def guess_format(path: str, data: bytes) -> str:
    if path.endswith((".g6", ".graph6")):
        return "graph6"
    if path.endswith((".dimacs", ".col", ".clq")):
        return "dimacs"
    head = data.lstrip()[:1]
    return "dimacs" if head in (b"p", b"c") else "graph6"
