"""Tangle products: the combinatorial encoding of a signed graph divide.

A tangle product is a left-to-right sequence of columns; each column is a
top-to-bottom stack of elementary tangles.  Strands leave a column through
its right ports and enter the next column through its left ports, matched
positionally.  Everything in this module is exact integer bookkeeping; the
geometric realization lives in :mod:`graphdivide.doubling`.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence


class DivideError(Exception):
    """Base class for user-facing errors (bad input, failed validation)."""

    #: optional (line, column) of the offending token when parsed from text
    position: tuple[int, int] | None = None

    def with_position(self, position):
        self.position = position
        line, col = position
        self.args = (f"{self.args[0]} (line {line}, column {col})",) + self.args[1:]
        return self


class ArityMismatch(DivideError):
    def __init__(self, column, expected, found):
        self.column = column
        self.expected = expected
        self.found = found
        super().__init__(
            f"column {column} needs {expected} left port(s), found {found}"
        )


class EmptyProduct(DivideError):
    def __init__(self, msg="product contains no tangle other than identity strands"):
        super().__init__(msg)


class BadValence(DivideError):
    def __init__(self, valence):
        self.valence = valence
        super().__init__(f"branch valence must be at least 3, got {valence}")


class OpenBoundary(DivideError):
    def __init__(self, side, ports):
        self.side = side
        self.ports = ports
        super().__init__(f"{side} boundary has {ports} open port(s)")


class InvariantViolation(AssertionError):
    """An identity that must hold for every valid product failed.

    This signals a bug (in a template, a table, or an algorithm), never bad
    input.
    """


class NonIntegerGenus(InvariantViolation):
    pass


class Sign(enum.Enum):
    PLUS = "+"
    MINUS = "-"

    def flipped(self):
        return Sign.MINUS if self is Sign.PLUS else Sign.PLUS


class Kind(enum.Enum):
    LEFT_END = "left endpoint"
    RIGHT_END = "right endpoint"
    LEFT_FOLD = "left fold"
    RIGHT_FOLD = "right fold"
    BRANCH_PLUS = "(+) branch"
    BRANCH_MINUS = "(-) branch"
    DOUBLE = "double point"
    IDENTITY = "identity strand"


@dataclass(frozen=True)
class Tangle:
    """One elementary tangle.

    ``sign`` is only meaningful for endpoints; ``valence`` only for branches.
    """

    kind: Kind
    sign: Sign | None = None
    valence: int | None = None

    def __post_init__(self):
        if self.kind in (Kind.LEFT_END, Kind.RIGHT_END):
            if not isinstance(self.sign, Sign):
                raise ValueError(f"{self.kind.value} needs a sign")
        elif self.sign is not None:
            raise ValueError(f"{self.kind.value} takes no sign")
        if self.kind in (Kind.BRANCH_PLUS, Kind.BRANCH_MINUS):
            if not isinstance(self.valence, int):
                raise ValueError("branch tangles need an integer valence")
        elif self.valence is not None:
            raise ValueError(f"{self.kind.value} takes no valence")

    @property
    def arity(self) -> tuple[int, int]:
        """(left ports, right ports)."""
        k = self.kind
        if k is Kind.LEFT_END:
            return (0, 1)
        if k is Kind.RIGHT_END:
            return (1, 0)
        if k is Kind.LEFT_FOLD:
            return (0, 2)
        if k is Kind.RIGHT_FOLD:
            return (2, 0)
        if k is Kind.BRANCH_PLUS:
            return (1, self.valence - 1)
        if k is Kind.BRANCH_MINUS:
            return (self.valence - 1, 1)
        if k is Kind.DOUBLE:
            return (2, 2)
        return (1, 1)

    @property
    def vertex_sign(self) -> Sign | None:
        """Sign carried by the graph vertex inside this tangle, if any."""
        if self.kind is Kind.BRANCH_PLUS:
            return Sign.PLUS
        if self.kind is Kind.BRANCH_MINUS:
            return Sign.MINUS
        return self.sign

    @property
    def has_vertex(self) -> bool:
        return self.kind in (Kind.LEFT_END, Kind.RIGHT_END, Kind.BRANCH_PLUS, Kind.BRANCH_MINUS)


def left_end(sign=Sign.PLUS):
    return Tangle(Kind.LEFT_END, sign=Sign(sign))


def right_end(sign=Sign.PLUS):
    return Tangle(Kind.RIGHT_END, sign=Sign(sign))


LEFT_FOLD = Tangle(Kind.LEFT_FOLD)
RIGHT_FOLD = Tangle(Kind.RIGHT_FOLD)
DOUBLE = Tangle(Kind.DOUBLE)
IDENTITY = Tangle(Kind.IDENTITY)


def branch_plus(valence):
    return Tangle(Kind.BRANCH_PLUS, valence=valence)


def branch_minus(valence):
    return Tangle(Kind.BRANCH_MINUS, valence=valence)


# A port is (boundary, index): boundary b sits between column b-1 and b.
Port = tuple[int, int]


@dataclass(frozen=True)
class Cell:
    """Placement of one tangle: its column, slot, and the ports it touches."""

    column: int
    slot: int
    tangle: Tangle
    left_ports: tuple[Port, ...]
    right_ports: tuple[Port, ...]


@dataclass(frozen=True)
class TangleProduct:
    """A validated tangle product.

    Build instances with :func:`validate_product`; ``cells`` and ``routing``
    are derived from ``columns``.
    """

    columns: tuple[tuple[Tangle, ...], ...]
    cells: tuple[Cell, ...] = field(compare=False, repr=False)
    #: routing[b] lists, for each port on boundary b (top to bottom), the
    #: (column, slot) feeding it from the left and the (column, slot)
    #: receiving it on the right.
    routing: tuple[tuple[tuple[tuple[int, int], tuple[int, int]], ...], ...] = field(
        compare=False, repr=False
    )

    @property
    def tangles(self) -> list[Tangle]:
        return [t for col in self.columns for t in col]

    def port_counts(self) -> list[int]:
        """Number of strands crossing each boundary 0..len(columns)."""
        counts = [0]
        for col in self.columns:
            counts.append(sum(t.arity[1] for t in col))
        return counts

    def __len__(self):
        return sum(len(c) for c in self.columns)


def validate_product(columns: Iterable[Sequence[Tangle]]) -> TangleProduct:
    """Check port arities and return a :class:`TangleProduct`.

    Raises ArityMismatch, EmptyProduct, BadValence or OpenBoundary.
    """
    cols = tuple(tuple(c) for c in columns)
    if not cols or any(not c for c in cols):
        raise EmptyProduct("product has an empty column" if cols else "product has no columns")
    for col in cols:
        for t in col:
            if t.kind in (Kind.BRANCH_PLUS, Kind.BRANCH_MINUS) and t.valence < 3:
                raise BadValence(t.valence)
    if all(t.kind is Kind.IDENTITY for col in cols for t in col):
        raise EmptyProduct()

    first_left = sum(t.arity[0] for t in cols[0])
    if first_left:
        raise OpenBoundary("left", first_left)
    for i in range(len(cols) - 1):
        found = sum(t.arity[1] for t in cols[i])
        expected = sum(t.arity[0] for t in cols[i + 1])
        if found != expected:
            raise ArityMismatch(i + 2, expected, found)
    last_right = sum(t.arity[1] for t in cols[-1])
    if last_right:
        raise OpenBoundary("right", last_right)

    cells = []
    feeders: dict[Port, tuple[int, int]] = {}
    receivers: dict[Port, tuple[int, int]] = {}
    for c, col in enumerate(cols):
        li = ri = 0
        for s, t in enumerate(col):
            nl, nr = t.arity
            lp = tuple((c, li + k) for k in range(nl))
            rp = tuple((c + 1, ri + k) for k in range(nr))
            li += nl
            ri += nr
            cells.append(Cell(c, s, t, lp, rp))
            for p in lp:
                receivers[p] = (c, s)
            for p in rp:
                feeders[p] = (c, s)
    routing = []
    for b in range(1, len(cols)):
        n = sum(t.arity[1] for t in cols[b - 1])
        routing.append(tuple((feeders[(b, k)], receivers[(b, k)]) for k in range(n)))
    return TangleProduct(cols, tuple(cells), tuple(routing))


@dataclass(frozen=True)
class FeatureCounts:
    e1: int = 0
    e2: int = 0
    f1: int = 0
    f2: int = 0
    plus_branch_valences: tuple[int, ...] = ()
    minus_branch_valences: tuple[int, ...] = ()
    delta: int = 0

    @property
    def m(self) -> int:
        return len(self.plus_branch_valences)


def count_features(p: TangleProduct) -> FeatureCounts:
    tally = Counter(t.kind for t in p.tangles)
    plus = tuple(sorted(t.valence for t in p.tangles if t.kind is Kind.BRANCH_PLUS))
    minus = tuple(sorted(t.valence for t in p.tangles if t.kind is Kind.BRANCH_MINUS))
    return FeatureCounts(
        e1=tally[Kind.LEFT_END],
        e2=tally[Kind.RIGHT_END],
        f1=tally[Kind.LEFT_FOLD],
        f2=tally[Kind.RIGHT_FOLD],
        plus_branch_valences=plus,
        minus_branch_valences=minus,
        delta=tally[Kind.DOUBLE],
    )


def euler_from_counts(c: FeatureCounts) -> int:
    """Euler characteristic of the source graph, from tangle counts alone."""
    return -(sum(b - 2 for b in c.plus_branch_valences) - c.e2 + c.f1 - c.f2)


def lemma2_contribution(t: Tangle) -> int:
    """Contribution of one tangle to lk(L, L-pushoff)."""
    k = t.kind
    if k is Kind.RIGHT_END or k is Kind.RIGHT_FOLD:
        return -1
    if k is Kind.LEFT_FOLD:
        return 1
    if k is Kind.BRANCH_PLUS:
        return t.valence - 2
    if k is Kind.DOUBLE:
        return 2
    return 0


def tb_table(p: TangleProduct) -> int:
    """Thurston-Bennequin number as a sum of per-tangle contributions."""
    return sum(lemma2_contribution(t) for t in p.tangles)


def tb_from_counts(c: FeatureCounts) -> int:
    return sum(b - 2 for b in c.plus_branch_valences) - c.e2 + c.f1 - c.f2 + 2 * c.delta


@dataclass(frozen=True)
class GraphVertex:
    id: int
    valence: int
    sign: Sign | None
    #: (column, slot) of the tangle holding the vertex; None for the
    #: marker vertex placed on a vertex-free circle component
    cell: tuple[int, int] | None = None


@dataclass(frozen=True)
class AbstractGraph:
    vertices: tuple[GraphVertex, ...]
    edges: tuple[tuple[int, int], ...]
    double_points: int

    @property
    def euler_direct(self) -> int:
        return len(self.vertices) - len(self.edges)

    @property
    def n_components(self) -> int:
        parent = {v.id: v.id for v in self.vertices}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in self.edges:
            parent[find(a)] = find(b)
        return len({find(v.id) for v in self.vertices})

    @property
    def is_embedded_tree(self) -> bool:
        return (
            self.double_points == 0
            and self.euler_direct == 1
            and self.n_components == 1
        )


def _strand_links(cell: Cell):
    """Port-to-port connections made by an edge-interior tangle."""
    t = cell.tangle
    L, R = cell.left_ports, cell.right_ports
    if t.kind is Kind.IDENTITY:
        return [(L[0], R[0])]
    if t.kind is Kind.DOUBLE:
        return [(L[0], R[1]), (L[1], R[0])]
    if t.kind is Kind.LEFT_FOLD:
        return [(R[0], R[1])]
    if t.kind is Kind.RIGHT_FOLD:
        return [(L[0], L[1])]
    return []


def assemble_graph(p: TangleProduct) -> AbstractGraph:
    """Recover the source graph G by tracing strands between vertices."""
    adj: dict[object, list[object]] = {}

    def link(a, b):
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)

    vertices = []
    for cell in p.cells:
        if cell.tangle.has_vertex:
            vid = len(vertices)
            ports = cell.left_ports + cell.right_ports
            vertices.append(
                GraphVertex(vid, len(ports), cell.tangle.vertex_sign, (cell.column, cell.slot))
            )
            for port in ports:
                link(("v", vid), ("p", port))
        else:
            for a, b in _strand_links(cell):
                link(("p", a), ("p", b))

    edges = []
    seen_ports = set()
    for v in vertices:
        for start in adj[("v", v.id)]:
            if start in seen_ports:
                continue
            prev, cur = ("v", v.id), start
            while cur[0] == "p":
                seen_ports.add(cur)
                a, b = adj[cur]
                # a port has exactly two neighbours; step away from prev
                nxt = b if a == prev else a
                prev, cur = cur, nxt
            edges.append((v.id, cur[1]))

    # vertex-free circles: mark each with one valence-2 vertex and a loop
    for node in adj:
        if node[0] == "p" and node not in seen_ports:
            vid = len(vertices)
            vertices.append(GraphVertex(vid, 2, None, None))
            stack = [node]
            while stack:
                q = stack.pop()
                if q in seen_ports:
                    continue
                seen_ports.add(q)
                stack.extend(adj[q])
            edges.append((vid, vid))

    return AbstractGraph(tuple(vertices), tuple(edges), count_features(p).delta)


# Rail pairing tables.  Every strand port carries an upper rail ("u") and a
# lower rail ("l"); each tangle joins the rail ends on its ports in a fixed
# pattern.  Entries are ((side, index, rail), (side, index, rail)).
def rail_pairs(t: Tangle):
    k = t.kind
    if k is Kind.IDENTITY:
        return [(("L", 0, "u"), ("R", 0, "u")), (("L", 0, "l"), ("R", 0, "l"))]
    if k is Kind.DOUBLE:
        return [
            (("L", 0, "u"), ("R", 1, "u")),
            (("L", 0, "l"), ("R", 1, "l")),
            (("L", 1, "u"), ("R", 0, "u")),
            (("L", 1, "l"), ("R", 0, "l")),
        ]
    if k is Kind.LEFT_END:
        return [(("R", 0, "u"), ("R", 0, "l"))]
    if k is Kind.RIGHT_END:
        return [(("L", 0, "u"), ("L", 0, "l"))]
    if k is Kind.LEFT_FOLD:
        return [(("R", 0, "u"), ("R", 1, "l")), (("R", 0, "l"), ("R", 1, "u"))]
    if k is Kind.RIGHT_FOLD:
        return [(("L", 0, "u"), ("L", 1, "l")), (("L", 0, "l"), ("L", 1, "u"))]
    n = t.valence - 1
    if k is Kind.BRANCH_PLUS:
        pairs = [(("L", 0, "u"), ("R", 0, "u"))]
        pairs += [(("R", j, "l"), ("R", j + 1, "u")) for j in range(n - 1)]
        pairs.append((("R", n - 1, "l"), ("L", 0, "l")))
        return pairs
    pairs = [(("L", 0, "u"), ("R", 0, "u"))]
    pairs += [(("L", j, "l"), ("L", j + 1, "u")) for j in range(n - 1)]
    pairs.append((("L", n - 1, "l"), ("R", 0, "l")))
    return pairs


def trace_doubled_components(p: TangleProduct) -> int:
    """Number of components of the doubled divide, counted on rails."""
    parent: dict = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for cell in p.cells:
        ports = {"L": cell.left_ports, "R": cell.right_ports}
        for (s1, i1, r1), (s2, i2, r2) in rail_pairs(cell.tangle):
            a = (ports[s1][i1], r1)
            b = (ports[s2][i2], r2)
            parent[find(a)] = find(b)
    return len({find(x) for x in list(parent)})


def slice_invariants(p: TangleProduct, mu: int) -> tuple[int, Fraction]:
    """Slice Euler characteristic and 4-genus of the graph divide link."""
    g = assemble_graph(p)
    chi_s = g.euler_direct - 2 * g.double_points
    num = 2 - mu - chi_s
    if num % 2:
        raise NonIntegerGenus(f"2 - mu - chi_s = {num} is odd (mu={mu}, chi_s={chi_s})")
    tb = tb_from_counts(count_features(p))
    if tb != -chi_s:
        raise InvariantViolation(f"tb={tb} but -chi_s={-chi_s}")
    return chi_s, Fraction(num, 2)
