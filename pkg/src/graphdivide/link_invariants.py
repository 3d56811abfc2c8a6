"""Linking numbers, the three Thurston-Bennequin computations, and the
Kauffman bracket / Jones polynomial used to identify knot types.

Conventions
-----------
PD codes list each crossing as ``(a, b, c, d)``: ``a`` is the incoming
under-edge, the rest follow counterclockwise.  The A-smoothing joins
``a``-``b`` and ``c``-``d``.

The Jones polynomial is stored in ``s = t^(1/2)`` (so knots only have even
exponents) and printed in ``t``.  With this normalization the unknot is 1,
the positive (right-handed) trefoil is ``t + t^3 - t^4`` and the
0-crossing two-component unlink is ``-s - s^-1``.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass
from fractions import Fraction
from pathlib import Path

from .diagram import LinkDiagram, build_diagram, linking_number
from .doubling import double, offset
from .tangles import (
    InvariantViolation,
    TangleProduct,
    assemble_graph,
    count_features,
    euler_from_counts,
    slice_invariants,
    tb_from_counts,
    tb_table,
)

DEFAULT_BUDGET = 400  # crossings accepted by the bracket evaluator


class TooManyCrossings(ValueError):
    def __init__(self, n, budget):
        super().__init__(f"{n} crossings exceed the bracket budget of {budget}")
        self.n = n
        self.budget = budget


class LaurentPoly:
    """Integer Laurent polynomial in one variable, kept normalized."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        self.coeffs = {int(e): int(c) for e, c in (coeffs or {}).items() if c}

    @classmethod
    def monomial(cls, exp, coef=1):
        return cls({exp: coef})

    def __add__(self, other):
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out)

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPoly({e: c * other for e, c in self.coeffs.items()})
        out: dict[int, int] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        out = LaurentPoly({0: 1})
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly({0: other})
        return isinstance(other, LaurentPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def shift(self, k):
        return LaurentPoly({e + k: c for e, c in self.coeffs.items()})

    def mirror(self):
        return LaurentPoly({-e: c for e, c in self.coeffs.items()})

    def is_zero(self):
        return not self.coeffs

    def divmod_exact(self, other):
        """Exact division; raises ValueError if other does not divide self."""
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        rem = LaurentPoly(self.coeffs)
        q: dict[int, int] = {}
        top_o = max(other.coeffs)
        lead_o = other.coeffs[top_o]
        low_o = min(other.coeffs)
        while not rem.is_zero():
            top = max(rem.coeffs)
            if top - top_o < min(rem.coeffs) - low_o:
                break
            c, r = divmod(rem.coeffs[top], lead_o)
            if r:
                break
            q[top - top_o] = c
            rem = rem - other.shift(top - top_o) * c
        if not rem.is_zero():
            raise ValueError("polynomial division leaves a remainder")
        return LaurentPoly(q)

    def to_dict(self):
        return {str(e): c for e, c in sorted(self.coeffs.items())}

    @classmethod
    def from_dict(cls, d):
        return cls({int(e): c for e, c in d.items()})

    def format(self, var="t", half=False):
        """Human form; with half=True exponents are halved (s = var^(1/2))."""
        if not self.coeffs:
            return "0"
        parts = []
        for e in sorted(self.coeffs):
            c = self.coeffs[e]
            if half:
                ex = str(e // 2) if e % 2 == 0 else f"{e}/2"
            else:
                ex = str(e)
            if e == 0:
                mono = str(abs(c))
            else:
                mono = var if ex == "1" else f"{var}^{ex}"
                if abs(c) != 1:
                    mono = f"{abs(c)}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, mono))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, mono in parts[1:]:
            out += f" {sign} {mono}"
        return out

    def __repr__(self):
        return f"LaurentPoly({self.to_dict()})"


LOOP = LaurentPoly({2: -1, -2: -1})  # -A^2 - A^-2


def _order(pd):
    """Greedy crossing order keeping the open frontier small."""
    n = len(pd)
    if n == 0:
        return []
    where: dict[int, list[int]] = {}
    for i, x in enumerate(pd):
        for lab in x:
            where.setdefault(lab, []).append(i)
    done = [False] * n
    open_labels: set[int] = set()
    order = []
    for _ in range(n):
        best, best_key = None, None
        cand = {j for lab in open_labels for j in where[lab] if not done[j]}
        if not cand:
            cand = {next(j for j in range(n) if not done[j])}
        for j in cand:
            shared = sum(1 for lab in pd[j] if lab in open_labels)
            key = (-shared, j)
            if best_key is None or key < best_key:
                best, best_key = j, key
        done[best] = True
        order.append(best)
        for lab in pd[best]:
            if lab in open_labels:
                open_labels.discard(lab)
            elif pd[best].count(lab) == 1:
                open_labels.add(lab)
    return order


def _join(state, x, y):
    """Add an arc between edge ends x and y; returns (state, closed loops)."""
    partner = dict(state)
    if x == y:
        # an edge whose both ends are at this crossing, joined to itself
        return state, 1
    px = partner.pop(x, None)
    py = partner.pop(y, None)
    loops = 0
    if px is not None:
        partner.pop(px, None)
    if py is not None:
        partner.pop(py, None)
    if px is None and py is None:
        partner[x], partner[y] = y, x
    elif px is None:
        partner[x], partner[py] = py, x
    elif py is None:
        partner[y], partner[px] = px, y
    elif px == y:
        loops = 1
    else:
        partner[px], partner[py] = py, px
    return frozenset(partner.items()), loops


def kauffman_bracket(pd, free_loops: int = 0, budget: int = DEFAULT_BUDGET) -> LaurentPoly:
    """Bracket polynomial in A of a PD code plus ``free_loops`` crossing-free
    circles.  Evaluated by a dynamic program over the open frontier, so the
    cost depends on the frontier width rather than 2^n.
    """
    pd = [tuple(x) for x in pd]
    if len(pd) > budget:
        raise TooManyCrossings(len(pd), budget)
    if not pd:
        return LOOP ** max(free_loops - 1, 0) if free_loops else LaurentPoly({0: 1})
    states: dict[frozenset, LaurentPoly] = {frozenset(): LaurentPoly({0: 1})}
    for i in _order(pd):
        a, b, c, d = pd[i]
        nxt: dict[frozenset, LaurentPoly] = {}
        for st, poly in states.items():
            for weight, pairs in ((1, ((a, b), (c, d))), (-1, ((a, d), (b, c)))):
                s, loops = st, 0
                for x, y in pairs:
                    s, k = _join(s, x, y)
                    loops += k
                term = poly.shift(weight) * (LOOP ** loops)
                nxt[s] = nxt[s] + term if s in nxt else term
        states = nxt
    if set(states) != {frozenset()}:
        raise ValueError("PD code is not closed: some edge appears only once")
    total = states[frozenset()]
    return total.divmod_exact(LOOP) * (LOOP ** free_loops)


def _pd_over_incoming(pd):
    """For each crossing, True if the over strand enters at slot 3 (so it runs
    d -> b), found by walking components from the known under-strand ends."""
    where: dict[int, list[tuple[int, int]]] = {}
    for i, x in enumerate(pd):
        for s, lab in enumerate(x):
            where.setdefault(lab, []).append((i, s))
    incoming: set[tuple[int, int]] = set()

    def walk(i, s):
        while (i, s) not in incoming:
            incoming.add((i, s))
            out = (i, (s + 2) % 4)
            lab = pd[out[0]][out[1]]
            ends = where[lab]
            i, s = ends[0] if ends[1] == out else ends[1]

    for i in range(len(pd)):
        walk(i, 0)
    result = []
    for i in range(len(pd)):
        if (i, 3) in incoming:
            result.append(True)
        elif (i, 1) in incoming:
            result.append(False)
        else:
            # component that is never under: orient by label order
            b, d = pd[i][1], pd[i][3]
            result.append(b - d == 1 or d - b > 1)
    return result


def pd_writhe(pd) -> int:
    """Writhe of a PD code: a crossing is positive when the over strand
    enters at slot 3 (runs from d to b)."""
    return sum(1 if up else -1 for up in _pd_over_incoming(pd))


def pd_components(pd) -> int:
    labels = {lab for x in pd for lab in x}
    parent = {lab: lab for lab in labels}

    def find(u):
        while parent[u] != u:
            parent[u] = parent[parent[u]]
            u = parent[u]
        return u

    for a, b, c, d in pd:
        parent[find(a)] = find(c)
        parent[find(b)] = find(d)
    return len({find(lab) for lab in labels})


def jones_from_pd(pd, free_loops: int = 0, writhe: int | None = None, budget=DEFAULT_BUDGET):
    """Jones polynomial in s = t^(1/2)."""
    if writhe is None:
        writhe = pd_writhe(pd)
    br = kauffman_bracket(pd, free_loops, budget)
    # (-A)^(-3w) <D>, then A = s^(-1/2): exponent e of A becomes -e/2 in s
    norm = br.shift(-3 * writhe) * (-1 if writhe % 2 else 1)
    out = {}
    for e, c in norm.coeffs.items():
        if e % 2:
            raise InvariantViolation(f"odd A-exponent {e} after writhe normalization")
        out[-e // 2] = c
    return LaurentPoly(out)


def jones(d: LinkDiagram, budget=DEFAULT_BUDGET) -> LaurentPoly:
    return jones_from_pd(d.pd_code, len(d.free_components), d.writhe, budget)


def determinant_of(v: LaurentPoly) -> int:
    """|V(t = -1)|, evaluated at s = i."""
    re = im = 0
    for e, c in v.coeffs.items():
        k = e % 4
        if k == 0:
            re += c
        elif k == 1:
            im += c
        elif k == 2:
            re -= c
        else:
            im -= c
    n2 = re * re + im * im
    r = math.isqrt(n2)
    if r * r != n2:
        raise InvariantViolation(f"|V(-1)|^2 = {n2} is not a square")
    return r


def determinant(d: LinkDiagram, budget=DEFAULT_BUDGET) -> int:
    return determinant_of(jones(d, budget))


# --- reference table -----------------------------------------------------


@dataclass
class ReferenceEntry:
    name: str
    pd: list
    components: int
    jones: LaurentPoly
    determinant: int


def parse_pd_text(text: str):
    """Parse 'X(a,b,c,d)' or '[(a,b,c,d), ...]' style PD text."""
    import re

    quads = re.findall(r"[\(\[]\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*[\)\]]", text)
    return [tuple(int(v) for v in q) for q in quads]


def load_reference_table(path=None) -> list[ReferenceEntry]:
    """Lines: ``name<TAB>PD``; '#' lines are provenance comments."""
    if path is None:
        path = Path(__file__).parent / "data" / "reference_knots.txt"
    entries = []
    for line in Path(path).read_text().splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        name, _, pd_text = line.partition(" ")
        pd = parse_pd_text(pd_text)
        v = jones_from_pd(pd)
        entries.append(ReferenceEntry(name, pd, pd_components(pd), v, determinant_of(v)))
    return entries


def identify(mu: int, v: LaurentPoly, det: int, table) -> str:
    """Match by Jones, determinant and component count, up to mirror."""
    if mu == 1 and v == LaurentPoly({0: 1}):
        return "consistent with unknot"
    for e in table:
        if e.components != mu or e.determinant != det:
            continue
        if e.jones == v:
            return f"matches {e.name}"
        if e.jones.mirror() == v:
            return f"matches mirror of {e.name}"
    return "unidentified"


# --- tb -------------------------------------------------------------------


def tb_geometric(p: TangleProduct, side: str = "left") -> int:
    """Linking number of the doubled divide with its parallel copy."""
    d = double(p)
    o = offset(d, side)
    n = len(d.curves)
    diag = build_diagram(list(d.curves) + list(o.curves))
    return linking_number(diag, range(n), range(n, 2 * n))


@dataclass
class InvariantReport:
    tb_formula: int
    tb_table: int
    tb_geometric: int
    delta: int
    chi_G: int
    chi_s: int
    mu: int
    g_s: Fraction
    writhe: int
    crossings: int
    jones: LaurentPoly
    determinant: int
    identification: str

    def to_json(self) -> str:
        d = asdict(self)
        d["g_s"] = str(self.g_s)
        d["jones"] = self.jones.to_dict()
        return json.dumps(d, indent=2)

    @property
    def jones_text(self) -> str:
        return self.jones.format("t", half=True)

    def check(self):
        """Hard assertions tying the numbers together."""
        if not self.tb_formula == self.tb_table == self.tb_geometric:
            raise InvariantViolation(
                f"tb disagreement: formula {self.tb_formula}, table {self.tb_table}, "
                f"geometric {self.tb_geometric}"
            )
        if self.tb_formula != -self.chi_s:
            raise InvariantViolation(f"tb {self.tb_formula} != -chi_s {-self.chi_s}")
        if self.mu == 1 and self.tb_formula != 2 * self.g_s - 1:
            raise InvariantViolation(f"tb {self.tb_formula} != 2 g_s - 1 = {2 * self.g_s - 1}")


def compute_report(p: TangleProduct, side: str = "left", table=None, budget=DEFAULT_BUDGET) -> InvariantReport:
    counts = count_features(p)
    graph = assemble_graph(p)
    chi = euler_from_counts(counts)
    if chi != graph.euler_direct:
        raise InvariantViolation(f"Euler characteristic {chi} from counts, {graph.euler_direct} from graph")
    d = double(p)
    mu = len(d.curves)
    chi_s, g_s = slice_invariants(p, mu)
    diag = build_diagram(d.curves)
    v = jones(diag, budget)
    det = determinant_of(v)
    verdict = identify(mu, v, det, load_reference_table() if table is None else table)
    report = InvariantReport(
        tb_formula=2 * counts.delta - chi,
        tb_table=tb_table(p),
        tb_geometric=tb_geometric(p, side),
        delta=counts.delta,
        chi_G=chi,
        chi_s=chi_s,
        mu=mu,
        g_s=g_s,
        writhe=diag.writhe,
        crossings=len(diag.crossings),
        jones=v,
        determinant=det,
        identification=verdict,
    )
    if report.tb_formula != tb_from_counts(counts):
        raise InvariantViolation("tb from counts disagrees with 2 delta - chi")
    report.check()
    return report


@dataclass
class CellContribution:
    cell: tuple[int, int]
    signs: list[int]

    @property
    def value(self) -> Fraction:
        return Fraction(sum(self.signs), 2)


def cell_contributions(p: TangleProduct, side: str = "left"):
    """Split the crossings between the doubled divide and its offset by cell.

    A crossing between two ordinary strands belongs to their common cell; a
    crossing on a detour leg belongs to the cell of the winding corner the
    detour starts from.  Returns (per-cell contributions in cell order,
    signs that could not be attributed).
    """
    d = double(p)
    o = offset(d, side)
    n = len(d.curves)
    prov = list(d.provenance) + list(o.provenance)
    diag = build_diagram(list(d.curves) + list(o.curves))
    corner_cell = {k: prov[w.curve][w.vertex] for k, w in enumerate(diag.windings)}

    def cell_of(src):
        return prov[src[1]][src[2]] if src[0] == "curve" else corner_cell[src[1]]

    per = {(c.column, c.slot): [] for c in p.cells}
    loose = []
    for x in diag.crossings:
        if (x.over[0] < n) == (x.under[0] < n):
            continue
        a, b = x.over_source, x.under_source
        legs = [s for s in (a, b) if s[0] == "leg"]
        if len(legs) == 1:
            per[cell_of(legs[0])].append(x.sign)
        elif cell_of(a) == cell_of(b):
            per[cell_of(a)].append(x.sign)
        else:
            loose.append(x.sign)
    return [CellContribution(c, s) for c, s in per.items()], loose
