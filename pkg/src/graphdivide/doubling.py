"""Geometric realization of tangle products and the doubling method.

Each tangle is drawn in a core cell of width ``CORE`` with its ports spaced
``PORT_GAP`` apart; slanted transition strips connect the cores to the
column boundaries, where port k sits at height -(k + 1/2) * PORT_GAP.

Every strand of the divide is accompanied by two rails at vertical offset
+-RAIL.  The rails are oriented so that the divide lies on the traveller's
right: upper rails run rightwards and lower rails leftwards.  Inside a core
cell the rails are joined according to the template of the tangle kind.

Templates are coordinate tables below.  Right-hand tangles are the
half-turn rotation of their left-hand counterparts, which maps upper rails
to lower rails and preserves orientation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import geometry as geo
from .tangles import Cell, Kind, Sign, Tangle, TangleProduct

PORT_GAP = 8
RAIL = 2
CORE = 16
MIN_TRANSITION = 8
OFFSET = Fraction(RAIL, 4)


class GenericityFailure(Exception):
    """Curves are not in general position (a broken template or offset)."""

    def __init__(self, kind, location):
        self.kind = kind
        self.location = location
        super().__init__(f"{kind} at {_fmt_point(location)}")


class TemplateGenericityFailure(GenericityFailure):
    pass


class OffsetDegeneracy(GenericityFailure):
    pass


def _fmt_point(p):
    if isinstance(p, tuple) and len(p) == 2:
        return "(" + ", ".join(str(Fraction(c)) for c in p) + ")"
    return str(p)


# --- template tables -----------------------------------------------------
# Coordinates are core-local: x in [0, CORE], y relative to the tangle's
# centre.  "rails" are oriented polylines from an entering rail end to an
# exiting one; "divide" is the drawn graph; "vertices"/"double_points" are
# marker positions.

TEMPLATES = {
    "identity": {
        "rails": [[(0, 2), (16, 2)], [(16, -2), (0, -2)]],
        "divide": [[(0, 0), (16, 0)]],
        "vertices": [],
    },
    # plain U-turn, turning clockwise through straight up
    "left_end-": {
        "rails": [[(16, -2), (8, -2), (6, 0), (8, 2), (16, 2)]],
        "divide": [[(8, 0), (16, 0)]],
        "vertices": [(8, 0)],
    },
    # fishtail: the rails cross once and the U-turn bends counterclockwise
    # through straight down
    "left_end+": {
        "rails": [[(16, -2), (12, -2), (8, 2), (5, 3), (2, 0), (5, -3), (8, -2), (12, 2), (16, 2)]],
        "divide": [[(4, 0), (16, 0)]],
        "vertices": [(4, 0)],
    },
    "left_fold": {
        "rails": [
            [(16, -6), (7, -6), (1, 0), (7, 6), (16, 6)],
            [(16, 2), (9, 2), (7, 0), (9, -2), (16, -2)],
        ],
        "divide": [[(16, 4), (8, 4), (4, 0), (8, -4), (16, -4)]],
        "vertices": [],
    },
    "double": {
        "rails": [
            [(0, 6), (3, 6), (13, -2), (16, -2)],
            [(16, -6), (13, -6), (3, 2), (0, 2)],
            [(0, -2), (3, -2), (13, 6), (16, 6)],
            [(16, 2), (13, 2), (3, -6), (0, -6)],
        ],
        "divide": [[(0, 4), (3, 4), (13, -4), (16, -4)], [(0, -4), (3, -4), (13, 4), (16, 4)]],
        "vertices": [],
        "double_points": [(8, 0)],
    },
}


def branch_template(valence):
    """Ribbon boundary around a vertex with one edge left, valence-1 right."""
    n = valence - 1
    ys = [((n - 1) * PORT_GAP) // 2 - j * PORT_GAP for j in range(n)]
    rails = [[(0, 2), (4, 2), (5, ys[0] + 2), (16, ys[0] + 2)]]
    for a, b in zip(ys, ys[1:]):
        # notch between consecutive right edges
        rails.append([(16, a - 2), (8, (a + b) // 2), (16, b + 2)])
    rails.append([(16, ys[-1] - 2), (5, ys[-1] - 2), (4, -2), (0, -2)])
    divide = [[(0, 0), (2, 0)]] + [[(2, 0), (3, y), (16, y)] for y in ys]
    return {"rails": rails, "divide": divide, "vertices": [(2, 0)]}


def _rotate(pt):
    return (CORE - pt[0], -pt[1])


def _rotated(tpl):
    out = {
        "rails": [[_rotate(p) for p in r] for r in tpl["rails"]],
        "divide": [[_rotate(p) for p in d] for d in tpl["divide"]],
        "vertices": [_rotate(p) for p in tpl["vertices"]],
    }
    if "double_points" in tpl:
        out["double_points"] = [_rotate(p) for p in tpl["double_points"]]
    return out


def template_for(t: Tangle):
    k = t.kind
    if k is Kind.IDENTITY:
        return TEMPLATES["identity"]
    if k is Kind.DOUBLE:
        return TEMPLATES["double"]
    if k is Kind.LEFT_END:
        return TEMPLATES["left_end+" if t.sign is Sign.PLUS else "left_end-"]
    if k is Kind.RIGHT_END:
        return _rotated(TEMPLATES["left_end+" if t.sign is Sign.PLUS else "left_end-"])
    if k is Kind.LEFT_FOLD:
        return TEMPLATES["left_fold"]
    if k is Kind.RIGHT_FOLD:
        return _rotated(TEMPLATES["left_fold"])
    if k is Kind.BRANCH_PLUS:
        return branch_template(t.valence)
    return _rotated(branch_template(t.valence))


# --- layout --------------------------------------------------------------


def _port_y(k):
    return -(2 * k + 1) * PORT_GAP // 2


def _core_port_ys(n):
    return [((n - 1) * PORT_GAP) // 2 - j * PORT_GAP for j in range(n)]


@dataclass(frozen=True)
class Placement:
    cell: Cell
    x0: int  # left edge of the core
    y0: int  # vertical centre of the core
    left_port_ys: tuple[int, ...]  # boundary heights of the left ports
    right_port_ys: tuple[int, ...]
    column_left: int  # x of the column's left boundary
    column_right: int


def place(p: TangleProduct) -> list[Placement]:
    """Assign every cell its core position and port heights."""
    by_column: dict[int, list[Cell]] = {}
    for cell in p.cells:
        by_column.setdefault(cell.column, []).append(cell)
    out = []
    x = 0
    for c in range(len(p.columns)):
        cells = by_column[c]
        stack = 0
        rows = []
        for cell in cells:
            nl, nr = cell.tangle.arity
            n = max(nl, nr, 1)
            yc = -(2 * stack + n) * PORT_GAP // 2
            stack += n
            rows.append((cell, yc))
        span = 0
        for cell, yc in rows:
            nl, nr = cell.tangle.arity
            for (b, k), yl in zip(cell.left_ports, _core_port_ys(nl)):
                span = max(span, abs(_port_y(k) - (yc + yl)))
            for (b, k), yr in zip(cell.right_ports, _core_port_ys(nr)):
                span = max(span, abs(_port_y(k) - (yc + yr)))
        trans = max(MIN_TRANSITION, span)
        right = x + 2 * trans + CORE
        for cell, yc in rows:
            out.append(
                Placement(
                    cell,
                    x + trans,
                    yc,
                    tuple(_port_y(k) for _, k in cell.left_ports),
                    tuple(_port_y(k) for _, k in cell.right_ports),
                    x,
                    right,
                )
            )
        x = right
    return out


def _shift(points, dx, dy):
    return [(Fraction(px + dx), Fraction(py + dy)) for px, py in points]


@dataclass(frozen=True)
class DivideDrawing:
    """PL drawing of the graph divide itself."""

    polylines: tuple[tuple[tuple[Fraction, Fraction], ...], ...]
    vertices: tuple[tuple[tuple[Fraction, Fraction], Sign | None], ...]
    double_points: tuple[tuple[Fraction, Fraction], ...]
    width: int
    height: int


def layout(p: TangleProduct) -> DivideDrawing:
    polylines = []
    vertices = []
    doubles = []
    width = 0
    for pl in place(p):
        tpl = template_for(pl.cell.tangle)
        for d in tpl["divide"]:
            polylines.append(tuple(_shift(d, pl.x0, pl.y0)))
        for v in tpl["vertices"]:
            vertices.append((_shift([v], pl.x0, pl.y0)[0], pl.cell.tangle.vertex_sign))
        for q in tpl.get("double_points", []):
            doubles.append(_shift([q], pl.x0, pl.y0)[0])
        nl, nr = pl.cell.tangle.arity
        for yb, yc in zip(pl.left_port_ys, _core_port_ys(nl)):
            polylines.append(tuple(_shift([(pl.column_left, yb), (pl.x0, pl.y0 + yc)], 0, 0)))
        for yb, yc in zip(pl.right_port_ys, _core_port_ys(nr)):
            polylines.append(
                tuple(_shift([(pl.x0 + CORE, pl.y0 + yc), (pl.column_right, yb)], 0, 0))
            )
        width = max(width, pl.column_right)
    bottom = min(y for poly in polylines for _, y in poly)
    return DivideDrawing(tuple(polylines), tuple(vertices), tuple(doubles), width, -bottom)


# --- doubling --------------------------------------------------------------


@dataclass(frozen=True)
class OrientedDivide:
    """Closed oriented PL curves with per-segment source cells.

    ``provenance[i][j]`` is the (column, slot) of the tangle that produced
    segment j (from point j to point j+1, cyclically) of curve i.
    """

    curves: tuple[tuple[tuple[Fraction, Fraction], ...], ...]
    provenance: tuple[tuple[tuple[int, int], ...], ...]

    @property
    def segment_count(self) -> int:
        return sum(len(c) for c in self.curves)


def _rail_pieces(p: TangleProduct):
    pieces = []
    for pl in place(p):
        cid = (pl.cell.column, pl.cell.slot)
        tpl = template_for(pl.cell.tangle)
        for rail in tpl["rails"]:
            pieces.append((_shift(rail, pl.x0, pl.y0), cid))
        nl, nr = pl.cell.tangle.arity
        for yb, yc in zip(pl.left_port_ys, _core_port_ys(nl)):
            a, b = (pl.column_left, yb), (pl.x0, pl.y0 + yc)
            pieces.append((_shift([a, b], 0, RAIL), cid))
            pieces.append((_shift([b, a], 0, -RAIL), cid))
        for yb, yc in zip(pl.right_port_ys, _core_port_ys(nr)):
            a, b = (pl.x0 + CORE, pl.y0 + yc), (pl.column_right, yb)
            pieces.append((_shift([a, b], 0, RAIL), cid))
            pieces.append((_shift([b, a], 0, -RAIL), cid))
    return pieces


def double(p: TangleProduct) -> OrientedDivide:
    """Doubled oriented divide of a validated product."""
    pieces = _rail_pieces(p)
    starts = {}
    for i, (pts, _) in enumerate(pieces):
        if pts[0] in starts:
            raise TemplateGenericityFailure("two rail pieces start at one point", pts[0])
        starts[pts[0]] = i
    used = [False] * len(pieces)
    curves, prov = [], []
    for i in range(len(pieces)):
        if used[i]:
            continue
        pts, cells = [], []
        j = i
        while not used[j]:
            used[j] = True
            piece, cid = pieces[j]
            pts.extend(piece[:-1])
            cells.extend([cid] * (len(piece) - 1))
            end = piece[-1]
            if end not in starts:
                raise TemplateGenericityFailure("rail piece ends at an open point", end)
            j = starts[end]
        if j != i:
            raise TemplateGenericityFailure("rail pieces do not close up", pieces[j][0][0])
        curves.append(tuple(pts))
        prov.append(tuple(cells))
    return OrientedDivide(tuple(curves), tuple(prov))


# --- general position ------------------------------------------------------


@dataclass(frozen=True)
class Intersection:
    point: tuple[Fraction, Fraction]
    a: tuple[int, int, Fraction]  # (curve, segment, parameter)
    b: tuple[int, int, Fraction]


@dataclass(frozen=True)
class Winding:
    curve: int
    vertex: int
    increasing: bool


@dataclass(frozen=True)
class GenericityReport:
    intersections: tuple[Intersection, ...]
    windings: tuple[Winding, ...]


def _segments(curves):
    segs, index = [], []
    for ci, c in enumerate(curves):
        n = len(c)
        for si in range(n):
            segs.append((c[si], c[(si + 1) % n]))
            index.append((ci, si))
    return segs, index


def find_intersections(curves, exempt=frozenset()):
    """All pairwise crossings; raises GenericityFailure on any degeneracy.

    ``exempt`` holds (curve, segment) pairs allowed to point straight down.
    """
    segs, index = _segments(curves)
    for k, (p, q) in enumerate(segs):
        if p == q:
            raise GenericityFailure("zero-length segment", p)
        if index[k] not in exempt and geo.is_cut(geo.sub(q, p)):
            raise GenericityFailure("segment points straight down", p)
    out = []
    seen_points = set()
    sizes = [len(c) for c in curves]
    fsegs = [((float(p[0]), float(p[1])), (float(q[0]), float(q[1]))) for p, q in segs]
    for i, j in geo.candidate_pairs(segs):
        if geo.clearly_disjoint(*fsegs[i], *fsegs[j]):
            continue
        (ci, si), (cj, sj) = index[i], index[j]
        adjacent = ci == cj and (
            (si + 1) % sizes[ci] == sj or (sj + 1) % sizes[ci] == si
        )
        hit = geo.intersect(*segs[i], *segs[j])
        if hit is None:
            continue
        if hit[0] == "overlap":
            raise GenericityFailure("overlapping segments", segs[i][0])
        _, t, u, pt = hit
        if adjacent:
            if pt in (segs[i][0], segs[i][1]) and sizes[ci] > 2:
                continue
            raise GenericityFailure("adjacent segments meet twice", pt)
        if u is None or not (0 < t < 1 and 0 < u < 1):
            raise GenericityFailure("intersection at a corner", pt)
        if pt in seen_points:
            raise GenericityFailure("triple point", pt)
        seen_points.add(pt)
        out.append(Intersection(pt, (ci, si, t), (cj, sj, u)))
    return out


def find_windings(curves, exempt=frozenset()):
    out = []
    for ci, c in enumerate(curves):
        n = len(c)
        for vi in range(n):
            if (ci, (vi - 1) % n) in exempt or (ci, vi) in exempt:
                continue
            d_in = geo.sub(c[vi], c[vi - 1])
            d_out = geo.sub(c[(vi + 1) % n], c[vi])
            if geo.cross(d_in, d_out) == 0 and geo.dot(d_in, d_out) < 0:
                raise GenericityFailure("cusp", c[vi])
            w = geo.turn_crosses_cut(d_in, d_out)
            if w:
                out.append(Winding(ci, vi, w > 0))
    return out


def genericity_check(curves) -> GenericityReport:
    """Verify general position and list winding corners."""
    ints = find_intersections(curves)
    return GenericityReport(tuple(ints), tuple(find_windings(curves)))


# --- offset ----------------------------------------------------------------


def _offset_curve(c, eta, side):
    n = len(c)
    dirs = [geo.sub(c[(i + 1) % n], c[i]) for i in range(n)]
    k = eta if side == "left" else -eta
    shifted = [geo.add(c[i], geo.scale(geo.linf_left_normal(dirs[i]), k)) for i in range(n)]
    out = []
    for i in range(n):
        d0, d1 = dirs[i - 1], dirs[i]
        if geo.cross(d0, d1) == 0:
            out.append(shifted[i])
        else:
            out.append(geo.line_intersection(shifted[i - 1], d0, shifted[i], d1))
    return tuple(out)


def offset(d: OrientedDivide, side: str = "left", eta=OFFSET, retries: int = 3) -> OrientedDivide:
    """Parallel copy of every curve, shifted towards its left (or right) normal.

    Normals are scaled to unit max-norm so all coordinates stay rational.
    The copy must reproduce each crossing of ``d`` exactly four times in the
    union; otherwise the shift is halved and retried.
    """
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    base = len(find_intersections(d.curves))
    for _ in range(retries + 1):
        curves = tuple(_offset_curve(c, eta, side) for c in d.curves)
        try:
            n = len(find_intersections(d.curves + curves))
        except GenericityFailure:
            n = None
        if n == 4 * base:
            return OrientedDivide(curves, d.provenance)
        eta = eta / 2
    raise OffsetDegeneracy("offset copy touches the original", side)
