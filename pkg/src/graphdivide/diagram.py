"""Link diagrams of oriented divides.

A point of an oriented curve together with its unit tangent is a point of
the link.  The diagram is drawn on the plane of the divide with height
``-arg(u)``, the argument taken in (-pi/2, 3pi/2); so at a crossing the
branch with the smaller argument passes over.

Where the tangent turns through straight down the height jumps between the
two extremes.  The strand is rerouted there: at the corner it leaves along
a ray to far outside the picture below everything, climbs, and comes back
along a parallel ray above everything (or the reverse, for a clockwise
turn).  Every detour uses the same direction, so detours never cross one
another; their rays produce honest crossings with whatever else they pass,
so the diagram built here is a genuine diagram of the link.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import geometry as geo
from .doubling import GenericityFailure, find_intersections, find_windings

# all detours leave in one common direction, so no two of them cross and
# the picture is that of pushing every vertical jump off through a single
# point at infinity; candidates are tried cheapest first
DIRECTIONS = [
    (1, 0), (2, 1), (1, 1), (1, 2), (0, 1), (-1, 2), (-1, 1), (-2, 1),
    (-1, 0), (-2, -1), (-1, -1), (-1, -2), (0, -1), (1, -2), (1, -1), (2, -1),
]
MAX_ATTEMPTS = 24
#: detour mouths sit this fraction of a segment away from the corner;
#: smaller mouths are tried when corners lie close together
MOUTH_FRACTIONS = (Fraction(1, 16), Fraction(1, 256), Fraction(1, 4096))


@dataclass(frozen=True)
class Crossing:
    point: tuple[Fraction, Fraction]
    over: tuple[int, int]  # (component, segment) in the routed curves
    under: tuple[int, int]
    sign: int
    #: source of each branch: ("curve", component, segment) or
    #: ("leg", flap index) for a detour ray
    over_source: tuple = ()
    under_source: tuple = ()


@dataclass
class LinkDiagram:
    crossings: list[Crossing]
    pd_code: list[tuple[int, int, int, int]]
    gauss_code: list[list[int]]
    components: int
    #: components that meet no crossing at all
    free_components: list[int]
    #: routed curves (with detours) for drawing
    routed: list[tuple] = field(repr=False, default_factory=list)
    windings: list = field(repr=False, default_factory=list)

    @property
    def writhe(self) -> int:
        return sum(c.sign for c in self.crossings)

    def crossing_components(self, c: Crossing) -> tuple[int, int]:
        return c.over[0], c.under[0]


def diagram_stats(d: LinkDiagram) -> tuple[int, int, int]:
    """(writhe, crossing count, number of components)."""
    return d.writhe, len(d.crossings), d.components


def _elevation_over(a, b) -> bool:
    """True if branch a passes over branch b.

    Elevations are ("dir", vector) for ordinary segments and
    ("leg", tier, k) for detour rays, tier -1 bottom and +1 top.
    """
    if a[0] == "dir" and b[0] == "dir":
        return geo.direction_less(a[1], b[1])
    ta = 0 if a[0] == "dir" else a[1]
    tb = 0 if b[0] == "dir" else b[1]
    if ta != tb:
        return ta > tb
    # same extreme tier: later detours are further out
    return a[2] > b[2] if ta > 0 else a[2] < b[2]


def _ray_cost(seg_arr, p, d, far):
    """Approximate number of segments the ray from p along d crosses.

    Heuristic only, so floats are fine here.
    """
    px, py = float(p[0]), float(p[1])
    qx, qy = px + float(d[0]) * far, py + float(d[1]) * far
    ax, ay, bx, by = seg_arr.T
    o1 = (qx - px) * (ay - py) - (qy - py) * (ax - px)
    o2 = (qx - px) * (by - py) - (qy - py) * (bx - px)
    o3 = (bx - ax) * (py - ay) - (by - ay) * (px - ax)
    o4 = (bx - ax) * (qy - ay) - (by - ay) * (qx - ax)
    return int(np.count_nonzero((o1 * o2 < 0) & (o3 * o4 < 0)))


def _jitter(rng, attempt):
    # small rational with a large odd denominator, to break the coincidences
    # that integer template coordinates invite; grows with the attempt
    return Fraction(rng.randint(1, 997), 7919 * 2 ** max(0, 6 - attempt))


def _mouths(curves, windings, ints, frac=MOUTH_FRACTIONS[0]):
    """(A, corner, B) for every winding: where the detour legs attach.

    A and B sit on the two segments at the corner, closer to it than any
    crossing on those segments.
    """
    params: dict[tuple[int, int], list[Fraction]] = {}
    for it in ints:
        params.setdefault(it.a[:2], []).append(it.a[2])
        params.setdefault(it.b[:2], []).append(it.b[2])
    out = []
    for w in windings:
        c = curves[w.curve]
        n = len(c)
        vi = w.vertex
        p = c[vi]
        t_in = max(params.get((w.curve, (vi - 1) % n), [Fraction(0)]))
        t_out = min(params.get((w.curve, vi), [Fraction(1)]))
        a_par = min(frac, (1 - Fraction(t_in)) / 2)
        b_par = min(frac, Fraction(t_out) / 2)
        A = geo.add(p, geo.scale(geo.sub(c[vi - 1], p), a_par))
        B = geo.add(p, geo.scale(geo.sub(c[(vi + 1) % n], p), b_par))
        out.append((A, p, B))
    return out


def _fpt(p):
    return (float(p[0]), float(p[1]))


def _rank_directions(curves, mouths):
    """Usable common detour directions, cheapest (fewest crossings) first.

    A direction is unusable when some leg would pass through the corner
    triangle of another winding.
    """
    seg_arr = np.array(
        [[float(a[0]), float(a[1]), float(b[0]), float(b[1])] for c in curves for a, b in zip(c, c[1:] + c[:1])]
    )
    far = 4 * float(max(max(abs(p[0]), abs(p[1])) for c in curves for p in c)) + 100
    tri = [[(_fpt(A), _fpt(p)), (_fpt(p), _fpt(B)), (_fpt(B), _fpt(A))] for A, p, B in mouths]
    costs = {}
    for i, d in enumerate(DIRECTIONS):
        blocked = False
        for k, (A, p, B) in enumerate(mouths):
            for start in (_fpt(A), _fpt(B)):
                end = (start[0] + d[0] * far, start[1] + d[1] * far)
                for j, edges in enumerate(tri):
                    if j != k and any(not geo.clearly_disjoint(start, end, e0, e1) for e0, e1 in edges):
                        blocked = True
        if not blocked:
            costs[i] = sum(_ray_cost(seg_arr, q, d, far) for A, _, B in mouths for q in (A, B))
    order = sorted(costs, key=lambda i: (costs[i], i))
    return order or list(range(len(DIRECTIONS)))


def _choose_direction(ranked, attempt):
    """Common detour direction for one attempt: next candidate, jittered."""
    rng = random.Random(attempt)
    dx, dy = DIRECTIONS[ranked[attempt % len(ranked)]]
    return (dx + _jitter(rng, attempt), dy + _jitter(rng, attempt))


def _route(curves, windings, mouths, directions, attempt=0):
    """Insert a detour at every winding corner."""
    rng = random.Random(-1 - attempt)
    pts_all = [p for c in curves for p in c]
    xs = [p[0] for p in pts_all]
    ys = [p[1] for p in pts_all]
    span = max(max(xs) - min(xs), max(ys) - min(ys)) + 10
    lo = (min(xs), min(ys))

    by_corner = {(w.curve, w.vertex): (k, w) for k, w in enumerate(windings)}
    routed, sources, elevations = [], [], []
    for ci, c in enumerate(curves):
        n = len(c)
        pts, src, elev = [], [], []
        for vi in range(n):
            p = c[vi]
            seg_elev = ("dir", geo.sub(c[(vi + 1) % n], p))
            if (ci, vi) not in by_corner:
                pts.append(p)
                src.append(("curve", ci, vi))
                elev.append(seg_elev)
                continue
            k, w = by_corner[(ci, vi)]
            d = directions[k]
            A, _, B = mouths[k]
            # far enough to leave the bounding box, staggered per detour
            reach = (3 * span + k + _jitter(rng, attempt)) / max(abs(d[0]), abs(d[1]))
            reach += max(abs(p[0] - lo[0]), abs(p[1] - lo[1])) / max(abs(d[0]), abs(d[1]))
            FA = geo.add(A, geo.scale(d, reach))
            FB = geo.add(B, geo.scale(d, reach))
            first, second = (-1, 1) if w.increasing else (1, -1)
            pts += [A, FA, FB, B]
            src += [("leg", k, "out"), ("conn", k), ("leg", k, "back"), ("curve", ci, vi)]
            elev += [("leg", first, k), ("conn", k), ("leg", second, k), seg_elev]
        routed.append(tuple(pts))
        sources.append(src)
        elevations.append(elev)
    return routed, sources, elevations


def _check_mouths(routed, sources, mouths):
    """No detour may pass through the corner another detour starts from.

    The strand jumps through infinity above that corner, so a leg crossing
    the corner triangle (A, corner, B) would change the link.
    """
    legs = [
        (src[si][1], c[si], c[(si + 1) % len(c)])
        for c, src in zip(routed, sources)
        for si in range(len(c))
        if src[si][0] == "leg"
    ]
    flegs = [(j, _fpt(a), _fpt(b)) for j, a, b in legs]
    for k, (A, p, B) in enumerate(mouths):
        for (j, a, b), (_, fa, fb) in zip(legs, flegs):
            if j == k:
                continue
            for e0, e1 in ((A, p), (p, B), (B, A)):
                if geo.clearly_disjoint(fa, fb, _fpt(e0), _fpt(e1)):
                    continue
                if geo.intersect(a, b, e0, e1) is not None:
                    raise GenericityFailure("detour passes through another detour's corner", p)


def build_diagram(curves, windings=None) -> LinkDiagram:
    """Resolve the crossings of a union of oriented closed PL curves.

    Each curve is one link component.  Raises GenericityFailure when no
    choice of detour directions yields a generic diagram.
    """
    curves = [tuple(c) for c in curves]
    if windings is None:
        windings = find_windings(curves)
    ints = find_intersections(curves)  # general position of the input itself
    if not windings:
        return _build(curves, windings, None)
    last_error = None
    for frac in MOUTH_FRACTIONS:
        mouths = _mouths(curves, windings, ints, frac)
        ranked = _rank_directions(curves, mouths)
        for attempt in range(MAX_ATTEMPTS):
            directions = [_choose_direction(ranked, attempt)] * len(windings)
            try:
                return _build(curves, windings, (mouths, directions), attempt)
            except GenericityFailure as exc:
                last_error = exc
    raise last_error


def _build(curves, windings, detours, attempt=0) -> LinkDiagram:
    if detours is None:
        routed = curves
        sources = [[("curve", ci, i) for i in range(len(c))] for ci, c in enumerate(curves)]
        elevations = [
            [("dir", geo.sub(c[(i + 1) % len(c)], c[i])) for i in range(len(c))]
            for c in curves
        ]
    else:
        mouths, directions = detours
        routed, sources, elevations = _route(curves, windings, mouths, directions, attempt)
        _check_mouths(routed, sources, mouths)

    exempt = {
        (ci, si)
        for ci, src in enumerate(sources)
        for si, s in enumerate(src)
        if s[0] != "curve"
    }
    ints = find_intersections(routed, exempt=exempt)

    crossings = []
    for it in ints:
        ca, sa, _ = it.a
        cb, sb, _ = it.b
        ea, eb = elevations[ca][sa], elevations[cb][sb]
        if ea[0] == "conn" or eb[0] == "conn":
            raise GenericityFailure("detour connector crosses a strand", it.point)
        src_a, src_b = sources[ca][sa], sources[cb][sb]
        if src_a[0] == "leg" and src_b[0] == "leg" and src_a[1] == src_b[1]:
            raise GenericityFailure("detour legs cross each other", it.point)
        if _elevation_over(ea, eb):
            over, under = (ca, sa), (cb, sb)
        else:
            over, under = (cb, sb), (ca, sa)
        d_over = _seg_dir(routed, over)
        d_under = _seg_dir(routed, under)
        sgn = geo.sign(geo.cross(d_over, d_under))
        crossings.append(
            Crossing(it.point, over, under, sgn, sources[over[0]][over[1]], sources[under[0]][under[1]])
        )
    crossings.sort(key=lambda c: (c.point[0], c.point[1]))

    # walk every component, ordering its passages through crossings
    params = {}
    for it in ints:
        params[(it.a[0], it.a[1], it.point)] = it.a[2]
        params[(it.b[0], it.b[1], it.point)] = it.b[2]
    passages: dict[int, list] = {ci: [] for ci in range(len(routed))}
    for xi, c in enumerate(crossings):
        for role, (ci, si) in (("over", c.over), ("under", c.under)):
            passages[ci].append((si, params[(ci, si, c.point)], xi, role))
    label = 0
    slots: dict[int, dict[str, int]] = {xi: {} for xi in range(len(crossings))}
    gauss = []
    free = []
    for ci in range(len(routed)):
        seq = sorted(passages[ci])
        if not seq:
            free.append(ci)
            gauss.append([])
            continue
        m = len(seq)
        first = label + 1
        # edge k runs from passage k to passage k+1
        for k, (_, _, xi, role) in enumerate(seq):
            slots[xi][role + "_in"] = first + (k - 1) % m
            slots[xi][role + "_out"] = first + k
        label += m
        gauss.append([(xi + 1) if role == "over" else -(xi + 1) for _, _, xi, role in seq])

    pd = []
    for xi, c in enumerate(crossings):
        s = slots[xi]
        if geo.cross(_seg_dir(routed, c.under), _seg_dir(routed, c.over)) > 0:
            pd.append((s["under_in"], s["over_in"], s["under_out"], s["over_out"]))
        else:
            pd.append((s["under_in"], s["over_out"], s["under_out"], s["over_in"]))
    return LinkDiagram(
        crossings=crossings,
        pd_code=pd,
        gauss_code=gauss,
        components=len(routed),
        free_components=free,
        routed=list(routed),
        windings=list(windings),
    )


def _seg_dir(routed, key):
    ci, si = key
    c = routed[ci]
    return geo.sub(c[(si + 1) % len(c)], c[si])


def linking_number(d: LinkDiagram, group_a, group_b) -> int:
    """Half the signed count of crossings between two sets of components."""
    a, b = set(group_a), set(group_b)
    if a & b:
        raise ValueError("component groups overlap")
    total = 0
    for c in d.crossings:
        i, j = c.over[0], c.under[0]
        if (i in a and j in b) or (i in b and j in a):
            total += c.sign
    if total % 2:
        raise OddCrossingSum(total)
    return total // 2


class OddCrossingSum(AssertionError):
    def __init__(self, total):
        super().__init__(f"signed inter-crossing sum {total} is odd")
