"""Exact planar predicates on rational points.

Points are pairs of :class:`fractions.Fraction` (ints are accepted).  No
floating point is used to decide anything topological; floats appear only
in bounding-box prefilters, which are padded so they never reject a true
intersection.
"""

from __future__ import annotations

from fractions import Fraction

CUT = (0, -1)


class CutDirection(ValueError):
    """A direction equal to straight down was given to the angular order."""


def sub(a, b):
    return (a[0] - b[0], a[1] - b[1])


def add(a, b):
    return (a[0] + b[0], a[1] + b[1])


def scale(a, k):
    return (a[0] * k, a[1] * k)


def cross(a, b):
    return a[0] * b[1] - a[1] * b[0]


def dot(a, b):
    return a[0] * b[0] + a[1] * b[1]


def sign(x) -> int:
    return (x > 0) - (x < 0)


def is_cut(d) -> bool:
    """True if d points straight down."""
    return d[0] == 0 and d[1] < 0


def _half(d) -> int:
    # rotate by +90 degrees so straight down becomes the positive x-axis,
    # then split the circle at that axis into (0, pi] and (pi, 2pi)
    x, y = -d[1], d[0]
    return 0 if (y > 0 or (y == 0 and x < 0)) else 1


def direction_less(a, b) -> bool:
    """Strict order of directions by angle representative in (-pi/2, 3pi/2).

    Only sign tests and cross products are used.  Directions need not be
    normalized; parallel directions with the same sense compare equal.
    """
    if is_cut(a) or is_cut(b):
        raise CutDirection("direction (0,-1) has no representative in (-pi/2, 3pi/2)")
    ha, hb = _half(a), _half(b)
    if ha != hb:
        return ha < hb
    return cross(a, b) > 0


def turn_crosses_cut(d_in, d_out) -> int:
    """Classify the rotation at a corner from d_in to d_out.

    Returns +1 if the (short) rotation passes through straight down while
    turning counterclockwise (arg increasing), -1 if it does so clockwise,
    and 0 otherwise.  Callers must ensure neither direction is straight down
    and the corner is not a cusp.
    """
    c = cross(d_in, d_out)
    if c > 0:
        return 1 if cross(d_in, CUT) > 0 and cross(CUT, d_out) > 0 else 0
    if c < 0:
        return -1 if cross(d_in, CUT) < 0 and cross(CUT, d_out) < 0 else 0
    return 0


def intersect(p1, p2, q1, q2):
    """Intersection of closed segments p1p2 and q1q2.

    Returns None when disjoint, ('point', t, s, pt) for a single common
    point with segment parameters t, s in [0, 1], or ('overlap',) for
    collinear overlapping segments.
    """
    r = sub(p2, p1)
    s = sub(q2, q1)
    denom = cross(r, s)
    qp = sub(q1, p1)
    if denom == 0:
        if cross(qp, r) != 0:
            return None
        rr = dot(r, r)
        t0 = Fraction(dot(qp, r), rr)
        t1 = t0 + Fraction(dot(s, r), rr)
        lo, hi = min(t0, t1), max(t0, t1)
        if hi < 0 or lo > 1:
            return None
        if hi == 0 or lo == 1:
            pt = p1 if hi == 0 else p2
            return ("point", Fraction(0 if hi == 0 else 1), None, pt)
        return ("overlap",)
    t = Fraction(cross(qp, s), denom)
    u = Fraction(cross(qp, r), denom)
    if t < 0 or t > 1 or u < 0 or u > 1:
        return None
    return ("point", t, u, (p1[0] + r[0] * t, p1[1] + r[1] * t))


def _orient_f(a, b, c):
    """Float orientation of c against line ab, or 0.0 when too close to call."""
    v = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    scale = (abs(a[0]) + abs(b[0]) + abs(c[0]) + 1) * (abs(a[1]) + abs(b[1]) + abs(c[1]) + 1)
    return 0.0 if abs(v) <= 1e-9 * scale else v


def clearly_disjoint(p1, p2, q1, q2) -> bool:
    """Float filter on segments given as float pairs.

    True only when one segment lies strictly on one side of the other's
    line, with a wide error margin; False means "ask the exact test".
    """
    o1 = _orient_f(p1, p2, q1)
    o2 = _orient_f(p1, p2, q2)
    if o1 * o2 > 0:
        return True
    o3 = _orient_f(q1, q2, p1)
    o4 = _orient_f(q1, q2, p2)
    return o3 * o4 > 0


def bbox(p, q):
    return (
        float(min(p[0], q[0])) - 1e-9,
        float(max(p[0], q[0])) + 1e-9,
        float(min(p[1], q[1])) - 1e-9,
        float(max(p[1], q[1])) + 1e-9,
    )


def candidate_pairs(segments):
    """Index pairs (i, j), i < j, whose padded bounding boxes overlap.

    ``segments`` is a list of (p, q).  Sweep over x keeps this near-linear
    for the thin, mostly horizontal pieces produced by the doubling.
    """
    boxes = [bbox(p, q) for p, q in segments]
    order = sorted(range(len(segments)), key=lambda i: boxes[i][0])
    active: list[int] = []
    out = []
    for i in order:
        x0 = boxes[i][0]
        active = [j for j in active if boxes[j][1] >= x0]
        bi = boxes[i]
        for j in active:
            bj = boxes[j]
            if bj[2] <= bi[3] and bi[2] <= bj[3]:
                out.append((min(i, j), max(i, j)))
        active.append(i)
    return out


def linf_left_normal(d):
    """Left normal of d scaled to unit max-norm (exact)."""
    m = max(abs(d[0]), abs(d[1]))
    return (Fraction(-d[1]) / m, Fraction(d[0]) / m)


def line_intersection(p, d, q, e):
    """Intersection point of the lines p + t d and q + s e (not parallel)."""
    t = Fraction(cross(sub(q, p), e), cross(d, e))
    return (p[0] + d[0] * t, p[1] + d[1] * t)
