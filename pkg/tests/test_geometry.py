from fractions import Fraction as F

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from graphdivide import geometry as geo
from oracles import angle

coord = st.integers(-20, 20)
vec = st.tuples(coord, coord).filter(lambda d: d != (0, 0) and not geo.is_cut(d))


@given(vec, vec)
def test_direction_order_matches_atan2(a, b):
    fa, fb = angle(a), angle(b)
    assume(abs(fa - fb) > 1e-9 or geo.cross(a, b) == 0)
    assert geo.direction_less(a, b) == (fa < fb - 1e-12)


def test_direction_order_examples():
    assert geo.direction_less((1, -1), (1, 0))
    assert geo.direction_less((1, 0), (0, 1))
    assert geo.direction_less((0, 1), (-1, 0))
    assert geo.direction_less((-1, 0), (-1, -1))
    assert not geo.direction_less((2, 2), (1, 1))
    with pytest.raises(geo.CutDirection):
        geo.direction_less((0, -3), (1, 0))


def test_intersect_cases():
    r = geo.intersect((0, 0), (2, 2), (0, 2), (2, 0))
    assert r[0] == "point" and r[1] == F(1, 2) and r[3] == (1, 1)
    assert geo.intersect((0, 0), (1, 0), (0, 1), (1, 1)) is None
    assert geo.intersect((0, 0), (2, 0), (1, 0), (3, 0)) == ("overlap",)
    r = geo.intersect((0, 0), (1, 0), (1, 0), (2, 0))
    assert r[0] == "point" and r[3] == (1, 0)
    assert geo.intersect((0, 0), (1, 0), (2, 0), (3, 0)) is None


segment = st.tuples(st.tuples(coord, coord), st.tuples(coord, coord)).filter(lambda s: s[0] != s[1])


@given(segment, segment)
def test_float_filter_never_rejects_real_intersections(p, q):
    (p1, p2), (q1, q2) = p, q
    if geo.clearly_disjoint(p1, p2, q1, q2):
        assert geo.intersect(p1, p2, q1, q2) is None


@given(segment, segment)
def test_intersection_point_lies_on_both(p, q):
    (p1, p2), (q1, q2) = p, q
    r = geo.intersect(p1, p2, q1, q2)
    if r and r[0] == "point" and r[2] is not None:
        pt = r[3]
        assert geo.cross(geo.sub(p2, p1), geo.sub(pt, p1)) == 0
        assert geo.cross(geo.sub(q2, q1), geo.sub(pt, q1)) == 0
