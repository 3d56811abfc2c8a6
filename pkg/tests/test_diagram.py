from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from graphdivide.diagram import OddCrossingSum, build_diagram, diagram_stats, linking_number
from graphdivide.doubling import GenericityFailure, double
from graphdivide.dsl import parse

SQ = ((0, 0), (4, 1), (5, 5), (1, 4))


def shifted(c, dx, dy):
    return tuple((x + dx, y + dy) for x, y in c)


def test_disjoint_curves_are_free():
    d = build_diagram([SQ, shifted(SQ, 20, 0)], windings=[])
    assert d.crossings == [] and d.free_components == [0, 1]
    assert d.pd_code == [] and d.gauss_code == [[], []]


@pytest.mark.parametrize("text", ["<+ | >+", "( | X | >+ >+", "( | )", "( | B-3 | >+", "<+ | B+3 | >+ >+"])
def test_pd_and_gauss_are_consistent(text):
    d = build_diagram(double(parse(text)).curves)
    labels = Counter(v for x in d.pd_code for v in x)
    assert all(n == 2 for n in labels.values())
    assert len(d.pd_code) == len(d.crossings)
    gauss = Counter(v for comp in d.gauss_code for v in comp)
    assert set(gauss) == {s * k for k in range(1, len(d.crossings) + 1) for s in (1, -1)}
    assert all(n == 1 for n in gauss.values())
    assert d.writhe == sum(x.sign for x in d.crossings)
    assert diagram_stats(d) == (d.writhe, len(d.crossings), d.components)


def test_circle_gives_hopf_link():
    d = build_diagram(double(parse("( | )")).curves)
    between = [x for x in d.crossings if x.over[0] != x.under[0]]
    assert len(between) % 2 == 0 and between
    assert linking_number(d, [0], [1]) == 1


def test_linking_number_checks():
    d = build_diagram(double(parse("( | )")).curves)
    with pytest.raises(ValueError):
        linking_number(d, [0], [0])
    half = [x for x in d.crossings if x.over[0] != x.under[0]][:1]
    odd = type(d)(half, d.pd_code[:1], d.gauss_code, d.components, d.free_components)
    with pytest.raises(OddCrossingSum):
        linking_number(odd, [0], [1])


@settings(max_examples=25, deadline=None)
@given(st.integers(-3, 3), st.integers(-3, 3))
def test_linking_symmetric(dx, dy):
    if (dx, dy) == (0, 0):
        return
    curves = [SQ, shifted(SQ, dx * 2 + 1, dy * 2 + 1)]
    try:
        d = build_diagram(curves)
    except GenericityFailure:
        return
    assert linking_number(d, [0], [1]) == linking_number(d, [1], [0])


@pytest.mark.parametrize("text", ["( | X | >+ >+", "( | B-3 | >+", "<- | B+4 | ) >-"])
def test_link_type_independent_of_scale(text):
    from fractions import Fraction

    from graphdivide.diagram import linking_number as lk
    from graphdivide.doubling import OFFSET, offset
    from graphdivide.link_invariants import jones

    d = double(parse(text))
    big = [tuple((3 * x, 3 * y) for x, y in c) for c in d.curves]
    assert jones(build_diagram(big)) == jones(build_diagram(d.curves))
    n = len(d.curves)
    values = set()
    for eta in (OFFSET, OFFSET / 2, Fraction(1, 7)):
        o = offset(d, "left", eta=eta)
        values.add(lk(build_diagram(list(d.curves) + list(o.curves)), range(n), range(n, 2 * n)))
    assert len(values) == 1


# a tree with one double point whose corners invite crossing detours
TWISTY = "<+ | <+ - | B+3 - | - X | - ) | - ( | ) >+"


def test_every_detour_direction_gives_the_same_link():
    from graphdivide import diagram as dg
    from graphdivide.doubling import find_intersections, find_windings
    from graphdivide.link_invariants import jones

    curves = [tuple(c) for c in double(parse(TWISTY)).curves]
    ws = find_windings(curves)
    mouths = dg._mouths(curves, ws, find_intersections(curves))
    ranked = dg._rank_directions(curves, mouths)
    seen = set()
    for attempt in range(dg.MAX_ATTEMPTS):
        try:
            d = dg._build(curves, ws, (mouths, [dg._choose_direction(ranked, attempt)] * len(ws)), attempt)
        except GenericityFailure:
            continue
        seen.add(jones(d).format("t", half=True))
    assert seen == {"t + t^3 - t^4"}


@pytest.mark.parametrize("text", [TWISTY, "( | X | >+ >+", "<- | B+4 | ) >-"])
def test_link_type_independent_of_rotation(text):
    from fractions import Fraction

    from graphdivide.link_invariants import jones

    curves = double(parse(text)).curves
    co, si = Fraction(3, 5), Fraction(4, 5)
    turned = [tuple((co * x - si * y, si * x + co * y) for x, y in c) for c in curves]
    assert jones(build_diagram(turned)) == jones(build_diagram(curves))
