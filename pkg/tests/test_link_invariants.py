import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from graphdivide.dsl import parse
from graphdivide.link_invariants import (
    LOOP,
    InvariantReport,
    LaurentPoly,
    TooManyCrossings,
    cell_contributions,
    compute_report,
    determinant_of,
    identify,
    jones_from_pd,
    kauffman_bracket,
    load_reference_table,
    parse_pd_text,
    pd_components,
    pd_writhe,
    tb_geometric,
)
from graphdivide.tangles import InvariantViolation, lemma2_contribution
from oracles import brute_bracket

TABLE = load_reference_table()
BY_NAME = {e.name: e for e in TABLE}
SMALL = [e for e in TABLE if len(e.pd) <= 8]

RIGHT_TREFOIL = LaurentPoly({2: 1, 6: 1, 8: -1})  # t + t^3 - t^4 in s
FIGURE_EIGHT = LaurentPoly({-4: 1, -2: -1, 0: 1, 2: -1, 4: 1})
KINK = [(1, 1, 2, 2)]


def poly(d):
    return LaurentPoly(d)


def test_laurent_arithmetic():
    a = poly({1: 2, -1: 1})
    assert a + a == a * 2 == 2 * a
    assert (a * a).coeffs == {2: 4, 0: 4, -2: 1}
    assert (a * a).divmod_exact(a) == a
    with pytest.raises(ValueError):
        poly({0: 1, 1: 1}).divmod_exact(poly({0: 2}))
    assert a.mirror().coeffs == {-1: 2, 1: 1}
    assert LaurentPoly.from_dict(a.to_dict()) == a
    assert poly({0: 1}) == 1 and poly({}).format() == "0"
    assert RIGHT_TREFOIL.format("t", half=True) == "t + t^3 - t^4"
    assert poly({1: -1, 5: -1}).format("t", half=True) == "-t^1/2 - t^5/2"


@pytest.mark.parametrize("entry", SMALL, ids=lambda e: e.name)
def test_bracket_matches_state_sum(entry):
    assert kauffman_bracket(entry.pd) == brute_bracket(entry.pd)


def test_kinks():
    br = kauffman_bracket(KINK)
    assert br in (poly({3: -1}), poly({-3: -1}))
    assert br == brute_bracket(KINK)
    assert jones_from_pd(KINK) == 1
    assert jones_from_pd([(2, 2, 1, 1)]) == 1


def test_free_loops():
    assert kauffman_bracket([], 1) == 1
    assert kauffman_bracket([], 2) == LOOP
    assert jones_from_pd([], 2) == poly({1: -1, -1: -1})
    assert kauffman_bracket(KINK, 1) == kauffman_bracket(KINK) * LOOP


def test_budget():
    with pytest.raises(TooManyCrossings):
        kauffman_bracket(BY_NAME["4_1"].pd, budget=3)


def test_table_values():
    assert BY_NAME["3_1"].jones in (RIGHT_TREFOIL, RIGHT_TREFOIL.mirror())
    assert BY_NAME["4_1"].jones == FIGURE_EIGHT
    dets = {"3_1": 3, "4_1": 5, "5_1": 5, "5_2": 7, "8_21": 15, "L2a1": 2}
    for name, det in dets.items():
        assert BY_NAME[name].determinant == det, name
    assert BY_NAME["L2a1"].components == 2
    assert pd_components(BY_NAME["8_21"].pd) == 1


def test_writhe_of_tables():
    assert abs(pd_writhe(BY_NAME["3_1"].pd)) == 3
    assert pd_writhe(BY_NAME["4_1"].pd) == 0


def test_parse_pd_text():
    assert parse_pd_text("X(1,2,3,4) X[5, 6, 7, 8]") == [(1, 2, 3, 4), (5, 6, 7, 8)]
    assert parse_pd_text("[(1,2,3,4),(5,6,7,8)]") == [(1, 2, 3, 4), (5, 6, 7, 8)]


def _relabel(pd, rng):
    labels = sorted({v for x in pd for v in x})
    new = labels[:]
    rng.shuffle(new)
    m = dict(zip(labels, new))
    out = [tuple(m[v] for v in x) for x in pd]
    # (a,b,c,d) and (c,d,a,b) describe the same crossing
    out = [x if rng.random() < 0.5 else x[2:] + x[:2] for x in out]
    rng.shuffle(out)
    return out


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([e.name for e in SMALL]), st.integers(0, 2**32 - 1))
def test_bracket_relabel_invariant(name, seed):
    pd = BY_NAME[name].pd
    assert kauffman_bracket(_relabel(pd, random.Random(seed))) == kauffman_bracket(pd)


def test_mirror_pd_mirrors_jones():
    # rotating every tuple by one slot swaps over and under strands
    for name in ("3_1", "5_2", "L2a1"):
        pd = BY_NAME[name].pd
        mirrored = [(b, c, d, a) for a, b, c, d in pd]
        assert jones_from_pd(mirrored) == jones_from_pd(pd).mirror()


def test_determinant_of():
    assert determinant_of(LaurentPoly({0: 1})) == 1
    assert determinant_of(RIGHT_TREFOIL) == 3
    assert determinant_of(poly({1: -1, -1: -1})) == 0
    with pytest.raises(InvariantViolation):
        determinant_of(poly({0: 1, 1: 1}))


def test_identify():
    assert identify(1, LaurentPoly({0: 1}), 1, TABLE) == "consistent with unknot"
    t31 = BY_NAME["3_1"].jones
    assert identify(1, t31, 3, TABLE) == "matches 3_1"
    assert identify(1, t31.mirror(), 3, TABLE) == "matches mirror of 3_1"
    assert identify(2, t31, 3, TABLE) == "unidentified"
    assert identify(1, poly({0: 2, 2: -1}), 3, TABLE) == "unidentified"


@pytest.mark.parametrize(
    "text, tb",
    [("<+ | >+", -1), ("<- | >+", -1), ("( | X | >+ >+", 1), ("( | )", 0), ("( | B-3 | >+", 0), ("<+ | B+4 | >+ >+ >+", -1)],
)
@pytest.mark.parametrize("side", ["left", "right"])
def test_tb_geometric(text, tb, side):
    assert tb_geometric(parse(text), side) == tb


def test_report_check_catches_disagreement():
    r = compute_report(parse("( | X | >+ >+"), table=TABLE)
    assert isinstance(r, InvariantReport)
    assert (r.tb_formula, r.chi_s, r.g_s, r.mu) == (1, -1, 1, 1)
    r.tb_geometric = 3
    with pytest.raises(InvariantViolation):
        r.check()


@pytest.mark.parametrize("text", ["<+ | >-", "( | X | >+ >+", "<- | B+4 | ) >-", "( | B-3 | >+", "( | - B+3 | ) >+"])
def test_cell_contributions_follow_table(text):
    p = parse(text)
    per, loose = cell_contributions(p)
    assert sum(loose) == 0
    tangles = {(c.column, c.slot): c.tangle for c in p.cells}
    for c in per:
        assert c.value == lemma2_contribution(tangles[c.cell]), (c.cell, tangles[c.cell], c.signs)
