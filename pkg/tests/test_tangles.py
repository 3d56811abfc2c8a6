import pytest

from graphdivide.dsl import parse
from graphdivide.tangles import (
    DOUBLE,
    IDENTITY,
    LEFT_FOLD,
    RIGHT_FOLD,
    ArityMismatch,
    BadValence,
    EmptyProduct,
    Kind,
    OpenBoundary,
    Sign,
    Tangle,
    assemble_graph,
    branch_minus,
    branch_plus,
    count_features,
    euler_from_counts,
    left_end,
    lemma2_contribution,
    right_end,
    slice_invariants,
    tb_from_counts,
    tb_table,
    trace_doubled_components,
    validate_product,
)

INTERVAL = "<+ | >+"
TREFOIL = "( | X | >+ >+"
STAR = "<+ | B+3 | >+ >+"
LOLLIPOP = "( | B-3 | >+"
CIRCLE = "( | )"


@pytest.mark.parametrize(
    "t, arity",
    [
        (left_end(), (0, 1)),
        (right_end(), (1, 0)),
        (LEFT_FOLD, (0, 2)),
        (RIGHT_FOLD, (2, 0)),
        (branch_plus(4), (1, 3)),
        (branch_minus(4), (3, 1)),
        (DOUBLE, (2, 2)),
        (IDENTITY, (1, 1)),
    ],
)
def test_arity(t, arity):
    assert t.arity == arity


def test_tangle_field_checks():
    with pytest.raises(ValueError):
        Tangle(Kind.LEFT_END)
    with pytest.raises(ValueError):
        Tangle(Kind.DOUBLE, sign=Sign.PLUS)
    with pytest.raises(ValueError):
        Tangle(Kind.IDENTITY, valence=3)


def test_validation_errors():
    with pytest.raises(EmptyProduct):
        validate_product([])
    with pytest.raises(EmptyProduct):
        validate_product([[IDENTITY]])
    with pytest.raises(OpenBoundary):
        validate_product([[IDENTITY, left_end()], [right_end()]])
    with pytest.raises(OpenBoundary):
        validate_product([[left_end()]])
    with pytest.raises(ArityMismatch) as exc:
        validate_product([[left_end()], [RIGHT_FOLD]])
    assert exc.value.column == 2 and exc.value.expected == 2 and exc.value.found == 1
    with pytest.raises(BadValence):
        validate_product([[left_end()], [branch_plus(2)], [right_end()]])


@pytest.mark.parametrize(
    "text, chi, tb, mu",
    [
        (INTERVAL, 1, -1, 1),
        (TREFOIL, 1, 1, 1),
        (STAR, 1, -1, 1),
        (LOLLIPOP, 0, 0, 2),
        (CIRCLE, 0, 0, 2),
    ],
)
def test_counts_and_components(text, chi, tb, mu):
    p = parse(text)
    c = count_features(p)
    assert euler_from_counts(c) == chi == assemble_graph(p).euler_direct
    assert tb_table(p) == tb == tb_from_counts(c)
    assert tb == 2 * c.delta - chi
    assert trace_doubled_components(p) == mu


def test_lemma2_values():
    assert lemma2_contribution(left_end(Sign.PLUS)) == 0
    assert lemma2_contribution(left_end(Sign.MINUS)) == 0
    assert lemma2_contribution(right_end(Sign.MINUS)) == -1
    assert lemma2_contribution(LEFT_FOLD) == 1
    assert lemma2_contribution(RIGHT_FOLD) == -1
    assert lemma2_contribution(DOUBLE) == 2
    assert lemma2_contribution(IDENTITY) == 0
    for b in (3, 4, 5, 9):
        assert lemma2_contribution(branch_plus(b)) == b - 2
        assert lemma2_contribution(branch_minus(b)) == 0


def test_slice_invariants():
    assert slice_invariants(parse(INTERVAL), 1) == (1, 0)
    assert slice_invariants(parse(TREFOIL), 1) == (-1, 1)
    assert slice_invariants(parse(LOLLIPOP), 2) == (0, 0)


def test_embedded_tree_flag():
    assert assemble_graph(parse(STAR)).is_embedded_tree
    assert not assemble_graph(parse(TREFOIL)).is_embedded_tree
    assert not assemble_graph(parse(LOLLIPOP)).is_embedded_tree


def test_routing_records_both_sides():
    p = parse(STAR)
    assert p.port_counts() == [0, 1, 2, 0]
    assert p.routing[1] == (((1, 0), (2, 0)), ((1, 0), (2, 1)))
