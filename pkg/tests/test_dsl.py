import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from graphdivide.dsl import LexError, ParseError, emit, parse, tokenize
from graphdivide.generate import random_product
from graphdivide.tangles import ArityMismatch, BadValence, OpenBoundary


def test_tokens_and_comments():
    toks = [t for t, _ in tokenize("<+|B+3 # note\n >+ >+")]
    assert toks == ["<+", "|", "B+3", ">+", ">+"]


def test_emit_is_canonical():
    p = parse("""
        <+          # start
        | B+3
        | >+ >-
    """)
    assert emit(p) == "<+ | B+3 | >+ >-"


@pytest.mark.parametrize(
    "text, exc, pos",
    [
        ("<+ | Q", LexError, (1, 6)),
        ("<+ | | >+", ParseError, (1, 6)),
        ("<+ |", ParseError, (1, 4)),
        ("", ParseError, (1, 1)),
        ("<+ | B+2 | >+", BadValence, (1, 6)),
        ("<+\n| )", ArityMismatch, (2, 3)),
        ("<+ | -", OpenBoundary, (1, 6)),
    ],
)
def test_errors_carry_position(text, exc, pos):
    with pytest.raises(exc) as info:
        parse(text)
    assert info.value.position == pos
    assert f"line {pos[0]}, column {pos[1]}" in str(info.value)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32 - 1), st.booleans())
def test_round_trip(seed, trees):
    p = random_product(random.Random(seed), trees_only=trees)
    text = emit(p)
    assert parse(text) == p
    assert emit(parse(text)) == text
