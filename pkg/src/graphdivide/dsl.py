"""Text format for tangle products.

Grammar (whitespace separates tokens, ``#`` comments to end of line)::

    product := column ('|' column)*
    column  := tangle+                      # listed top to bottom
    tangle  := '<+' | '<-' | '>+' | '>-' | '(' | ')'
             | 'B+' INT | 'B-' INT | 'X' | '-'

``<`` and ``>`` are left and right endpoints with their vertex sign, ``(``
and ``)`` are left and right folds, ``B+b``/``B-b`` are branch tangles of
valence b, ``X`` a double point and ``-`` an identity strand.
"""

from __future__ import annotations

import re

from .tangles import (
    DOUBLE,
    IDENTITY,
    LEFT_FOLD,
    RIGHT_FOLD,
    ArityMismatch,
    BadValence,
    DivideError,
    Kind,
    OpenBoundary,
    Sign,
    Tangle,
    TangleProduct,
    left_end,
    right_end,
    validate_product,
)

__all__ = ["LexError", "ParseError", "parse", "emit", "tokenize"]


class LexError(DivideError):
    def __init__(self, position, token):
        self.token = token
        super().__init__(f"unknown token {token!r}")
        self.with_position(position)


class ParseError(DivideError):
    def __init__(self, position, expectation):
        self.expectation = expectation
        super().__init__(f"expected {expectation}")
        self.with_position(position)


_SIMPLE = {
    "<+": left_end(Sign.PLUS),
    "<-": left_end(Sign.MINUS),
    ">+": right_end(Sign.PLUS),
    ">-": right_end(Sign.MINUS),
    "(": LEFT_FOLD,
    ")": RIGHT_FOLD,
    "X": DOUBLE,
    "-": IDENTITY,
}
_BRANCH = re.compile(r"B([+-])(\d+)\Z")


def tokenize(text: str):
    """Yield (token, (line, column)) pairs; '|' is always its own token."""
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0]
        for m in re.finditer(r"\||[^\s|]+", line):
            yield m.group(), (lineno, m.start() + 1)


def _tangle(token, pos) -> Tangle:
    if token in _SIMPLE:
        return _SIMPLE[token]
    m = _BRANCH.match(token)
    if not m:
        raise LexError(pos, token)
    valence = int(m.group(2))
    if valence < 3:
        raise BadValence(valence).with_position(pos)
    kind = Kind.BRANCH_PLUS if m.group(1) == "+" else Kind.BRANCH_MINUS
    return Tangle(kind, valence=valence)


def parse(text: str) -> TangleProduct:
    columns: list[list[Tangle]] = [[]]
    starts: list[tuple[int, int] | None] = [None]
    last_pos = (1, 1)
    for token, pos in tokenize(text):
        last_pos = pos
        if token == "|":
            if not columns[-1]:
                raise ParseError(pos, "a tangle before '|'")
            columns.append([])
            starts.append(None)
            continue
        columns[-1].append(_tangle(token, pos))
        if starts[-1] is None:
            starts[-1] = pos
    if not columns[-1]:
        raise ParseError(last_pos, "a tangle" if len(columns) == 1 else "a tangle after '|'")
    try:
        return validate_product(columns)
    except ArityMismatch as exc:
        raise exc.with_position(starts[exc.column - 1])
    except OpenBoundary as exc:
        raise exc.with_position(starts[0] if exc.side == "left" else starts[-1])
    except DivideError as exc:
        raise exc.with_position(starts[0])


def _token(t: Tangle) -> str:
    if t.kind is Kind.BRANCH_PLUS:
        return f"B+{t.valence}"
    if t.kind is Kind.BRANCH_MINUS:
        return f"B-{t.valence}"
    for tok, val in _SIMPLE.items():
        if val == t:
            return tok
    raise ValueError(f"no token for {t}")


def emit(p: TangleProduct) -> str:
    """Canonical one-line form."""
    return " | ".join(" ".join(_token(t) for t in col) for col in p.columns)
