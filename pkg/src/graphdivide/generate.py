"""Seeded random tangle products.

Columns are grown left to right while tracking the number of open strands;
every choice leaves enough tangle budget to close all strands, so each
draw is valid without rejection.
"""

from __future__ import annotations

import random

from .tangles import (
    DOUBLE,
    IDENTITY,
    LEFT_FOLD,
    RIGHT_FOLD,
    Sign,
    TangleProduct,
    branch_minus,
    branch_plus,
    left_end,
    right_end,
    validate_product,
)

MAX_STRANDS = 6


def _closing_cost(n):
    # right folds close two strands, a right endpoint closes one
    return (n + 1) // 2


def random_product(
    rng: random.Random,
    max_tangles: int = 12,
    max_x: int = 6,
    trees_only: bool = False,
    max_strands: int = MAX_STRANDS,
) -> TangleProduct:
    """Draw one product with at most max_tangles non-identity tangles and at
    most max_x double points.  trees_only restricts to embedded trees."""
    sign = lambda: rng.choice((Sign.PLUS, Sign.MINUS))  # noqa: E731
    columns = []
    used = 0
    xs = 0
    n = 0
    # first column: left endpoints and left folds only
    first = []
    target = rng.randint(1, max(1, min(max_tangles // 3, 2)))
    for _ in range(target):
        if trees_only or rng.random() < 0.6:
            first.append(left_end(sign()))
            n += 1
        else:
            first.append(LEFT_FOLD)
            n += 2
        used += 1
    if trees_only and len(first) > 1:
        first = first[:1]
        used, n = 1, 1
    columns.append(first)

    while n > 0:
        budget = max_tangles - used
        col = []
        k = n
        i = 0
        closing = budget <= _closing_cost(n) or rng.random() < 0.25
        new_n = 0
        while i < k:
            rest = k - i
            budget = max_tangles - used
            opts = []
            if closing:
                opts.append("rfold" if rest >= 2 and not trees_only else "rend")
                spare = budget - 1 - _closing_cost(rest - 1)
                if rest >= 2 and not trees_only and spare >= 0 and rng.random() < 0.3:
                    opts = ["rend"]
            else:
                after_min = lambda add_out, take: _closing_cost(new_n + add_out + rest - take)  # noqa: E731
                if budget - 1 >= after_min(1, 1) and n < max_strands:
                    opts.append("id")
                if budget - 1 >= after_min(0, 1) and new_n + rest - 1 > 0:
                    opts.append("rend")
                if rest >= 2 and not trees_only and budget - 1 >= after_min(0, 2) and new_n + rest - 2 > 0:
                    opts.append("rfold")
                if rest >= 2 and xs < max_x and not trees_only and budget - 1 >= after_min(2, 2):
                    opts.append("x")
                for b in (3, 4, 5):
                    if new_n + rest - 1 + b - 1 <= max_strands and budget - 1 >= after_min(b - 1, 1):
                        opts.append(("b+", b))
                    if rest >= b - 1 and budget - 1 >= after_min(1, b - 1) and not trees_only:
                        opts.append(("b-", b))
                if not opts:
                    opts.append("id")
            op = rng.choice(opts)
            if op == "id":
                col.append(IDENTITY)
                new_n += 1
                i += 1
                continue
            used += 1
            if op == "rend":
                col.append(right_end(sign()))
                i += 1
            elif op == "rfold":
                col.append(RIGHT_FOLD)
                i += 2
            elif op == "x":
                col.append(DOUBLE)
                xs += 1
                new_n += 2
                i += 2
            elif op[0] == "b+":
                col.append(branch_plus(op[1]))
                new_n += op[1] - 1
                i += 1
            else:
                col.append(branch_minus(op[1]))
                new_n += 1
                i += op[1] - 1
        if all(t == IDENTITY for t in col):
            # force progress: close the last strand pair
            col[-1] = right_end(sign())
            used += 1
            new_n -= 1
            if new_n == 0 and len(col) > 1:
                col[-2] = right_end(sign())
                used += 1
        columns.append(col)
        n = new_n
    return validate_product(columns)


def instance_rng(seed: int, index: int) -> random.Random:
    """Independent stream per instance, so one failure reproduces alone."""
    return random.Random(f"{seed}/{index}")


def random_products(seed: int, count: int, **kw):
    return [random_product(instance_rng(seed, i), **kw) for i in range(count)]
