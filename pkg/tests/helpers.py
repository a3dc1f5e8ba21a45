"""Shared random-instance generators for the test suites."""

from __future__ import annotations

import random
from fractions import Fraction

from jordankron import BivariatePoly, BlockToeplitzUT, JordanSpec, UnivariatePoly


def random_univariate(rng: random.Random, max_deg=8, bound=3) -> UnivariatePoly:
    deg = rng.randint(0, max_deg)
    return UnivariatePoly([rng.randint(-bound, bound) for _ in range(deg + 1)])


def random_bivariate(rng: random.Random, max_dx=3, max_dy=3, bound=3) -> BivariatePoly:
    return BivariatePoly(
        [
            [rng.randint(-bound, bound) for _ in range(max_dy + 1)]
            for _ in range(max_dx + 1)
        ]
    )


def random_spec(
    rng: random.Random, max_blocks=2, max_size=5, eigs=(-2, -1, 0, 1, 2)
) -> JordanSpec:
    count = rng.randint(1, max_blocks)
    return JordanSpec(
        [(rng.choice(eigs), rng.randint(1, max_size)) for _ in range(count)]
    )


def random_spec_total(
    rng: random.Random, max_total=6, eigs=(-2, -1, 0, 1, 2)
) -> JordanSpec:
    """Random spec whose sizes sum to at most max_total."""
    budget = rng.randint(1, max_total)
    blocks = []
    while budget > 0:
        size = rng.randint(1, budget)
        blocks.append((rng.choice(eigs), size))
        budget -= size
    return JordanSpec(blocks)


def random_ring_row(rng: random.Random, n: int, bound=3, unit=False):
    row = [Fraction(rng.randint(-bound, bound)) for _ in range(n)]
    if unit:
        while row[0] == 0:
            row[0] = Fraction(rng.randint(-bound, bound))
    return row


def random_block_toeplitz(
    rng: random.Random, m: int, n: int, r=1, bound=3
) -> BlockToeplitzUT:
    """Random block UT Toeplitz with zero blocks below order r and an
    invertible block at order r."""
    rows = [random_ring_row(rng, n, bound)]
    rows.extend([Fraction(0)] * n for _ in range(1, r))
    rows.append(random_ring_row(rng, n, bound, unit=True))
    rows.extend(random_ring_row(rng, n, bound) for _ in range(r + 1, m))
    return BlockToeplitzUT.from_first_rows(rows)


def random_degenerate_poly(rng: random.Random, size=4, bound=3) -> BivariatePoly:
    """Nonconstant p whose both first derivatives vanish at (0, 0)."""
    while True:
        grid = [
            [rng.randint(-bound, bound) for _ in range(size)] for _ in range(size)
        ]
        grid[0][0] = grid[0][1] = grid[1][0] = 0
        p = BivariatePoly(grid)
        if not p.is_constant():
            return p
