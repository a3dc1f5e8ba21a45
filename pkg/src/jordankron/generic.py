"""Closed-form Jordan structure when the first derivatives cooperate.

For a block pair (lam, m), (mu, n) let p_x and p_y denote the first Hasse
derivatives of p at (lam, mu).  The pair structure is known in closed form
whenever (p_x, p_y) != 0, and also when one of the blocks has size 1:

* both derivatives nonzero: the Kronecker-sum staircase
  m+n-1, m+n-3, ..., m+n+1-2*min(m,n);
* p_y = 0, p_x != 0: the pair behaves like a Kronecker sum of J_m with the
  r-th power of a nilpotent block, r being the first pure-y derivative
  order that survives at the point; N_n^r splits by Euclidean division and
  each piece contributes its own staircase (and symmetrically for
  p_x = 0, p_y != 0);
* both zero but m = 1 or n = 1: the surviving single-row case, which
  reduces to the previous bullet in the nontrivial variable.

When both derivatives vanish and both sizes exceed one, no formula is
offered: ``generic_pair_sizes`` raises :class:`DegenerateCaseError`, with
the size and count bounds of :mod:`jordankron.bounds` attached, and the
caller picks the oracle or the bounds.
"""

from __future__ import annotations

from enum import Enum
from fractions import Fraction

from .bounds import block_count_bounds, max_block_size_bound
from .bttb import JordanSpec, block_pairs
from .oracle import JordanStructure
from .polyring import (
    BivariatePoly,
    ConstantPolynomialError,
    RationalLike,
    hasse_value_table,
    local_degree,
)


class GenericCaseTag(Enum):
    """Which arm of the closed-form analysis applies to a block pair."""

    BOTH_NONZERO = "both-nonzero"
    PY_ZERO = "py-zero"
    PX_ZERO = "px-zero"
    SIZE_ONE_ESCAPE = "size-one-escape"
    DEGENERATE = "degenerate"


class DegenerateCaseError(ValueError):
    """Both first derivatives vanish at the pair and both sizes exceed 1.

    Carries the offending pair and the block-size / block-count bounds, so
    callers can fall back without recomputing them.
    """

    def __init__(
        self,
        lam: Fraction,
        mu: Fraction,
        m: int,
        n: int,
        degree: int,
        size_bound: int,
        count_bounds: tuple[int, int],
    ):
        self.lam = lam
        self.mu = mu
        self.m = m
        self.n = n
        self.local_degree = degree
        self.size_bound = size_bound
        self.count_lower, self.count_upper = count_bounds
        super().__init__(
            f"no closed form for the pair at ({lam}, {mu}) with sizes "
            f"({m}, {n}); local degree {degree}, block sizes <= {size_bound}, "
            f"block count in [{self.count_lower}, {self.count_upper}]"
        )


def kronecker_sum_sizes(m: int, n: int) -> tuple[int, ...]:
    """Block sizes of a Kronecker sum of nilpotent blocks of sizes m and n:
    min(m, n) blocks of sizes m+n-1, m+n-3, ..., m+n+1-2*min(m, n)."""
    if m < 1 or n < 1:
        raise ValueError("sizes must be positive")
    return tuple(m + n + 1 - 2 * k for k in range(1, min(m, n) + 1))


def nilpotent_power_sizes(n: int, r: int) -> tuple[int, ...]:
    """Block sizes of the r-th power of a nilpotent block of size n.

    With n = a*r + b (0 <= b < r): b blocks of size a+1 and r-b blocks of
    size a.  Size-0 blocks (a = 0, i.e. r > n) are dropped.
    """
    if n < 1 or r < 1:
        raise ValueError("arguments must be positive")
    a, b = divmod(n, r)
    sizes = (a + 1,) * b
    if a > 0:
        sizes += (a,) * (r - b)
    return sizes


def _derivative_values(p, lam, mu, m, n):
    return hasse_value_table(p, lam, mu, max(m - 1, 1), max(n - 1, 1))


def classify(
    p: BivariatePoly,
    lam: RationalLike,
    mu: RationalLike,
    m: int,
    n: int,
) -> GenericCaseTag:
    """Dispatch tag for the pair; raises on constant p."""
    if p.is_constant():
        raise ConstantPolynomialError("a constant polynomial has no case split")
    table = _derivative_values(p, lam, mu, m, n)
    px, py = table[1][0], table[0][1]
    if px and py:
        return GenericCaseTag.BOTH_NONZERO
    if not px and not py:
        if m == 1 or n == 1:
            return GenericCaseTag.SIZE_ONE_ESCAPE
        return GenericCaseTag.DEGENERATE
    if not py:
        return GenericCaseTag.PY_ZERO
    return GenericCaseTag.PX_ZERO


def _first_pure_order(values: list[Fraction], size: int) -> int:
    # Least 1 <= k <= size-1 with values[k] != 0, else size.
    for k in range(1, size):
        if values[k]:
            return k
    return size


def _one_sided_sizes(ks_size: int, nilp_size: int, r: int) -> tuple[int, ...]:
    sizes: list[int] = []
    for s in nilpotent_power_sizes(nilp_size, r):
        sizes.extend(kronecker_sum_sizes(ks_size, s))
    return tuple(sorted(sizes, reverse=True))


def generic_pair_sizes(
    p: BivariatePoly,
    lam: RationalLike,
    mu: RationalLike,
    m: int,
    n: int,
) -> tuple[int, ...]:
    """Block sizes (descending) contributed by one pair, closed form.

    Raises DegenerateCaseError when no arm of the analysis applies.
    """
    tag = classify(p, lam, mu, m, n)
    if tag is GenericCaseTag.DEGENERATE:
        d = local_degree(p, lam, mu)
        raise DegenerateCaseError(
            Fraction(lam),
            Fraction(mu),
            m,
            n,
            d,
            max_block_size_bound(m, n, d),
            block_count_bounds(m, n, d),
        )
    if tag is GenericCaseTag.BOTH_NONZERO:
        return kronecker_sum_sizes(m, n)
    table = _derivative_values(p, lam, mu, m, n)
    y_branch = tag is GenericCaseTag.PY_ZERO or (
        tag is GenericCaseTag.SIZE_ONE_ESCAPE and m == 1
    )
    if y_branch:
        r = _first_pure_order([table[0][k] for k in range(n)], n)
        return _one_sided_sizes(m, n, r)
    r = _first_pure_order([table[k][0] for k in range(m)], m)
    return _one_sided_sizes(n, m, r)


def predict_generic(
    p: BivariatePoly, x: JordanSpec, y: JordanSpec
) -> JordanStructure:
    """Closed-form Jordan structure of p on (x, y), merged by eigenvalue.

    Every block pair must classify away from the degenerate case; the
    first degenerate pair aborts the prediction with its bounds attached.
    """
    contributions = []
    for lam, m, mu, n in block_pairs(x, y):
        sizes = generic_pair_sizes(p, lam, mu, m, n)
        contributions.append((p.eval(lam, mu), sizes))
    return JordanStructure.from_pairs(contributions)
