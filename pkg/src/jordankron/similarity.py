"""Constructive similarity reductions over the triangular Toeplitz ring.

An n x n upper triangular Toeplitz matrix is determined by its first row,
and such matrices form a commutative ring isomorphic to truncated power
series.  A block upper triangular Toeplitz matrix Z with such blocks
A_0 .. A_(m-1) on its first block row can be compressed whenever the first
nonzero off-diagonal block is invertible:

* ``reduce_bidiagonal`` (A_1 invertible over Q) produces a unit block
  upper triangular X with identity first block row such that
  ``Z X = X (I (x) A_0 + N (x) A_1)`` exactly;
* ``reduce_shifted`` (A_1 .. A_(r-1) zero, A_r invertible) does the same
  with shift r, the first r block rows of X being identity rows.

A block diagonal scaling D of powers of the pivot block then completes the
reduction to ``I (x) A_0 + N^r (x) I``.  The unknown blocks of X are solved
superdiagonal by superdiagonal via forward substitution; each equation only
involves previously determined entries, so the construction is exact.

These algorithms are exhibits of the machinery behind the closed-form
results and sit off the prediction hot path; the predictors use the final
formulas directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .exactmat import RationalMatrix


class SingularBlockError(ValueError):
    """The pivot block is not invertible over Q (top-left entry zero)."""


class SingularA1Error(SingularBlockError):
    """The first off-diagonal block must be invertible."""


class SingularArError(SingularBlockError):
    """The shift-order block must be invertible."""


class NonzeroLowOrderError(ValueError):
    """A block strictly between the diagonal and the shift order is nonzero."""


# A ring element is the first row of an upper triangular Toeplitz matrix,
# held as a tuple of Fractions of fixed length n.


def _tz_zero(n: int) -> tuple[Fraction, ...]:
    return (Fraction(0),) * n


def _tz_one(n: int) -> tuple[Fraction, ...]:
    return (Fraction(1),) + (Fraction(0),) * (n - 1)


def _tz_add(a, b):
    return tuple(x + y for x, y in zip(a, b))

def _tz_sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _tz_mul(a, b):
    n = len(a)
    return tuple(
        sum((a[i] * b[k - i] for i in range(k + 1)), Fraction(0))
        for k in range(n)
    )


def _tz_inv(a):
    """Truncated power series inverse; needs a[0] != 0."""
    n = len(a)
    if a[0] == 0:
        raise ZeroDivisionError("not a unit")
    inv0 = 1 / a[0]
    out = [inv0] + [Fraction(0)] * (n - 1)
    for k in range(1, n):
        out[k] = -inv0 * sum(
            (a[i] * out[k - i] for i in range(1, k + 1)), Fraction(0)
        )
    return tuple(out)


def _tz_pow(a, e: int):
    out = _tz_one(len(a))
    for _ in range(e):
        out = _tz_mul(out, a)
    return out


def _tz_to_matrix(row) -> RationalMatrix:
    n = len(row)
    return RationalMatrix(
        [[row[j - i] if j >= i else 0 for j in range(n)] for i in range(n)]
    )


def _first_row_of_ut_toeplitz(block: RationalMatrix) -> tuple[Fraction, ...]:
    if not block.is_square():
        raise ValueError("blocks must be square")
    n = block.rows
    row = block.data[0]
    for i in range(n):
        for j in range(n):
            expected = row[j - i] if j >= i else Fraction(0)
            if block.data[i][j] != expected:
                raise ValueError("block is not upper triangular Toeplitz")
    return row


@dataclass(frozen=True)
class BlockToeplitzUT:
    """Block upper triangular Toeplitz matrix with UT Toeplitz blocks.

    Block (i, j) equals A_(j-i), so the whole matrix is determined by the
    first block row A_0 .. A_(m-1).
    """

    blocks: tuple[RationalMatrix, ...]

    def __init__(self, blocks: Iterable[RationalMatrix]):
        blocks = tuple(blocks)
        if not blocks:
            raise ValueError("need at least one block")
        rows = [_first_row_of_ut_toeplitz(b) for b in blocks]
        if len({len(r) for r in rows}) != 1:
            raise ValueError("blocks must share one size")
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def from_first_rows(cls, rows: Sequence[Sequence]) -> "BlockToeplitzUT":
        return cls(_tz_to_matrix(tuple(Fraction(c) for c in row)) for row in rows)

    @property
    def block_count(self) -> int:
        return len(self.blocks)

    @property
    def block_size(self) -> int:
        return self.blocks[0].rows

    def first_rows(self) -> list[tuple[Fraction, ...]]:
        return [tuple(b.data[0]) for b in self.blocks]

    def to_matrix(self) -> RationalMatrix:
        m, n = self.block_count, self.block_size
        zero_row = [Fraction(0)] * (m * n)
        out = [list(zero_row) for _ in range(m * n)]
        for bi in range(m):
            for bj in range(bi, m):
                blk = self.blocks[bj - bi]
                for i in range(n):
                    orow = out[bi * n + i]
                    brow = blk.data[i]
                    for j in range(n):
                        orow[bj * n + j] = brow[j]
        return RationalMatrix(out)


def _assemble_block_grid(grid, m: int, n: int) -> RationalMatrix:
    out = [[Fraction(0)] * (m * n) for _ in range(m * n)]
    for bi in range(m):
        for bj in range(m):
            row = grid[bi][bj]
            if row is None:
                continue
            for i in range(n):
                orow = out[bi * n + i]
                for j in range(i, n):
                    orow[bj * n + j] = row[j - i]
    return RationalMatrix(out)


@dataclass(frozen=True)
class SimilarityReduction:
    """Outcome of a reduction: Z @ transform == transform @ target, and
    scaling conjugates target onto normal_form (target @ scaling ==
    scaling @ normal_form)."""

    shift_order: int
    transform: RationalMatrix
    target: RationalMatrix
    scaling: RationalMatrix
    normal_form: RationalMatrix

    def full_transform(self) -> RationalMatrix:
        """S with Z @ S == S @ normal_form."""
        return self.transform @ self.scaling


def reduce_shifted(z: BlockToeplitzUT, r: int) -> SimilarityReduction:
    """Reduce Z to ``I (x) A_0 + N^r (x) I`` when A_1..A_(r-1) vanish and
    A_r is invertible.

    The transform X is solved by forward substitution: for every offset t
    from r+1 up, the equations on the t-th block superdiagonal of
    Z X - X (I (x) A_0 + N^r (x) A_r) determine the (t-r)-th superdiagonal
    of X from already-known entries, walking down each diagonal.
    """
    m, n = z.block_count, z.block_size
    if not 1 <= r <= m - 1:
        raise ValueError(f"shift order must satisfy 1 <= r <= {m - 1}")
    a = z.first_rows()
    for i in range(1, r):
        if any(a[i]):
            raise NonzeroLowOrderError(
                f"block {i} below the shift order {r} is nonzero"
            )
    if a[r][0] == 0:
        raise SingularArError(
            f"block {r} has zero top-left entry, not invertible"
        )
    ar_inv = _tz_inv(a[r])

    # X starts as block identity; rows 0..r-1 stay identity rows.
    x = [[None] * m for _ in range(m)]
    one = _tz_one(n)
    zero = _tz_zero(n)
    for i in range(m):
        x[i][i] = one
        for j in range(i + 1, m):
            x[i][j] = zero
    for t in range(r + 1, m):
        for i in range(m - t):
            acc = a[t]
            for l in range(r + 1, t):
                term = x[i + l][i + t]
                if any(term):
                    acc = _tz_add(acc, _tz_mul(a[l], term))
            x[i + r][i + t] = _tz_sub(x[i][i + t - r], _tz_mul(ar_inv, acc))

    transform = _assemble_block_grid(x, m, n)

    target_rows = [a[0] if i == 0 else zero for i in range(m)]
    target_rows[r] = a[r]
    target = BlockToeplitzUT.from_first_rows(target_rows).to_matrix()

    normal_rows = [a[0] if i == 0 else zero for i in range(m)]
    normal_rows[r] = one
    normal_form = BlockToeplitzUT.from_first_rows(normal_rows).to_matrix()

    # Scaling D = diag(B_1..B_m) with B_(i+r) = A_r^{-1} B_i, kept in
    # nonnegative powers of A_r; then target @ D == D @ normal_form.
    top = -(-m // r)
    scale_grid = [[None] * m for _ in range(m)]
    for i in range(m):
        power = top - (-(-(i + 1) // r))
        scale_grid[i][i] = _tz_pow(a[r], power)
    scaling = _assemble_block_grid(scale_grid, m, n)

    return SimilarityReduction(r, transform, target, scaling, normal_form)


def reduce_bidiagonal(z: BlockToeplitzUT) -> SimilarityReduction:
    """Special case r = 1: reduce Z to ``I (x) A_0 + N (x) I`` when the
    first off-diagonal block is invertible."""
    if z.block_count == 1:
        # Nothing above the diagonal; Z is already in normal form.
        mat = z.to_matrix()
        ident = RationalMatrix.identity(mat.rows)
        return SimilarityReduction(1, ident, mat, ident, mat)
    try:
        return reduce_shifted(z, 1)
    except SingularArError as exc:
        raise SingularA1Error(str(exc)) from exc
