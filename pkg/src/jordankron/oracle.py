"""Independent ground truth: Jordan structure by brute force.

The oracle recovers the exact Jordan canonical form of the matrices built
by :mod:`jordankron.bttb` using nothing but ranks of powers (the Weyr
characteristic): for a nilpotent Z, the number of blocks of size s equals
``2 nu_s - nu_(s-1) - nu_(s+1)`` where ``nu_s`` is the nullity of ``Z^s``.
No structure theorem is consulted anywhere in this module, which is what
makes it usable as an independent check of the predictors.

Internally the rational matrices are scaled by their common denominator
(rank is invariant under nonzero scaling) and the powers and ranks run on
plain integers through the fraction-free elimination kernel.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .bttb import JordanSpec, block_pairs, build_block_pair
from .exactmat import (
    RationalMatrix,
    _matmul_int_rows,
    _rank_int_rows,
    _scaled_int_rows,
)
from .polyring import BivariatePoly, RationalLike, format_rational, parse_rational


class NotNilpotentError(ValueError):
    """The matrix handed to the Weyr computation is not nilpotent."""


@dataclass(frozen=True)
class WeyrData:
    """Nullity sequence nu_0 = 0, nu_1, ... of the powers of a nilpotent matrix.

    The stored sequence ends at the first index reaching the ambient
    dimension.  It is strictly increasing until then, with concave
    increments.
    """

    dimension: int
    nullities: tuple[int, ...]

    def block_sizes(self) -> tuple[int, ...]:
        nus = list(self.nullities)
        # Pad two steps past stabilization; the sequence stays constant.
        nus.extend([self.dimension] * 2)
        sizes: list[int] = []
        for s in range(1, len(nus) - 1):
            count = 2 * nus[s] - nus[s - 1] - nus[s + 1]
            sizes.extend([s] * count)
        sizes.sort(reverse=True)
        return tuple(sizes)


def _weyr_nullities_int(rows: list[list[int]], dim: int) -> list[int]:
    """Nullities of successive powers until full nullity; raises if the
    sequence plateaus early, which happens exactly when Z^dim != 0."""
    nullities = [0]
    current = rows
    while True:
        rk = _rank_int_rows([row[:] for row in current])
        nu = dim - rk
        prev = nullities[-1]
        if nu == prev:
            raise NotNilpotentError(
                "nullity sequence stabilized at "
                f"{nu} below the dimension {dim}"
            )
        # Nullities of powers grow strictly until stabilization with
        # concave increments; violations would mean a rank kernel bug.
        assert nu > prev, "decreasing nullity step"
        if len(nullities) >= 2:
            assert nu - prev <= prev - nullities[-2], "nonconcave nullity step"
        nullities.append(nu)
        if nu == dim:
            return nullities
        current = _matmul_int_rows(current, rows)


def weyr_data(z: RationalMatrix) -> WeyrData:
    """Nullity sequence of z, z^2, ...; z must be square and nilpotent."""
    if not z.is_square():
        raise ValueError("need a square matrix")
    dim = z.rows
    rows = _scaled_int_rows(z)
    return WeyrData(dim, tuple(_weyr_nullities_int(rows, dim)))


def weyr_structure(z: RationalMatrix) -> tuple[int, ...]:
    """Jordan block sizes of a nilpotent matrix, descending."""
    data = weyr_data(z)
    sizes = data.block_sizes()
    assert sum(sizes) == data.dimension
    return sizes


class JordanStructure:
    """Map from eigenvalue to the descending multiset of its block sizes."""

    __slots__ = ("entries",)

    def __init__(self, entries: Mapping[RationalLike, Iterable[int]]):
        norm: dict[Fraction, tuple[int, ...]] = {}
        for eig, sizes in entries.items():
            sizes = tuple(sorted((int(s) for s in sizes), reverse=True))
            if not sizes:
                continue
            if sizes[-1] < 1:
                raise ValueError("block sizes must be positive")
            norm[Fraction(eig)] = sizes
        self.entries = norm

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[RationalLike, Iterable[int]]]):
        """Accumulate (eigenvalue, sizes) contributions, merging eigenvalue
        collisions by exact rational equality."""
        acc: dict[Fraction, list[int]] = {}
        for eig, sizes in pairs:
            acc.setdefault(Fraction(eig), []).extend(int(s) for s in sizes)
        return cls(acc)

    @property
    def dimension(self) -> int:
        return sum(sum(sizes) for sizes in self.entries.values())

    def sorted_items(self) -> list[tuple[Fraction, tuple[int, ...]]]:
        return sorted(self.entries.items())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, JordanStructure):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self) -> int:
        return hash(tuple(self.sorted_items()))

    def to_json_obj(self) -> dict:
        return {
            "eigenvalues": [
                {"eig": format_rational(eig), "blocks": list(sizes)}
                for eig, sizes in self.sorted_items()
            ]
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json_obj(cls, obj) -> "JordanStructure":
        try:
            pairs = [
                (parse_rational(str(item["eig"])), [int(b) for b in item["blocks"]])
                for item in obj["eigenvalues"]
            ]
        except (KeyError, TypeError) as exc:
            raise ValueError(f"bad Jordan structure JSON: {obj!r}") from exc
        return cls.from_pairs(pairs)

    @classmethod
    def from_json(cls, text: str) -> "JordanStructure":
        return cls.from_json_obj(json.loads(text))

    def __repr__(self) -> str:
        inner = ", ".join(
            f"{format_rational(eig)}: {list(sizes)}"
            for eig, sizes in self.sorted_items()
        )
        return f"JordanStructure({{{inner}}})"


def oracle_jcf(p: BivariatePoly, x: JordanSpec, y: JordanSpec) -> JordanStructure:
    """Exact Jordan structure of p evaluated on (x, y), by brute force.

    Each block pair contributes the Weyr structure of its built matrix
    shifted by its only eigenvalue p(lam, mu); contributions at equal
    eigenvalues merge.
    """
    contributions = []
    for lam, m, mu, n in block_pairs(x, y):
        eig = p.eval(lam, mu)
        z = build_block_pair(p, lam, m, mu, n).shifted(eig)
        contributions.append((eig, weyr_structure(z)))
    return JordanStructure.from_pairs(contributions)


def oracle_jcf_matrix(
    a: RationalMatrix, eigenvalues: Iterable[RationalLike]
) -> JordanStructure:
    """Brute-force Jordan structure of a square matrix with known spectrum.

    For each candidate eigenvalue the nullity chain of (A - e I)^s is run
    until it stabilizes; the stabilized value is the algebraic
    multiplicity.  The multiplicities must sum to the dimension, otherwise
    the candidate set was wrong and a ValueError is raised.
    """
    if not a.is_square():
        raise ValueError("need a square matrix")
    dim = a.rows
    contributions = []
    covered = 0
    for eig in sorted({Fraction(e) for e in eigenvalues}):
        rows = _scaled_int_rows(a.shifted(eig))
        nullities = [0]
        current = rows
        while True:
            rk = _rank_int_rows([row[:] for row in current])
            nu = dim - rk
            if nu == nullities[-1]:
                break
            assert nu > nullities[-1], "decreasing nullity step"
            nullities.append(nu)
            if nu == dim:
                break
            current = _matmul_int_rows(current, rows)
        algebraic = nullities[-1]
        if algebraic == 0:
            continue
        covered += algebraic
        nullities.extend([algebraic] * 2)
        sizes = []
        for s in range(1, len(nullities) - 1):
            count = 2 * nullities[s] - nullities[s - 1] - nullities[s + 1]
            sizes.extend([s] * count)
        contributions.append((eig, sizes))
    if covered != dim:
        raise ValueError(
            f"candidate eigenvalues cover {covered} of {dim} dimensions"
        )
    return JordanStructure.from_pairs(contributions)
