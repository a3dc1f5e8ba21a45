import random
from fractions import Fraction as Q

import pytest

from jordankron import (
    BivariatePoly,
    JordanSpec,
    JordanStructure,
    NotNilpotentError,
    RationalMatrix,
    h_poly,
    jordan_block,
    oracle_jcf,
    weyr_data,
    weyr_structure,
)
from jordankron.bttb import build_block_pair
from helpers import random_bivariate, random_spec_total

X_PLUS_Y = BivariatePoly([[0, 1], [1, 0]])


def test_weyr_structure_single_block():
    assert weyr_structure(jordan_block(0, 3)) == (3,)


def test_weyr_structure_kronecker_sum():
    z = build_block_pair(X_PLUS_Y, 0, 2, 0, 2)
    assert weyr_structure(z) == (3, 1)


def test_weyr_structure_quartic():
    z = build_block_pair(h_poly(4), 0, 4, 0, 4)
    assert weyr_structure(z) == (2, 2, 2) + (1,) * 10


def test_weyr_rejects_non_nilpotent():
    with pytest.raises(NotNilpotentError):
        weyr_structure(RationalMatrix.identity(3))
    with pytest.raises(NotNilpotentError):
        # Nilpotent plus a 1x1 nonzero block.
        weyr_structure(RationalMatrix([[0, 1, 0], [0, 0, 0], [0, 0, 2]]))


def test_weyr_data_invariants():
    data = weyr_data(build_block_pair(h_poly(4), 0, 4, 0, 4))
    assert data.nullities[0] == 0
    assert data.nullities[-1] == data.dimension == 16
    diffs = [
        b - a for a, b in zip(data.nullities, data.nullities[1:])
    ]
    assert all(d > 0 for d in diffs)
    assert all(d2 <= d1 for d1, d2 in zip(diffs, diffs[1:]))


def test_oracle_jcf_examples():
    spec2 = JordanSpec.single(0, 2)
    assert oracle_jcf(X_PLUS_Y, spec2, spec2) == JordanStructure({0: [3, 1]})

    p = BivariatePoly.from_string("0,1,-1;-2,1,0")
    x = JordanSpec([(0, 2), (1, 1)])
    y = JordanSpec([(2, 2), (3, 1)])
    assert oracle_jcf(p, x, y) == JordanStructure(
        {-2: [2, 2, 2], -5: [1], -6: [2]}
    )

    n3 = JordanSpec.single(0, 3)
    p1 = BivariatePoly.from_string("0,0,1;0,2,0;-1,0,0")
    p2 = BivariatePoly.from_string("0,0,1;0,1,0;1,0,0")
    assert oracle_jcf(p1, n3, n3) == JordanStructure({0: [3, 2, 2, 1, 1]})
    assert oracle_jcf(p2, n3, n3) == JordanStructure({0: [3, 2, 1, 1, 1, 1]})


def test_oracle_dimension_conservation():
    rng = random.Random(61)
    for _ in range(20):
        p = random_bivariate(rng, 3, 3)
        x = random_spec_total(rng, max_total=5)
        y = random_spec_total(rng, max_total=5)
        result = oracle_jcf(p, x, y)
        assert result.dimension == x.total_size * y.total_size


def test_oracle_swap_invariance():
    rng = random.Random(67)
    for _ in range(15):
        p = random_bivariate(rng, 3, 3)
        x = random_spec_total(rng, max_total=4)
        y = random_spec_total(rng, max_total=4)
        assert oracle_jcf(p, x, y) == oracle_jcf(p.swap(), y, x)


def test_oracle_constant_shift_moves_eigenvalues_only():
    rng = random.Random(71)
    for _ in range(15):
        p = random_bivariate(rng, 3, 3)
        x = random_spec_total(rng, max_total=4)
        y = random_spec_total(rng, max_total=4)
        c = Q(rng.randint(-3, 3))
        base = oracle_jcf(p, x, y)
        shifted = oracle_jcf(p.plus_constant(c), x, y)
        assert shifted.entries == {
            eig + c: sizes for eig, sizes in base.entries.items()
        }


def test_oracle_merges_colliding_eigenvalues():
    # Two distinct pairs both map to eigenvalue 0 here.
    p = X_PLUS_Y
    x = JordanSpec([(1, 2)])
    y = JordanSpec([(-1, 2), (0, 1)])
    result = oracle_jcf(p, x, y)
    assert set(result.entries) == {Q(0), Q(1)}
    assert result.entries[Q(0)] == (3, 1)
    assert result.entries[Q(1)] == (2,)


def test_structure_json_roundtrip_and_order():
    s = JordanStructure({Q(1, 2): [1, 3, 2], Q(-2): [1]})
    obj = s.to_json_obj()
    assert obj["eigenvalues"][0]["eig"] == "-2"
    assert obj["eigenvalues"][1]["blocks"] == [3, 2, 1]
    assert JordanStructure.from_json(s.to_json()) == s
    with pytest.raises(ValueError):
        JordanStructure.from_json('{"bad": 1}')


def test_structure_equality_is_exact():
    a = JordanStructure({Q(1, 3): [2]})
    b = JordanStructure({Q(333333, 1000000): [2]})
    assert a != b
