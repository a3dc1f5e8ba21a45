import random
from fractions import Fraction as Q

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jordankron import (
    INFINITE,
    DegenerateCaseError,
    EqualEigenvaluesError,
    JordanSpec,
    JordanStructure,
    UnivariatePoly,
    bezout_quotient,
    build_block_pair,
    distinct_ev_blocks,
    equal_ev_blocks,
    equal_ev_nullities,
    euclid_partition,
    first_nonvanishing_order,
    frechet_jcf,
    generic_pair_sizes,
    h_poly,
    oracle_jcf,
    pair_prediction,
    phi_distinct,
    phi_equal,
    rank,
    univariate_hasse_eval,
)
from helpers import random_spec, random_univariate

QUARTIC = UnivariatePoly.from_string("0,0,-2,0,1")  # w^4 - 2w^2
CUBIC = UnivariatePoly.from_string("0,0,-1,1")  # w^3 - w^2
SHIFTED_QUARTIC = UnivariatePoly.from_string("0,0,-6,0,1")  # w^4 - 6w^2
W5 = UnivariatePoly.from_string("0,0,0,0,0,1")  # w^5


def test_phi_distinct_examples():
    assert phi_distinct(QUARTIC, -1, 1) == QUARTIC
    assert phi_distinct(CUBIC, 0, 1) == CUBIC
    assert phi_distinct(UnivariatePoly([0, 2]), 0, 5).is_zero()
    with pytest.raises(EqualEigenvaluesError):
        phi_distinct(QUARTIC, 1, 1)


def test_phi_distinct_balances_endpoints():
    rng = random.Random(101)
    for _ in range(20):
        f = random_univariate(rng, max_deg=7)
        lam, mu = Q(rng.randint(-3, 3)), Q(rng.randint(-3, 3))
        if lam == mu:
            mu = lam + 1
        phi = phi_distinct(f, lam, mu)
        assert phi(lam) == phi(mu)


def test_first_nonvanishing_order_examples():
    assert first_nonvanishing_order(QUARTIC, -1, 4) == 2
    assert first_nonvanishing_order(CUBIC, 1, 3) == 1
    assert first_nonvanishing_order(UnivariatePoly([9]), 0, 5) == INFINITE
    assert first_nonvanishing_order(UnivariatePoly(), 0, 5) == INFINITE


def test_euclid_partition_examples():
    assert euclid_partition(4, 2) == (2, 2)
    assert euclid_partition(3, 2) == (2, 1)
    assert euclid_partition(4, 1) == (4,)
    assert euclid_partition(4, 7) == (1, 1, 1, 1)
    assert euclid_partition(4, INFINITE) == (1, 1, 1, 1)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 30), st.integers(1, 40))
def test_euclid_partition_sums_and_shape(size, order):
    parts = euclid_partition(size, order)
    assert sum(parts) == size
    assert len(parts) == min(size, order)
    assert max(parts) - min(parts) <= 1


def test_phi_equal_examples():
    assert phi_equal(SHIFTED_QUARTIC, 1) == SHIFTED_QUARTIC + UnivariatePoly([0, 8])
    assert phi_equal(W5, 0) == W5
    assert phi_equal(UnivariatePoly([7, 3]), 2) == UnivariatePoly([7])


def test_phi_equal_kills_first_derivative():
    rng = random.Random(103)
    for _ in range(20):
        f = random_univariate(rng, max_deg=7)
        lam = Q(rng.randint(-3, 3))
        assert univariate_hasse_eval(phi_equal(f, lam), 1, lam) == 0


def test_distinct_ev_blocks_examples():
    eig, sizes = distinct_ev_blocks(QUARTIC, -1, 4, 1, 3)
    assert (eig, sizes) == (Q(0), (3, 3, 2, 2, 1, 1))
    eig, sizes = distinct_ev_blocks(CUBIC, 0, 4, 1, 3)
    assert (eig, sizes) == (Q(0), (4, 4, 2, 2))
    # Quadratic f always produces the plain staircase at lam + mu.
    f = UnivariatePoly([0, 0, 1])
    eig, sizes = distinct_ev_blocks(f, 2, 3, -1, 2)
    assert (eig, sizes) == (Q(1), (4, 2))


def test_equal_ev_nullities_examples():
    assert equal_ev_nullities(2, 2, 1) == [0, 2, 3, 4]
    assert equal_ev_nullities(2, 3, 2) == [0, 4, 6]
    assert equal_ev_nullities(4, 4, 4) == [0, 13, 16]


def test_equal_ev_blocks_examples():
    f = UnivariatePoly([0, 0, 1])
    assert equal_ev_blocks(f, 0, 2, 2) == (Q(0), (3, 1))
    assert equal_ev_blocks(SHIFTED_QUARTIC, 1, 3, 2) == (Q(-8), (2, 2, 1, 1))
    assert equal_ev_blocks(W5, 0, 4, 4) == (Q(0), (2, 2, 2) + (1,) * 10)


def test_equal_ev_blocks_linear_and_flat_cases():
    # Linear f: the tangent-shifted derivative vanishes identically.
    assert equal_ev_blocks(UnivariatePoly([5, 3]), 2, 3, 2) == (
        Q(3),
        (1,) * 6,
    )
    # Large multiplicity floors everything to unit blocks.
    assert equal_ev_blocks(W5, 0, 2, 2) == (Q(0), (1, 1, 1, 1))


def test_frechet_jcf_examples():
    w2 = UnivariatePoly([0, 0, 1])
    spec2 = JordanSpec.single(0, 2)
    assert frechet_jcf(w2, spec2, spec2) == JordanStructure({0: [3, 1]})

    x, y = JordanSpec.single(-1, 4), JordanSpec.single(1, 3)
    assert frechet_jcf(QUARTIC, x, y) == JordanStructure({0: [3, 3, 2, 2, 1, 1]})

    mixed_x = JordanSpec([(0, 2), (1, 1)])
    mixed_y = JordanSpec.single(0, 1)
    w3 = UnivariatePoly([0, 0, 0, 1])
    result = frechet_jcf(w3, mixed_x, mixed_y)
    assert result == oracle_jcf(bezout_quotient(w3), mixed_x, mixed_y)
    assert result == JordanStructure({0: [1, 1], 1: [1]})


def test_frechet_matches_generic_when_applicable():
    rng = random.Random(107)
    checked = 0
    while checked < 60:
        f = random_univariate(rng, max_deg=6)
        p = bezout_quotient(f)
        if p.is_constant():
            continue
        lam, mu = Q(rng.randint(-2, 2)), Q(rng.randint(-2, 2))
        m, n = rng.randint(1, 4), rng.randint(1, 4)
        try:
            generic = generic_pair_sizes(p, lam, mu, m, n)
        except DegenerateCaseError:
            continue
        pred = pair_prediction(f, lam, m, mu, n)
        assert pred.sizes == generic
        checked += 1


def test_pair_sizes_sum_to_mn():
    rng = random.Random(109)
    for _ in range(60):
        f = random_univariate(rng, max_deg=8)
        lam, mu = Q(rng.randint(-2, 2)), Q(rng.randint(-2, 2))
        m, n = rng.randint(1, 5), rng.randint(1, 5)
        pred = pair_prediction(f, lam, m, mu, n)
        assert sum(pred.sizes) == m * n


def test_equal_ev_power_ranks_match_homogeneous_model():
    # With d the tangent multiplicity, powers of the shifted pair matrix
    # have the same ranks as powers of the h_d matrix on nilpotent blocks.
    rng = random.Random(113)
    checked = 0
    while checked < 20:
        f = random_univariate(rng, max_deg=6)
        lam = Q(rng.randint(-2, 2))
        m, n = rng.randint(1, 4), rng.randint(1, 4)
        pred = pair_prediction(f, lam, m, lam, n)
        d = pred.local_mult
        if d == INFINITE or d >= m + n - 1:
            continue
        p = bezout_quotient(f)
        z = build_block_pair(p, lam, m, lam, n).shifted(p.eval(lam, lam))
        model = build_block_pair(h_poly(d), 0, m, 0, n)
        power_z, power_h = z, model
        while True:
            assert rank(power_z) == rank(power_h)
            if rank(power_z) == 0:
                break
            power_z = power_z @ z
            power_h = power_h @ model
        checked += 1


def test_grand_equivalence_small():
    rng = random.Random(127)
    for _ in range(100):
        f = random_univariate(rng, max_deg=8)
        x = random_spec(rng, max_blocks=2, max_size=4)
        y = random_spec(rng, max_blocks=2, max_size=4)
        assert frechet_jcf(f, x, y) == oracle_jcf(bezout_quotient(f), x, y)


def test_equivalence_with_fractional_eigendata():
    # Non-integer rational eigenvalues and coefficients exercise the
    # denominator-clearing path of the oracle end to end.
    rng = random.Random(131)
    eigs = [Q(1, 2), Q(-2, 3), Q(0), Q(3, 4), Q(-1, 2)]
    for _ in range(60):
        f = UnivariatePoly(
            [
                Q(rng.randint(-4, 4), rng.choice([1, 2, 3]))
                for _ in range(rng.randint(1, 7))
            ]
        )
        x = JordanSpec(
            [(rng.choice(eigs), rng.randint(1, 4)) for _ in range(rng.randint(1, 2))]
        )
        y = JordanSpec(
            [(rng.choice(eigs), rng.randint(1, 4)) for _ in range(rng.randint(1, 2))]
        )
        assert frechet_jcf(f, x, y) == oracle_jcf(bezout_quotient(f), x, y)


def test_nullity_sequences_are_monotone_with_nonnegative_counts():
    for m in range(1, 6):
        for n in range(m, 6):
            for d in range(1, m + n):
                nus = equal_ev_nullities(m, n, d)
                assert nus[0] == 0 and nus[-1] == m * n
                diffs = [b - a for a, b in zip(nus, nus[1:])]
                assert all(x > 0 for x in diffs)
                padded = nus + [m * n] * 2
                for s in range(1, len(padded) - 1):
                    assert 2 * padded[s] - padded[s - 1] - padded[s + 1] >= 0
