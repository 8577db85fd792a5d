import random

import pytest
from hypothesis import given, settings, strategies as st

from poncelet.errors import InvalidInput
from poncelet.field import PrimeField
from poncelet.poly import (
    Poly,
    TruncatedSeries,
    _gcd,
    brute_force_factor_degrees,
    brute_force_roots,
    count_roots,
    degree_partition,
    factor_degrees,
    gcd,
    is_irreducible,
    powmod_frobenius,
    roots,
    series_sqrt,
)

F5, F7 = PrimeField(5), PrimeField(7)


def P(coeffs, F=F7):
    return Poly(coeffs, F)


def test_gcd_examples():
    assert gcd(P([-1, 0, 1]), P([-1, 1])) == P([-1, 1])
    f = P([2, 3, 4])
    assert gcd(f, P([])) == f.monic()
    with pytest.raises(InvalidInput):
        gcd(P([]), P([]))
    # over F_3: x^2 + 1 is irreducible, x^2 + x = x(x + 1), so the gcd is 1
    assert _gcd([1, 0, 1], [0, 1, 1], 3) == [1]


def test_frobenius_examples():
    assert powmod_frobenius(P([1, 0, 1])) == P([0, 6])
    assert powmod_frobenius(P([0, 1])) == P([])
    assert powmod_frobenius(P([-3, 1])) == P([3])
    with pytest.raises(InvalidInput):
        powmod_frobenius(P([5]))


def test_count_roots_examples():
    assert count_roots(P([0, -1, 0, 1])) == 3
    assert count_roots(P([1, 0, 1])) == 0
    assert count_roots(Poly([-1, 0, 0, 0, 1], F5)) == 4
    assert count_roots(P([0, 0, 1])) == 1  # distinct roots only
    with pytest.raises(InvalidInput):
        count_roots(P([]))


def test_roots_examples():
    assert {int(r) for r in roots(P([-2, 0, 1]))} == {3, 4}
    assert roots(P([1, 0, 1])) == set()


def _irreducible_quartic(F):
    for c in range(F.p ** 2):
        f = Poly([c % F.p, c // F.p, 0, 0, 1], F)
        if is_irreducible(f):
            return f


def test_degree_partition_examples():
    lin = [P([-k, 1]) for k in (1, 2, 3, 4)]
    assert degree_partition(lin[0] * lin[1] * lin[2] * lin[3]) == (1, 1, 1, 1)
    assert degree_partition(P([1, 0, 1]) * lin[0] * lin[1]) == (2, 1, 1)
    q4 = _irreducible_quartic(F7)
    assert sum(brute_force_factor_degrees(q4).values()) == 1
    assert degree_partition(q4) == (4,)
    with pytest.raises(InvalidInput):
        degree_partition(lin[0] * lin[0] * lin[1] * lin[2])
    with pytest.raises(InvalidInput):
        degree_partition(lin[0] * lin[1])


def test_series_sqrt_examples():
    assert series_sqrt(TruncatedSeries([1], F7, 4)) == TruncatedSeries([1], F7, 4)
    assert series_sqrt(TruncatedSeries([1, 2, 1], F7, 5)) == TruncatedSeries([1, 1], F7, 5)
    g = series_sqrt(TruncatedSeries([1, 1], F7, 3))
    assert g.coeffs == (1, 4, 6)
    assert g * g == TruncatedSeries([1, 1], F7, 3)
    with pytest.raises(InvalidInput):
        series_sqrt(TruncatedSeries([2, 1], F7, 3))


def test_series_sqrt_beyond_characteristic():
    # N > p: binomial coefficients would need 1/p!, Newton does not
    f = TruncatedSeries([1, 3, 0, 5], F7, 20)
    g = series_sqrt(f)
    assert g * g == f


polys = st.tuples(
    st.sampled_from([5, 7, 11, 13, 101]),
    st.lists(st.integers(0, 10 ** 6), min_size=2, max_size=10),
)


@settings(max_examples=150, deadline=None)
@given(polys, st.integers(0, 20))
def test_roots_match_brute_force(data, seed):
    p, cs = data
    f = Poly(cs, PrimeField(p))
    if f.degree < 1:
        return
    rs = {int(r) for r in roots(f, seed=seed)}
    assert rs == brute_force_roots(f)
    assert count_roots(f) == len(rs)


@settings(max_examples=100, deadline=None)
@given(polys, polys)
def test_count_roots_subadditive(d1, d2):
    F = PrimeField(d1[0])
    f, g = Poly(d1[1], F), Poly(d2[1], F)
    if f.degree < 1 or g.degree < 1:
        return
    total = count_roots(f * g)
    assert total <= count_roots(f) + count_roots(g)
    if gcd(f, g).degree == 0:
        assert total == count_roots(f) + count_roots(g)


@settings(max_examples=100, deadline=None)
@given(st.sampled_from([5, 7, 11, 13]), st.lists(st.integers(0, 100), min_size=4, max_size=4))
def test_degree_partition_against_trial_division(p, cs):
    F = PrimeField(p)
    f = Poly(cs + [1], F)
    if not f.is_squarefree():
        return
    part = degree_partition(f)
    assert sum(part) == 4
    assert sorted(brute_force_factor_degrees(f).elements(), reverse=True) == list(part)


@settings(max_examples=100, deadline=None)
@given(st.sampled_from([5, 7, 101, 2069]), st.lists(st.integers(0, 10 ** 5), max_size=12), st.integers(1, 30))
def test_series_sqrt_squares_back(p, tail, N):
    F = PrimeField(p)
    f = TruncatedSeries([1] + tail, F, N)
    g = series_sqrt(f)
    assert g.coeffs[0] == 1 and g * g == f


def test_factor_degrees_large_random():
    rng = random.Random(7)
    F = PrimeField(101)
    for _ in range(20):
        f = Poly([rng.randrange(101) for _ in range(12)] + [1], F)
        if f.is_squarefree():
            degs = factor_degrees(f)
            assert sum(degs) == 12
            assert degs.count(1) == count_roots(f)


def test_divmod_roundtrip():
    rng = random.Random(3)
    for _ in range(50):
        a = P([rng.randrange(7) for _ in range(rng.randint(1, 9))])
        b = P([rng.randrange(7) for _ in range(rng.randint(1, 5))] + [1])
        q, r = divmod(a, b)
        assert q * b + r == a and r.degree < b.degree
