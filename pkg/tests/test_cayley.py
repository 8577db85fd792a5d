import random

import numpy as np
import pytest

from closed_forms import h2_form, h3_form
from poncelet.cayley import (
    batch_hankel,
    binary_cubic_pullback,
    cayley_coeffs,
    hankel_f,
    hankel_layout,
    pencil_cayley_count,
    satisfies_ngon_cayley,
)
from poncelet.conics import ALL_TYPES, Conic, det3, is_smooth, is_transversal, _char_cubic_coeffs
from poncelet.elliptic import curve_from_pair, is_ntorsion_x
from poncelet.errors import InvalidInput, SingularConic
from poncelet.field import PrimeField, inv_mod
from poncelet.pencils import canonical_pencil
from poncelet.verify import random_transversal_pair

F97 = PrimeField(97)


def test_same_conic_twice():
    A = Conic([1, 0, 0, 1, 0, 1], F97)
    s = cayley_coeffs(A, A, 4).values()
    # sqrt((1+x)^3) = 1 + 3/2 x + 3/8 x^2 - 1/16 x^3
    assert s[1] == 3 * inv_mod(2, 97) % 97
    assert s[2] == 3 * inv_mod(8, 97) % 97
    assert s[3] == (-inv_mod(16, 97)) % 97
    assert hankel_f(A, A, 3) != 0


def test_small_orders():
    rng = random.Random(0)
    A, B = random_transversal_pair(F97, rng)
    assert cayley_coeffs(A, B, 0).values() == [1]
    s = cayley_coeffs(A, B, 6).values()
    assert hankel_f(A, B, 3) == s[2]
    assert hankel_f(A, B, 4) == s[3]
    assert hankel_f(A, B, 5).value == (s[2] * s[4] - s[3] * s[3]) % 97
    assert hankel_f(A, B, 6).value == (s[3] * s[5] - s[4] * s[4]) % 97


def test_layout():
    assert hankel_layout(3) == (1, 2)
    assert hankel_layout(4) == (1, 3)
    assert hankel_layout(9) == (4, 2)
    assert hankel_layout(10) == (4, 3)
    with pytest.raises(InvalidInput):
        hankel_layout(2)


def test_singular_B():
    A = Conic([1, 0, 0, 1, 0, 1], F97)
    with pytest.raises(SingularConic):
        hankel_f(A, Conic([0, 1, 0, 0, 0, 0], F97), 3)


@pytest.mark.parametrize("t,want", [("(1,1,1,1)", 2), ("(2,1,1)", 6), ("(2,2)", 2), ("(3,1)", 8), ("(4)", 6)])
def test_triangle_counts_q7(t, want):
    P = canonical_pencil(t, PrimeField(7))
    assert pencil_cayley_count(P, 3) == want
    sm = P.smooth_members()
    slow = sum(satisfies_ngon_cayley(P.member(r), P.member(s), 3) for r in sm for s in sm if r != s)
    assert slow == want


def test_batch_matches_scalar():
    rng = random.Random(4)
    F = PrimeField(31)
    for t in ALL_TYPES:
        P = canonical_pencil(t, F)
        sm = P.smooth_members()
        pairs = [tuple(rng.sample(sm, 2)) for _ in range(20)]
        a = np.array([r.vector() for r, _ in pairs])
        b = np.array([s.vector() for _, s in pairs])
        D = binary_cubic_pullback(P.cubic, a, b, 31)
        for (r, s), row in zip(pairs, D):
            c = _char_cubic_coeffs(P.member(r), P.member(s))
            assert list(row[: len(c)]) == c
        for n in (3, 4, 5, 6, 7, 8, 9):
            vals = batch_hankel(D, n, 31)
            for (r, s), v in zip(pairs, vals):
                assert v == hankel_f(P.member(r), P.member(s), n).value


def test_sharded_sweep_equals_full():
    P = canonical_pencil("(2,2)", PrimeField(31))
    for n in (3, 4, 5):
        full = pencil_cayley_count(P, n)
        assert sum(pencil_cayley_count(P, n, k, 4) for k in range(4)) == full


def _random_invertible(rng, p):
    while True:
        M = [[rng.randrange(p) for _ in range(3)] for _ in range(3)]
        if det3(M, p):
            return M


def test_scalar_and_projective_invariance():
    rng = random.Random(9)
    F = PrimeField(31)
    P = canonical_pencil("(1,1,1,1)", F)
    sm = P.smooth_members()
    pairs = [(r, s) for r in sm for s in sm if r != s]
    for n in (3, 4, 5):
        for r, s in pairs[:: 7]:
            A, B = P.member(r), P.member(s)
            want = satisfies_ngon_cayley(A, B, n)
            c, d = rng.randrange(1, 31), rng.randrange(1, 31)
            assert satisfies_ngon_cayley(A.scale(c), B.scale(d), n) == want
            M = _random_invertible(rng, 31)
            assert satisfies_ngon_cayley(A.transform(M), B.transform(M), n) == want


def test_cayley_equals_torsion_on_random_pairs():
    rng = random.Random(1)
    for _ in range(150):
        A, B = random_transversal_pair(F97, rng)
        E = curve_from_pair(A, B)
        for n in (3, 4, 5, 6, 7, 8):
            assert satisfies_ngon_cayley(A, B, n) == is_ntorsion_x(E, 0, n)


@pytest.mark.parametrize("t", ALL_TYPES)
def test_printed_h2_proportional(t):
    rng = random.Random(str(t))
    p = 101
    P = canonical_pencil(t, PrimeField(p))
    finite = [x.r for x in P.smooth_members() if x.r is not None]
    ratios = set()
    for _ in range(25):
        r, s = rng.sample(finite, 2)
        A, B = P.member(r), P.member(s)
        d0, d1, d2 = _char_cubic_coeffs(A, B)[:3]
        cleared = cayley_coeffs(A, B, 2).values()[2] * 8 * d0 * d0 % p
        assert cleared == (4 * d0 * d2 - d1 * d1) % p
        h = h2_form(P, r, s)
        assert (h == 0) == (cleared == 0)
        if h:
            ratios.add(cleared * inv_mod(h, p) % p)
    assert len(ratios) == 1 and 0 not in ratios


@pytest.mark.parametrize("t", ALL_TYPES)
def test_printed_h3_proportional(t):
    rng = random.Random(str(t) + "3")
    p = 97
    P = canonical_pencil(t, PrimeField(p))
    finite = [x.r for x in P.smooth_members() if x.r is not None]
    ratios = set()
    for _ in range(25):
        r, s = rng.sample(finite, 2)
        A, B = P.member(r), P.member(s)
        d0 = _char_cubic_coeffs(A, B)[0]
        cleared = cayley_coeffs(A, B, 3).values()[3] * 16 * d0 ** 3 % p
        h = h3_form(P, r, s)
        assert (h == 0) == (cleared == 0)
        if h:
            ratios.add(cleared * inv_mod(h, p) % p)
    assert len(ratios) == 1 and 0 not in ratios
