import pytest
from hypothesis import given, strategies as st

from poncelet.errors import DivisionByZero, FieldMismatch, InvalidInput
from poncelet.field import (
    PrimeField,
    QuadraticExtension,
    inv,
    is_prime,
    legendre_symbol,
    smallest_nonresidue,
    sqrt,
    sqrt_mod,
)

PRIMES = [5, 7, 11, 13, 17, 97, 101, 1009, 2069, 65537, 1000003]


def test_examples():
    F = PrimeField(7)
    assert inv(F(3)) == 5
    assert sqrt(F(2)) == 3
    assert sqrt(F(3)) is None
    assert sqrt(F(0)) == 0
    assert legendre_symbol(F(0)) == 0
    assert legendre_symbol(F(2)) == 1
    assert legendre_symbol(F(3)) == -1


def test_inverse_of_zero():
    with pytest.raises(DivisionByZero):
        inv(PrimeField(7)(0))
    with pytest.raises(ZeroDivisionError):
        PrimeField(7)(1) / 0


@pytest.mark.parametrize("p", [0, 1, 2, 3, 4, 9, 91, 561])
def test_rejects_bad_characteristic(p):
    with pytest.raises(InvalidInput):
        PrimeField(p)


def test_is_prime_against_sieve():
    N = 5000
    sieve = [True] * N
    sieve[0] = sieve[1] = False
    for i in range(2, N):
        if sieve[i]:
            for j in range(i * i, N, i):
                sieve[j] = False
    assert all(is_prime(n) == sieve[n] for n in range(N))


def test_field_mismatch():
    with pytest.raises(FieldMismatch):
        PrimeField(7)(1) + PrimeField(11)(1)


def test_nonresidue_scan():
    assert smallest_nonresidue(7) == 3
    assert smallest_nonresidue(5) == 2
    assert smallest_nonresidue(71) == 7


@pytest.mark.parametrize("p", PRIMES)
def test_sqrt_all_residues_small(p):
    # every square is found, the smaller root is returned
    for x in range(min(p, 3000)):
        r = sqrt_mod(x * x, p)
        assert r is not None and r * r % p == x * x % p and r <= p - r


@given(st.sampled_from(PRIMES), st.integers(), st.integers())
def test_legendre_multiplicative(p, a, b):
    F = PrimeField(p)
    x, y = F(a), F(b)
    if x and y:
        assert legendre_symbol(x * y) == legendre_symbol(x) * legendre_symbol(y)


@given(st.sampled_from(PRIMES), st.integers(min_value=1))
def test_fermat(p, a):
    x = PrimeField(p)(a)
    if x:
        assert x ** (p - 1) == 1
        assert x * x.inv() == 1


@given(st.sampled_from(PRIMES), st.integers())
def test_sqrt_of_square(p, a):
    x = PrimeField(p)(a)
    assert sqrt(x * x) in (x, -x)


@given(st.sampled_from(PRIMES[:7]), st.integers(), st.integers())
def test_extension_frobenius_order_two(p, a, b):
    X = QuadraticExtension(PrimeField(p))
    z = X(a, b)
    assert z ** (p * p) == z
    if z:
        assert z * z.inv() == 1
        assert (z ** p) == z.conjugate()


@given(st.sampled_from(PRIMES[:7]), st.integers())
def test_extension_square_roots(p, a):
    X = QuadraticExtension(PrimeField(p))
    w = X.sqrt_of_base(a)
    assert w * w == a
