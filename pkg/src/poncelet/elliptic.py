"""Curves y^2 = x^3 + a2 x^2 + a4 x + a6 over F_p and their torsion x-polynomials.

With a1 = a3 = 0 the division polynomials satisfy psi_n = g_n(x) for odd n
and psi_n = y g_n(x) for even n.  The torsion x-polynomial is

    Lambda_n = g_n                  (n odd)
    Lambda_n = (g_n / 2) * f(x)     (n even, f the curve cubic)

whose roots are exactly the x-coordinates of E[n] minus O: for even n the
factor f(x) adds back the 2-torsion, which g_n omits.  Dividing by
g_2 = 2 makes Lambda_2 = f exactly.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from typing import Union

from .errors import InvalidInput, UnsupportedCharacteristic
from .field import FieldElement, PrimeField, QuadExtElement, QuadraticExtension, legendre_mod
from .poly import Poly, _count_roots, _eval, _mul, _roots, _sub, _scale, _trim
from .conics import Conic, _char_cubic_coeffs, cubic_discriminant

Coord = Union[FieldElement, QuadExtElement]


class Curve:
    """Nonsingular y^2 = x^3 + a2 x^2 + a4 x + a6 over F_p."""

    def __init__(self, a2, a4, a6, field: PrimeField):
        p = field.p
        self.field = field
        self.a2, self.a4, self.a6 = int(a2) % p, int(a4) % p, int(a6) % p
        if cubic_discriminant(self.cubic, p) == 0:
            raise InvalidInput("singular cubic")
        self._cache: dict[int, list[int]] = {}
        self._lock = threading.Lock()

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def cubic(self) -> list[int]:
        return [self.a6, self.a4, self.a2, 1]

    def rhs(self, x):
        """x^3 + a2 x^2 + a4 x + a6 at x (int, FieldElement or extension element)."""
        if isinstance(x, QuadExtElement):
            return ((x + self.a2) * x + self.a4) * x + self.a6
        return FieldElement(_eval(self.cubic, int(x), self.p), self.field)

    def contains(self, P: CurvePoint) -> bool:
        if P.is_infinity:
            return True
        return P.y * P.y == self.rhs(P.x)

    def __eq__(self, other):
        return (
            isinstance(other, Curve)
            and other.field == self.field
            and (self.a2, self.a4, self.a6) == (other.a2, other.a4, other.a6)
        )

    def __hash__(self):
        return hash((self.a2, self.a4, self.a6, self.p))

    def __repr__(self):
        return f"Curve(a2={self.a2}, a4={self.a4}, a6={self.a6}, p={self.p})"

    def g(self, n: int) -> list[int]:
        """Coefficient list of g_n (psi_n divided by y for even n)."""
        with self._lock:
            return list(_division_g(n, self.cubic, self.p, self._cache))


@dataclass(frozen=True)
class CurvePoint:
    """A point (x, y), or the point at infinity when both are None."""

    x: Coord | None = None
    y: Coord | None = None

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def __neg__(self):
        if self.is_infinity:
            return self
        return CurvePoint(self.x, -self.y)


INFINITY = CurvePoint()


def _check(P: CurvePoint, E: Curve) -> None:
    if not E.contains(P):
        raise InvalidInput(f"point {P} is not on {E}")


def add(P: CurvePoint, Q: CurvePoint, E: Curve) -> CurvePoint:
    _check(P, E)
    _check(Q, E)
    return _add(P, Q, E)


def _add(P: CurvePoint, Q: CurvePoint, E: Curve) -> CurvePoint:
    if P.is_infinity:
        return Q
    if Q.is_infinity:
        return P
    if P.x == Q.x:
        if P.y == -Q.y:
            return INFINITY
        lam = (3 * P.x * P.x + 2 * E.a2 * P.x + E.a4) / (2 * P.y)
    else:
        lam = (Q.y - P.y) / (Q.x - P.x)
    x3 = lam * lam - E.a2 - P.x - Q.x
    y3 = lam * (P.x - x3) - P.y
    return CurvePoint(x3, y3)


def scalar_mul(n: int, P: CurvePoint, E: Curve) -> CurvePoint:
    _check(P, E)
    if n < 0:
        n, P = -n, -P
    result = INFINITY
    base = P
    while n:
        if n & 1:
            result = _add(result, base, E)
        base = _add(base, base, E)
        n >>= 1
    return result


def lift_x(E: Curve, x0) -> CurvePoint:
    """A point over x0, with y in F_p when possible and in F_p[t] otherwise."""
    ext = QuadraticExtension(E.field)
    v = E.rhs(int(x0)).value
    y = ext.sqrt_of_base(v)
    return CurvePoint(ext(int(x0)), y)


def _division_g(n: int, f: list[int], p: int, cache: dict) -> list[int]:
    if n in cache:
        return cache[n]
    a6, a4, a2 = f[0], f[1], f[2]
    b2, b4, b6 = 4 * a2 % p, 2 * a4 % p, 4 * a6 % p
    b8 = (4 * a2 * a6 - a4 * a4) % p
    half = (p + 1) // 2
    if n == 0:
        g = []
    elif n == 1:
        g = [1]
    elif n == 2:
        g = [2]
    elif n == 3:
        g = _trim([b8, 3 * b6 % p, 3 * b4 % p, b2, 3])
    elif n == 4:
        g = _scale(
            [(b4 * b8 - b6 * b6) % p, (b2 * b8 - b4 * b6) % p, 10 * b8 % p, 10 * b6 % p, 5 * b4 % p, b2, 2],
            2,
            p,
        )
    else:
        m = n // 2
        G = lambda k: _division_g(k, f, p, cache)  # noqa: E731
        if n % 2:
            t1 = _mul(G(m + 2), _mul(G(m), _mul(G(m), G(m), p), p), p)
            t2 = _mul(G(m - 1), _mul(G(m + 1), _mul(G(m + 1), G(m + 1), p), p), p)
            f2 = _mul(f, f, p)
            if m % 2 == 0:
                t1 = _mul(t1, f2, p)
            else:
                t2 = _mul(t2, f2, p)
            g = _sub(t1, t2, p)
        else:
            t1 = _mul(G(m + 2), _mul(G(m - 1), G(m - 1), p), p)
            t2 = _mul(G(m - 2), _mul(G(m + 1), G(m + 1), p), p)
            g = _scale(_mul(G(m), _sub(t1, t2, p), p), half, p)
    cache[n] = g
    return g


def lambda_coeffs(E: Curve, n: int) -> list[int]:
    g = E.g(n)
    if n % 2 == 0:
        g = _scale(_mul(g, E.cubic, E.p), (E.p + 1) // 2, E.p)
    return g


def expected_degree(n: int) -> int:
    if n % 2:
        return (n * n - 1) // 2
    return (n * n - 4) // 2 + 3


@dataclass(frozen=True)
class TorsionPoly:
    n: int
    lambda_poly: Poly

    @property
    def degree(self) -> int:
        return self.lambda_poly.degree


def _check_n(E: Curve, n: int) -> None:
    if n < 1:
        raise InvalidInput("torsion order must be positive")
    if math.gcd(n, E.p) != 1:
        raise UnsupportedCharacteristic(f"gcd({n}, {E.p}) != 1")


def torsion_poly(E: Curve, n: int) -> TorsionPoly:
    _check_n(E, n)
    if n < 2:
        raise InvalidInput("torsion order must be at least 2")
    return TorsionPoly(n, Poly(lambda_coeffs(E, n), E.field))


def r_count(E: Curve, n: int) -> int:
    """Distinct F_p-roots of Lambda_n."""
    _check_n(E, n)
    if n == 1:
        return 0
    return _count_roots(lambda_coeffs(E, n), E.p)


def r_split(E: Curve, n: int, seed: int = 0) -> tuple[int, int]:
    """(r_plus, r_minus): roots whose points are fixed / negated by Frobenius."""
    if n % 2 == 0:
        raise InvalidInput("the split is defined for odd n only")
    _check_n(E, n)
    if n == 1:
        return 0, 0
    plus = minus = 0
    for x0 in _roots(lambda_coeffs(E, n), E.p, seed):
        if legendre_mod(_eval(E.cubic, x0, E.p), E.p) >= 0:
            plus += 1
        else:
            minus += 1
    return plus, minus


def is_ntorsion_x(E: Curve, x0, n: int) -> bool:
    _check_n(E, n)
    if n == 1:
        return False
    return _eval(lambda_coeffs(E, n), int(x0), E.p) == 0


def curve_from_pair(A: Conic, B: Conic) -> Curve:
    """Monic model of y^2 = det(xA + B) scaled by x -> x/det A, y -> y/det A.

    The point over x = 0 of the original curve stays over x = 0.
    """
    p = A.p
    D = _char_cubic_coeffs(A, B)
    if len(D) != 4:
        raise InvalidInput("det(xA + B) is not a cubic; A is singular")
    d0, d1, d2, d3 = D
    return Curve(d2, d1 * d3 % p, d0 * d3 * d3 % p, A.field)


def brute_force_torsion_x(E: Curve, n: int) -> set[int]:
    """x in F_p whose lifted points are nonzero n-torsion, by scalar multiplication."""
    out = set()
    for x0 in range(E.p):
        P = lift_x(E, x0)
        if scalar_mul(n, P, E).is_infinity:
            out.add(x0)
    return out
