"""Plane conics over F_p and the classification of transversal conic pairs.

A conic ``a x^2 + b xy + c xz + d y^2 + e yz + f z^2`` is stored by its six
coefficients; its symmetric matrix has the off-diagonal entries halved,
which is exact because p is odd.

The intersection type of a transversal pair (A, B) is read off from the
Galois orbits of the four base points.  We parametrize A by the pencil of
lines through one of its rational points, so that the base points become the
projective roots of a binary quartic, and factor that quartic over F_p.
"""

from __future__ import annotations

import enum
from typing import Sequence

from .errors import InvalidInput
from .field import FieldElement, PrimeField, inv_mod, sqrt_mod
from .poly import Poly, _add, _factor_degrees_sqf, _gcd, _deriv, _mul, _scale, _trim

Point = tuple[int, int, int]


class IntersectionType(enum.Enum):
    """Partition of 4 recording the Frobenius orbit sizes of the base points."""

    SPLIT = (1, 1, 1, 1)
    ONE_PAIR = (2, 1, 1)
    TWO_PAIRS = (2, 2)
    TRIPLE = (3, 1)
    QUARTET = (4,)

    @property
    def label(self) -> str:
        return "(" + ",".join(map(str, self.value)) + ")"

    def __str__(self):
        return self.label

    @classmethod
    def parse(cls, text) -> IntersectionType:
        """Accept ``(2,1,1)``, ``2,1,1``, ``211`` or a tuple of ints."""
        if isinstance(text, IntersectionType):
            return text
        if isinstance(text, (tuple, list)):
            parts = tuple(int(v) for v in text)
        else:
            s = str(text).strip().strip("()[] ")
            if "," in s:
                parts = tuple(int(v) for v in s.split(",") if v.strip())
            else:
                parts = tuple(int(ch) for ch in s)
        parts = tuple(sorted(parts, reverse=True))
        for t in cls:
            if t.value == parts:
                return t
        raise InvalidInput(f"not an intersection type: {text!r}")


ALL_TYPES = tuple(IntersectionType)


class Conic:
    """The conic ax^2 + bxy + cxz + dy^2 + eyz + fz^2 over a prime field."""

    __slots__ = ("coeffs", "field")

    def __init__(self, coeffs: Sequence, field: PrimeField):
        if len(coeffs) != 6:
            raise InvalidInput("a conic needs exactly six coefficients")
        p = field.p
        object.__setattr__(self, "coeffs", tuple(int(c) % p for c in coeffs))
        object.__setattr__(self, "field", field)

    def __setattr__(self, name, value):
        raise AttributeError("Conic is immutable")

    @classmethod
    def parse(cls, text: str, field: PrimeField) -> Conic:
        """Read the ``a,b,c,d,e,f`` text format."""
        try:
            vals = [int(v) for v in text.split(",")]
        except ValueError as exc:
            raise InvalidInput(f"bad conic coefficient list {text!r}") from exc
        return cls(vals, field)

    def format(self) -> str:
        return ",".join(str(c) for c in self.coeffs)

    @classmethod
    def from_matrix(cls, M: Sequence[Sequence[int]], field: PrimeField) -> Conic:
        return cls(
            [M[0][0], 2 * M[0][1], 2 * M[0][2], M[1][1], 2 * M[1][2], M[2][2]],
            field,
        )

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def sym(self) -> tuple[FieldElement, ...]:
        return tuple(FieldElement(c, self.field) for c in self.coeffs)

    def matrix(self) -> list[list[int]]:
        a, b, c, d, e, f = self.coeffs
        p = self.p
        h = (p + 1) // 2
        b2, c2, e2 = b * h % p, c * h % p, e * h % p
        return [[a, b2, c2], [b2, d, e2], [c2, e2, f]]

    def det(self) -> int:
        return det3(self.matrix(), self.p)

    def __call__(self, P: Sequence[int]) -> int:
        x, y, z = P
        a, b, c, d, e, f = self.coeffs
        return (a * x * x + b * x * y + c * x * z + d * y * y + e * y * z + f * z * z) % self.p

    def bilinear(self, P: Sequence[int], Q: Sequence[int]) -> int:
        M = self.matrix()
        return sum(P[i] * M[i][j] * Q[j] for i in range(3) for j in range(3)) % self.p

    def scale(self, k: int) -> Conic:
        return Conic([k * c for c in self.coeffs], self.field)

    def __add__(self, other: Conic) -> Conic:
        return Conic([u + v for u, v in zip(self.coeffs, other.coeffs)], self.field)

    def transform(self, M: Sequence[Sequence[int]]) -> Conic:
        """The conic with matrix M^T A M (substitute X = M X')."""
        p = self.p
        A = self.matrix()
        AM = [[sum(A[i][k] * M[k][j] for k in range(3)) % p for j in range(3)] for i in range(3)]
        N = [[sum(M[k][i] * AM[k][j] for k in range(3)) % p for j in range(3)] for i in range(3)]
        return Conic.from_matrix(N, self.field)

    def __eq__(self, other):
        # equality up to a nonzero scalar
        if not isinstance(other, Conic) or other.field != self.field:
            return NotImplemented
        p = self.p
        u, v = self.coeffs, other.coeffs
        return all((u[i] * v[j] - u[j] * v[i]) % p == 0 for i in range(6) for j in range(6)) and (
            any(u) == any(v)
        )

    def __hash__(self):
        for c in self.coeffs:
            if c:
                k = inv_mod(c, self.p)
                return hash((tuple(k * v % self.p for v in self.coeffs), self.p))
        return hash((self.coeffs, self.p))

    def __repr__(self):
        return f"Conic({self.format()} mod {self.p})"


def det3(M: Sequence[Sequence[int]], p: int) -> int:
    return (
        M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1])
        - M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0])
        + M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0])
    ) % p


def is_smooth(C: Conic) -> bool:
    return C.det() != 0


def _char_cubic_coeffs(A: Conic, B: Conic) -> list[int]:
    p = A.p
    MA, MB = A.matrix(), B.matrix()
    E = [[[MB[i][j], MA[i][j]] for j in range(3)] for i in range(3)]

    def m(u, v):
        return _mul(u, v, p)

    def s(u, v):
        return _add(u, _scale(v, -1, p), p)

    t0 = m(E[0][0], s(m(E[1][1], E[2][2]), m(E[1][2], E[2][1])))
    t1 = m(E[0][1], s(m(E[1][0], E[2][2]), m(E[1][2], E[2][0])))
    t2 = m(E[0][2], s(m(E[1][0], E[2][1]), m(E[1][1], E[2][0])))
    return _add(s(t0, t1), t2, p)


def char_cubic(A: Conic, B: Conic) -> Poly:
    """det(xA + B) as a polynomial in x."""
    if A.field != B.field:
        raise InvalidInput("conics over different fields")
    return Poly(_char_cubic_coeffs(A, B), A.field)


def cubic_discriminant(c: Sequence[int], p: int) -> int:
    """Discriminant of c[3] x^3 + c[2] x^2 + c[1] x + c[0]."""
    c = list(c) + [0] * (4 - len(c))
    d, cc, b, a = c[0], c[1], c[2], c[3]
    return (
        b * b * cc * cc - 4 * a * cc ** 3 - 4 * b ** 3 * d - 27 * a * a * d * d + 18 * a * b * cc * d
    ) % p


def is_transversal(A: Conic, B: Conic) -> bool:
    """True iff the pencil spanned by A and B has four distinct base points."""
    if not is_smooth(A) or not is_smooth(B):
        raise InvalidInput("transversality is only defined for smooth conics")
    c = _char_cubic_coeffs(A, B)
    return len(c) == 4 and cubic_discriminant(c, A.p) != 0


def rational_point(C: Conic) -> Point:
    """First point of C in the scan (1:0:0), (0:1:0), (0:0:1), then (x:y:1).

    Affine points are visited with x increasing; for each x the smaller
    root y of the resulting quadratic is taken.
    """
    p = C.p
    for P in ((1, 0, 0), (0, 1, 0), (0, 0, 1)):
        if C(P) == 0:
            return P
    a, b, c, d, e, f = C.coeffs
    for x in range(p):
        lin = (b * x + e) % p
        const = (a * x * x + c * x + f) % p
        if d:
            disc = (lin * lin - 4 * d * const) % p
            r = sqrt_mod(disc, p)
            if r is None:
                continue
            k = inv_mod(2 * d, p)
            ys = ((-lin + r) * k % p, (-lin - r) * k % p)
            return (x, min(ys), 1)
        if lin:
            return (x, (-const) * inv_mod(lin, p) % p, 1)
        if const == 0:
            return (x, 0, 1)
    raise InvalidInput("conic has no rational point")  # only for degenerate input


def _pullback_quartic(A: Conic, B: Conic) -> list[int]:
    """B restricted to the rational parametrization of A, in t = u0/u1."""
    p = A.p
    P0 = rational_point(A)
    i = next(k for k in range(3) if P0[k])
    Q0, Q1 = [tuple(int(k == j) for k in range(3)) for j in range(3) if j != i]
    MA = A.matrix()

    def form(M, U, V):
        # bilinear form with polynomial arguments (lists of coefficient lists)
        out: list[int] = []
        for r in range(3):
            for s in range(3):
                if M[r][s]:
                    out = _add(out, _scale(_mul(U[r], V[s], p), M[r][s], p), p)
        return out

    # Q(t) = t Q0 + Q1, coordinates as degree <= 1 polynomials in t
    Q = [_trim([Q1[k], Q0[k]]) for k in range(3)]
    P = [_trim([P0[k]]) for k in range(3)]
    aqq = form(MA, Q, Q)
    apq = form(MA, P, Q)
    R = [_add(_mul(aqq, P[k], p), _scale(_mul(apq, Q[k], p), -2, p), p) for k in range(3)]
    return form(B.matrix(), R, R)


def intersection_type(A: Conic, B: Conic) -> IntersectionType:
    if not is_transversal(A, B):
        raise InvalidInput("conics do not meet transversally")
    p = A.p
    quart = _pullback_quartic(A, B)
    deg = len(quart) - 1
    if deg < 3 or len(_gcd(quart, _deriv(quart, p), p)) > 1:
        raise InvalidInput("pulled-back quartic is not squarefree")
    parts = _factor_degrees_sqf(quart, p)
    if deg == 3:
        parts = parts + [1]
    return IntersectionType.parse(parts)
