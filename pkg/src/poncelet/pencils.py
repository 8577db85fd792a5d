"""Pencils of conics rF + G and the five canonical transversal pencils.

Members are indexed by P^1(F_p): a finite r gives rF + G and the point at
infinity gives F itself.  Internally a parameter is the vector (u, v) with
member uF + vG, so r corresponds to (r, 1) and infinity to (1, 0).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .conics import Conic, IntersectionType, intersection_type, is_transversal, _char_cubic_coeffs
from .errors import InvalidInput
from .field import PrimeField, is_prime, legendre_mod, smallest_nonresidue
from .poly import _count_roots, _roots


@dataclass(frozen=True, order=True)
class PencilParam:
    """A point of P^1(F_p); ``r is None`` stands for infinity."""

    r: int | None

    @property
    def is_infinite(self) -> bool:
        return self.r is None

    def vector(self) -> tuple[int, int]:
        return (1, 0) if self.r is None else (self.r, 1)

    def __str__(self):
        return "inf" if self.r is None else str(self.r)


INFINITY = PencilParam(None)


class Pencil:
    """The pencil spanned by F and G, with a cached intersection type."""

    def __init__(self, F: Conic, G: Conic, itype: IntersectionType | None = None, parameters=None):
        if F.field != G.field:
            raise InvalidInput("generators over different fields")
        self.F = F
        self.G = G
        self.field = F.field
        p = self.field.p
        # det(xF + G) = c3 x^3 + c2 x^2 + c1 x + c0, i.e. det(uF + vG) as a binary cubic
        c = _char_cubic_coeffs(F, G)
        self.cubic = tuple(c + [0] * (4 - len(c)))
        smooth = self.smooth_members()
        if len(smooth) < 2:
            raise InvalidInput("pencil has fewer than two smooth members")
        A, B = self.member(smooth[0]), self.member(smooth[1])
        if not is_transversal(A, B):
            raise InvalidInput("pencil base points are not distinct")
        found = intersection_type(A, B)
        if itype is not None and IntersectionType.parse(itype) != found:
            raise InvalidInput(f"generators have type {found}, not {itype}")
        self.itype = found
        self.parameters = dict(parameters or {})

    @property
    def p(self) -> int:
        return self.field.p

    def member(self, t: PencilParam | int | None) -> Conic:
        if not isinstance(t, PencilParam):
            t = PencilParam(None if t is None else int(t) % self.p)
        if t.r is None:
            return self.F
        return self.F.scale(t.r) + self.G

    def det_at(self, t: PencilParam) -> int:
        u, v = t.vector()
        c0, c1, c2, c3 = self.cubic
        return (c3 * u ** 3 + c2 * u * u * v + c1 * u * v * v + c0 * v ** 3) % self.p

    def params(self) -> Iterator[PencilParam]:
        """Finite parameters 0..p-1, then infinity."""
        for r in range(self.p):
            yield PencilParam(r)
        yield INFINITY

    def smooth_members(self) -> list[PencilParam]:
        sing = singular_members(self)
        return [t for t in self.params() if t not in sing]

    def __repr__(self):
        return f"Pencil({self.itype}, F={self.F.format()}, G={self.G.format()}, p={self.p})"


def singular_members(P: Pencil) -> set[PencilParam]:
    p = P.p
    c = list(P.cubic)
    while c and c[-1] == 0:
        c.pop()
    out = {PencilParam(r) for r in _roots(c, p)} if len(c) > 1 else set()
    if not c:
        raise InvalidInput("every member of the pencil is singular")
    if P.cubic[3] == 0:
        out.add(INFINITY)
    return out


def _quad_irreducible(e: int, p: int) -> bool:
    # T^2 + T + e irreducible iff 1 - 4e is a non-residue
    return legendre_mod(1 - 4 * e, p) == -1


def _try(F: Conic, G: Conic, itype: IntersectionType, **params) -> Pencil | None:
    try:
        return Pencil(F, G, itype, params)
    except InvalidInput:
        return None


def canonical_pencil(itype, field: PrimeField) -> Pencil:
    """Generators of the given type; free parameters are the first hit of a
    smallest-first (lexicographic) scan."""
    itype = IntersectionType.parse(itype)
    p = field.p
    T = IntersectionType
    xy = Conic([0, 1, 0, 0, 0, 0], field)
    if itype is T.SPLIT:
        return Pencil(xy, Conic([0, 0, 1, 0, 1, 1], field), itype)
    if itype is T.ONE_PAIR:
        for e in range(p):
            if _quad_irreducible(e, p):
                P = _try(xy, Conic([0, 0, 1, 1, 1, e], field), itype, e=e)
                if P:
                    return P
    if itype is T.TWO_PAIRS:
        for e1 in range(p):
            if not _quad_irreducible(e1, p):
                continue
            for e2 in range(p):
                if _quad_irreducible(e2, p):
                    P = _try(xy, Conic([e1, 0, 1, e2, 1, 1], field), itype, e1=e1, e2=e2)
                    if P:
                        return P
    if itype is T.QUARTET:
        a = smallest_nonresidue(p)
        F = Conic([1, 0, 0, -a, 0, 0], field)
        for b in range(p):
            for c in range(p):
                if legendre_mod(b * b - 4 * a * c * c, p) == -1:
                    P = _try(F, Conic([0, 2 * c, 0, -b, 0, 1], field), itype, a=a, b=b, c=c)
                    if P:
                        return P
    if itype is T.TRIPLE:
        F = Conic([0, 0, -1, 1, 0, 0], field)
        for b in range(p):
            for c in range(p):
                if _count_roots([1, c, b, 1], p) == 0:
                    P = _try(F, Conic([1, c, 0, b, 1, 0], field), itype, b=b, c=c)
                    if P:
                        return P
    raise InvalidInput(f"no canonical pencil of type {itype} over F_{p}")  # pragma: no cover


_CENSUS_FRACTION = {
    IntersectionType.SPLIT: Fraction(1, 24),
    IntersectionType.ONE_PAIR: Fraction(1, 4),
    IntersectionType.TWO_PAIRS: Fraction(1, 8),
    IntersectionType.TRIPLE: Fraction(1, 3),
    IntersectionType.QUARTET: Fraction(1, 4),
}


def _check_q(q: int) -> None:
    if q <= 3 or not is_prime(q):
        raise InvalidInput(f"q must be a prime > 3, got {q}")


def transversal_pencil_total(q: int) -> int:
    """Number of pencils with four distinct base points: q^8 - q^6 - q^5 + q^3."""
    return q ** 8 - q ** 6 - q ** 5 + q ** 3


def census_fraction(itype) -> Fraction:
    return _CENSUS_FRACTION[IntersectionType.parse(itype)]


def pencil_census(itype, q: int) -> int:
    """Number of pencils of the given intersection type in P^2(F_q)."""
    _check_q(q)
    n = census_fraction(itype) * transversal_pencil_total(q)
    assert n.denominator == 1
    return int(n)


_SINGULAR_COUNT = {
    IntersectionType.SPLIT: 3,
    IntersectionType.ONE_PAIR: 1,
    IntersectionType.TWO_PAIRS: 3,
    IntersectionType.TRIPLE: 0,
    IntersectionType.QUARTET: 1,
}


def smooth_pair_count(itype, q: int) -> int:
    """Ordered pairs of distinct smooth members in one pencil of this type."""
    _check_q(q)
    m = q + 1 - _SINGULAR_COUNT[IntersectionType.parse(itype)]
    return m * (m - 1)
