"""Prime fields F_p (p > 3) and a quadratic extension used by point oracles.

Elements are immutable.  Arithmetic between an element and a plain ``int``
coerces the integer into the element's field; mixing elements of two
different fields raises :class:`FieldMismatch`.

The hot loops elsewhere in the package work on raw residues (``int`` or
numpy ``int64``); the integer helpers :func:`inv_mod`, :func:`legendre_mod`
and :func:`sqrt_mod` are shared by both layers.
"""

from __future__ import annotations

import functools
from typing import Iterator

from .errors import DivisionByZero, FieldMismatch, InvalidInput

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for n < 3.3e24."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def inv_mod(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise DivisionByZero(f"0 has no inverse mod {p}")
    return pow(a, p - 2, p)


def legendre_mod(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


@functools.lru_cache(maxsize=None)
def smallest_nonresidue(p: int) -> int:
    """Smallest quadratic non-residue mod p, found by scanning 2, 3, 4, ..."""
    a = 2
    while legendre_mod(a, p) != -1:
        a += 1
    return a


def sqrt_mod(a: int, p: int) -> int | None:
    """Tonelli-Shanks square root; the smaller of the two roots, or None."""
    a %= p
    if a == 0:
        return 0
    if legendre_mod(a, p) != 1:
        return None
    if p % 4 == 3:
        r = pow(a, (p + 1) // 4, p)
    else:
        q, s = p - 1, 0
        while q % 2 == 0:
            q //= 2
            s += 1
        z = smallest_nonresidue(p)
        m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
        while t != 1:
            i, t2 = 0, t
            while t2 != 1:
                t2 = t2 * t2 % p
                i += 1
            b = pow(c, 1 << (m - i - 1), p)
            m, c = i, b * b % p
            t, r = t * c % p, r * b % p
    return min(r, p - r)


class PrimeField:
    """The field F_p for a prime p > 3."""

    __slots__ = ("p",)

    def __init__(self, p: int):
        p = int(p)
        if p <= 3:
            raise InvalidInput(f"characteristic must exceed 3, got {p}")
        if not is_prime(p):
            raise InvalidInput(f"{p} is not prime")
        self.p = p

    def __call__(self, value) -> FieldElement:
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldMismatch(f"element of F_{value.field.p} used in F_{self.p}")
            return value
        return FieldElement(int(value) % self.p, self)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("F", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"

    @property
    def zero(self) -> FieldElement:
        return FieldElement(0, self)

    @property
    def one(self) -> FieldElement:
        return FieldElement(1, self)

    @property
    def nonresidue(self) -> int:
        return smallest_nonresidue(self.p)

    def elements(self) -> Iterator[FieldElement]:
        for v in range(self.p):
            yield FieldElement(v, self)


class FieldElement:
    """A canonical residue in [0, p) tied to its field."""

    __slots__ = ("value", "field")

    def __init__(self, value: int, field: PrimeField):
        object.__setattr__(self, "value", value % field.p)
        object.__setattr__(self, "field", field)

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement is immutable")

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field.p != self.field.p:
                raise FieldMismatch(f"cannot combine F_{self.field.p} and F_{other.field.p}")
            return other.value
        if isinstance(other, int):
            return other % self.field.p
        return NotImplemented

    def _new(self, v: int) -> FieldElement:
        return FieldElement(v, self.field)

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self._new(self.value + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self._new(self.value - o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self._new(o - self.value)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self._new(self.value * o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self._new(self.value * inv_mod(o, self.field.p))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self._new(o * inv_mod(self.value, self.field.p))

    def __neg__(self):
        return self._new(-self.value)

    def __pow__(self, e: int):
        if e < 0:
            return self.inv() ** (-e)
        return self._new(pow(self.value, e, self.field.p))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field.p == other.field.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.field.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.field.p))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __index__(self):
        return self.value

    def __repr__(self):
        return f"{self.value} (mod {self.field.p})"

    def inv(self) -> FieldElement:
        return self._new(inv_mod(self.value, self.field.p))

    def legendre(self) -> int:
        return legendre_mod(self.value, self.field.p)

    def sqrt(self) -> FieldElement | None:
        r = sqrt_mod(self.value, self.field.p)
        return None if r is None else self._new(r)


def inv(x: FieldElement) -> FieldElement:
    """Multiplicative inverse; raises DivisionByZero on 0."""
    return x.inv()


def legendre_symbol(x: FieldElement) -> int:
    """0 for zero, 1 for a nonzero square, -1 otherwise."""
    return x.legendre()


def sqrt(x: FieldElement) -> FieldElement | None:
    """Smaller square root in [0, p), or None for a non-residue."""
    return x.sqrt()


class QuadraticExtension:
    """F_p[t]/(t^2 - d) for the smallest non-residue d."""

    __slots__ = ("base", "d")

    def __init__(self, base: PrimeField):
        self.base = base
        self.d = base.nonresidue

    @property
    def p(self) -> int:
        return self.base.p

    def __call__(self, a, b=0) -> QuadExtElement:
        return QuadExtElement(int(a), int(b), self)

    def __eq__(self, other):
        return isinstance(other, QuadraticExtension) and other.base == self.base

    def __hash__(self):
        return hash(("F2", self.base.p))

    def __repr__(self):
        return f"QuadraticExtension(F_{self.p}, t^2 = {self.d})"

    def sqrt_of_base(self, a) -> QuadExtElement:
        """A square root in this extension of an element of the base field."""
        a = int(a) % self.p
        r = sqrt_mod(a, self.p)
        if r is not None:
            return QuadExtElement(r, 0, self)
        # a = d * (a/d) and a/d is a residue
        r = sqrt_mod(a * inv_mod(self.d, self.p), self.p)
        return QuadExtElement(0, r, self)


class QuadExtElement:
    """a + b*t with t^2 = d."""

    __slots__ = ("a", "b", "ext")

    def __init__(self, a: int, b: int, ext: QuadraticExtension):
        p = ext.p
        object.__setattr__(self, "a", a % p)
        object.__setattr__(self, "b", b % p)
        object.__setattr__(self, "ext", ext)

    def __setattr__(self, name, value):
        raise AttributeError("QuadExtElement is immutable")

    def _coerce(self, other):
        if isinstance(other, QuadExtElement):
            if other.ext != self.ext:
                raise FieldMismatch("elements of different extensions")
            return other.a, other.b
        if isinstance(other, FieldElement):
            if other.field != self.ext.base:
                raise FieldMismatch("base field mismatch")
            return other.value, 0
        if isinstance(other, int):
            return other, 0
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return QuadExtElement(self.a + o[0], self.b + o[1], self.ext)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return QuadExtElement(self.a - o[0], self.b - o[1], self.ext)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return QuadExtElement(o[0] - self.a, o[1] - self.b, self.ext)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        c, e = o
        d = self.ext.d
        return QuadExtElement(self.a * c + d * self.b * e, self.a * e + self.b * c, self.ext)

    __rmul__ = __mul__

    def norm(self) -> int:
        p = self.ext.p
        return (self.a * self.a - self.ext.d * self.b * self.b) % p

    def conjugate(self) -> QuadExtElement:
        return QuadExtElement(self.a, -self.b, self.ext)

    def inv(self) -> QuadExtElement:
        n = self.norm()
        if n == 0:
            raise DivisionByZero("0 has no inverse")
        ni = inv_mod(n, self.ext.p)
        return QuadExtElement(self.a * ni, -self.b * ni, self.ext)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * QuadExtElement(o[0], o[1], self.ext).inv()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return QuadExtElement(o[0], o[1], self.ext) * self.inv()

    def __neg__(self):
        return QuadExtElement(-self.a, -self.b, self.ext)

    def __pow__(self, e: int):
        if e < 0:
            return self.inv() ** (-e)
        result = QuadExtElement(1, 0, self.ext)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        try:
            o = self._coerce(other)
        except FieldMismatch:
            return False
        if o is NotImplemented:
            return NotImplemented
        p = self.ext.p
        return self.a == o[0] % p and self.b == o[1] % p

    def __hash__(self):
        return hash((self.a, self.b, self.ext.p))

    def __bool__(self):
        return bool(self.a or self.b)

    def is_base(self) -> bool:
        return self.b == 0

    def __repr__(self):
        return f"({self.a} + {self.b}t mod {self.ext.p})"
