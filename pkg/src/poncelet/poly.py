"""Dense univariate polynomials over F_p and truncated power series.

Two layers live here.  The underscore functions operate on plain lists of
residues, lowest degree first, with no trailing zeros (``[]`` is the zero
polynomial); they are what the census loops call.  :class:`Poly` and
:class:`TruncatedSeries` wrap them with a field reference for the public API.

Roots are always counted without multiplicity: ``count_roots(f)`` is the
degree of ``gcd(x^p - x, f)``.
"""

from __future__ import annotations

import random
from collections import Counter
from typing import Iterable, Sequence

from .errors import FieldMismatch, InvalidInput
from .field import FieldElement, PrimeField, QuadExtElement, inv_mod


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _add(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, v in enumerate(b):
        out[i] = (out[i] + v) % p
    return _trim(out)


def _sub(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    out = [0] * n
    for i, v in enumerate(a):
        out[i] = v
    for i, v in enumerate(b):
        out[i] = (out[i] - v) % p
    return _trim(out)


def _scale(a: Sequence[int], c: int, p: int) -> list[int]:
    c %= p
    if c == 0:
        return []
    return [v * c % p for v in a]


def _mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    if len(a) < len(b):
        a, b = b, a
    out = [0] * (len(a) + len(b) - 1)
    for j, bj in enumerate(b):
        if bj:
            for i, ai in enumerate(a):
                out[i + j] += ai * bj
    return _trim([v % p for v in out])


def _divmod(a: Sequence[int], b: Sequence[int], p: int) -> tuple[list[int], list[int]]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    db = len(b) - 1
    if len(r) - 1 < db:
        return [], _trim(r)
    lead_inv = inv_mod(b[-1], p)
    q = [0] * (len(r) - db)
    for k in range(len(r) - 1 - db, -1, -1):
        c = r[k + db] % p * lead_inv % p
        q[k] = c
        if c:
            for i in range(db + 1):
                r[k + i] = (r[k + i] - c * b[i]) % p
    return _trim(q), _trim(r[:db])


def _rem(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    return _divmod(a, b, p)[1]


def _monic(a: Sequence[int], p: int) -> list[int]:
    if not a:
        return []
    return _scale(a, inv_mod(a[-1], p), p)


def _gcd(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a, b = list(a), list(b)
    while b:
        a, b = b, _rem(a, b, p)
    return _monic(a, p)


def _deriv(a: Sequence[int], p: int) -> list[int]:
    return _trim([i * a[i] % p for i in range(1, len(a))])


def _eval(a: Sequence[int], x: int, p: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % p
    return acc


def _powmod(base: Sequence[int], e: int, f: Sequence[int], p: int) -> list[int]:
    result = [1] if len(f) > 1 else []
    b = _rem(base, f, p)
    while e:
        if e & 1:
            result = _rem(_mul(result, b, p), f, p)
        e >>= 1
        if e:
            b = _rem(_mul(b, b, p), f, p)
    return result


def _mulx_mod(a: Sequence[int], f: Sequence[int], p: int) -> list[int]:
    # a * x mod f for deg a < deg f, f monic
    d = len(f) - 1
    out = [0] + list(a)
    if len(out) - 1 == d:
        c = out[d]
        out = [(out[i] - c * f[i]) % p for i in range(d)]
    return _trim(out)


def _frobenius(f: Sequence[int], p: int, e: int | None = None) -> list[int]:
    """x^e mod f (default e = p) by left-to-right square-and-multiply."""
    f = _monic(f, p)
    if e is None:
        e = p
    result = [1] if len(f) > 1 else []
    for bit in bin(e)[2:]:
        result = _rem(_mul(result, result, p), f, p)
        if bit == "1":
            result = _mulx_mod(result, f, p)
    return result


def _count_roots(f: Sequence[int], p: int) -> int:
    if len(f) <= 1:
        return 0
    h = _sub(_frobenius(f, p), [0, 1], p)
    return len(_gcd(f, h, p)) - 1


def _rational_part(f: Sequence[int], p: int) -> list[int]:
    """Monic product of the distinct linear factors of f."""
    if len(f) <= 1:
        return [1]
    h = _sub(_frobenius(f, p), [0, 1], p)
    return _gcd(f, h, p)


def _split_linear(g: list[int], p: int, rng: random.Random) -> list[int]:
    # g monic squarefree, product of distinct linear factors
    d = len(g) - 1
    if d == 0:
        return []
    if d == 1:
        return [(-g[0]) % p]
    if g[0] == 0:
        return [0] + _split_linear(_divmod(g, [0, 1], p)[0], p, rng)
    while True:
        a = rng.randrange(p)
        h = _powmod([a, 1], (p - 1) // 2, g, p)
        u = _gcd(g, _sub(h, [1], p), p)
        if 0 < len(u) - 1 < d:
            v = _divmod(g, u, p)[0]
            return _split_linear(u, p, rng) + _split_linear(_monic(v, p), p, rng)


def _roots(f: Sequence[int], p: int, seed: int = 0) -> list[int]:
    g = _rational_part(f, p)
    return sorted(_split_linear(g, p, random.Random(seed)))


def _factor_degrees_sqf(f: Sequence[int], p: int) -> list[int]:
    """Degrees of the irreducible factors of a squarefree f (distinct-degree)."""
    f = _monic(f, p)
    degrees: list[int] = []
    h = [0, 1]
    i = 0
    while len(f) - 1 >= 2 * (i + 1):
        i += 1
        h = _powmod(h, p, f, p)
        g = _gcd(f, _sub(h, [0, 1], p), p)
        dg = len(g) - 1
        if dg:
            degrees += [i] * (dg // i)
            f = _divmod(f, g, p)[0]
            h = _rem(h, f, p)
    if len(f) - 1 >= 1:
        degrees.append(len(f) - 1)
    return sorted(degrees, reverse=True)


class Poly:
    """A polynomial over F_p; ``coeffs`` holds residues, lowest degree first."""

    __slots__ = ("coeffs", "field")

    def __init__(self, coeffs: Iterable, field: PrimeField):
        p = field.p
        vals = []
        for c in coeffs:
            if isinstance(c, FieldElement):
                if c.field != field:
                    raise FieldMismatch("coefficient from another field")
                vals.append(c.value)
            else:
                vals.append(int(c) % p)
        object.__setattr__(self, "coeffs", tuple(_trim(vals)))
        object.__setattr__(self, "field", field)

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def x(cls, field: PrimeField) -> Poly:
        return cls([0, 1], field)

    @classmethod
    def constant(cls, c, field: PrimeField) -> Poly:
        return cls([c], field)

    @classmethod
    def from_roots(cls, roots: Iterable[int], field: PrimeField) -> Poly:
        p = field.p
        out = [1]
        for r in roots:
            out = _mul(out, [(-int(r)) % p, 1], p)
        return cls(out, field)

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def coefficients(self) -> tuple[FieldElement, ...]:
        return tuple(FieldElement(c, self.field) for c in self.coeffs)

    def leading(self) -> FieldElement:
        return FieldElement(self.coeffs[-1] if self.coeffs else 0, self.field)

    def _wrap(self, c: list[int]) -> Poly:
        return Poly(c, self.field)

    def _other(self, other) -> list[int]:
        if isinstance(other, Poly):
            if other.field != self.field:
                raise FieldMismatch("polynomials over different fields")
            return list(other.coeffs)
        if isinstance(other, (int, FieldElement)):
            return _trim([int(other) % self.p])
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self._wrap(_add(self.coeffs, o, self.p))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self._wrap(_sub(self.coeffs, o, self.p))

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self._wrap(_sub(o, self.coeffs, self.p))

    def __neg__(self):
        return self._wrap(_sub([], self.coeffs, self.p))

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self._wrap(_mul(self.coeffs, o, self.p))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        result = [1]
        base = list(self.coeffs)
        while e:
            if e & 1:
                result = _mul(result, base, self.p)
            base = _mul(base, base, self.p)
            e >>= 1
        return self._wrap(result)

    def __divmod__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        q, r = _divmod(self.coeffs, o, self.p)
        return self._wrap(q), self._wrap(r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.field == other.field and self.coeffs == other.coeffs
        if isinstance(other, (int, FieldElement)):
            return self.coeffs == tuple(_trim([int(other) % self.p]))
        return NotImplemented

    def __hash__(self):
        return hash((self.coeffs, self.p))

    def __call__(self, x):
        if isinstance(x, QuadExtElement):
            acc = x.ext(0)
            for c in reversed(self.coeffs):
                acc = acc * x + c
            return acc
        return FieldElement(_eval(self.coeffs, int(x), self.p), self.field)

    def monic(self) -> Poly:
        return self._wrap(_monic(self.coeffs, self.p))

    def derivative(self) -> Poly:
        return self._wrap(_deriv(self.coeffs, self.p))

    def is_squarefree(self) -> bool:
        if self.is_zero():
            return False
        return len(_gcd(self.coeffs, _deriv(self.coeffs, self.p), self.p)) == 1

    def __repr__(self):
        if not self.coeffs:
            return f"Poly(0 mod {self.p})"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            if mono and c == 1:
                terms.append(mono)
            else:
                terms.append(f"{c}{'*' if mono else ''}{mono}")
        return f"Poly({' + '.join(terms)} mod {self.p})"


def gcd(f: Poly, g: Poly) -> Poly:
    """Monic greatest common divisor."""
    if f.field != g.field:
        raise FieldMismatch("polynomials over different fields")
    if f.is_zero() and g.is_zero():
        raise InvalidInput("gcd(0, 0) is undefined")
    return Poly(_gcd(f.coeffs, g.coeffs, f.p), f.field)


def powmod_frobenius(f: Poly) -> Poly:
    """x^p mod f."""
    if f.degree < 1:
        raise InvalidInput("modulus must have degree >= 1")
    return Poly(_frobenius(f.coeffs, f.p), f.field)


def count_roots(f: Poly) -> int:
    """Number of distinct roots of f in F_p."""
    if f.is_zero():
        raise InvalidInput("the zero polynomial has every element as a root")
    return _count_roots(f.coeffs, f.p)


def roots(f: Poly, seed: int = 0) -> set[FieldElement]:
    """The distinct F_p-roots of f, by equal-degree splitting of gcd(x^p - x, f)."""
    if f.is_zero():
        raise InvalidInput("the zero polynomial has every element as a root")
    return {FieldElement(r, f.field) for r in _roots(f.coeffs, f.p, seed)}


def factor_degrees(f: Poly) -> list[int]:
    """Irreducible-factor degrees of a squarefree polynomial, largest first."""
    if f.degree < 1:
        raise InvalidInput("need a non-constant polynomial")
    if not f.is_squarefree():
        raise InvalidInput("polynomial is not squarefree")
    return _factor_degrees_sqf(f.coeffs, f.p)


def degree_partition(f: Poly) -> tuple[int, ...]:
    """Partition of 4 given by the factor degrees of a squarefree quartic."""
    if f.degree != 4:
        raise InvalidInput(f"expected a quartic, got degree {f.degree}")
    return tuple(factor_degrees(f))


def is_irreducible(f: Poly) -> bool:
    if f.degree < 1:
        return False
    if f.degree == 1:
        return True
    if not f.is_squarefree():
        return False
    return factor_degrees(f) == [f.degree]


# --- truncated power series -------------------------------------------------


def _series_mul(a: Sequence[int], b: Sequence[int], n: int, p: int) -> list[int]:
    out = [0] * n
    for i, ai in enumerate(a[:n]):
        if ai:
            for j in range(min(len(b), n - i)):
                out[i + j] += ai * b[j]
    return [v % p for v in out]


def _series_inv(a: Sequence[int], n: int, p: int) -> list[int]:
    # Newton: h <- h (2 - a h), doubling precision
    h = [inv_mod(a[0], p)]
    k = 1
    while k < n:
        k = min(2 * k, n)
        ah = _series_mul(a, h, k, p)
        corr = [(-v) % p for v in ah]
        corr[0] = (corr[0] + 2) % p
        h = _series_mul(h, corr, k, p)
    return h[:n]


def _series_sqrt(f: Sequence[int], n: int, p: int) -> list[int]:
    """Square root with g(0) = 1 of a series with f(0) = 1, mod x^n."""
    half = (p + 1) // 2
    f = list(f[:n]) + [0] * max(0, n - len(f))
    g = [1]
    k = 1
    while k < n:
        k = min(2 * k, n)
        q = _series_mul(f, _series_inv(g + [0] * (k - len(g)), k, p), k, p)
        g = [(gi + qi) * half % p for gi, qi in zip(g + [0] * (k - len(g)), q)]
    return g[:n]


class TruncatedSeries:
    """Coefficients of x^0 .. x^(N-1) over F_p."""

    __slots__ = ("coeffs", "field")

    def __init__(self, coeffs: Iterable, field: PrimeField, N: int | None = None):
        vals = [int(c) % field.p for c in coeffs]
        if N is None:
            N = len(vals)
        if len(vals) > N:
            vals = vals[:N]
        vals += [0] * (N - len(vals))
        object.__setattr__(self, "coeffs", tuple(vals))
        object.__setattr__(self, "field", field)

    def __setattr__(self, name, value):
        raise AttributeError("TruncatedSeries is immutable")

    @property
    def N(self) -> int:
        return len(self.coeffs)

    def __mul__(self, other: TruncatedSeries) -> TruncatedSeries:
        if other.field != self.field:
            raise FieldMismatch("series over different fields")
        n = min(self.N, other.N)
        return TruncatedSeries(_series_mul(self.coeffs, other.coeffs, n, self.field.p), self.field)

    def __eq__(self, other):
        return (
            isinstance(other, TruncatedSeries)
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.coeffs, self.field.p))

    def __repr__(self):
        return f"TruncatedSeries({list(self.coeffs)} mod {self.field.p})"


def series_sqrt(f: TruncatedSeries) -> TruncatedSeries:
    """Newton square root g of f with g(0) = 1; requires f(0) = 1."""
    if not f.coeffs or f.coeffs[0] != 1:
        raise InvalidInput("series square root needs constant term 1")
    return TruncatedSeries(_series_sqrt(f.coeffs, f.N, f.field.p), f.field)


def brute_force_roots(f: Poly) -> set[int]:
    """Roots of f by evaluating at every residue; for tests and tiny p."""
    return {x for x in range(f.p) if _eval(f.coeffs, x, f.p) == 0}


def brute_force_factor_degrees(f: Poly) -> Counter:
    """Factor degrees by trial division with all monic irreducibles of degree <= 2.

    Only meant for quartics over very small fields; degree-3/4 remainders
    are reported as a single factor.
    """
    p = f.p
    g = _monic(f.coeffs, p)
    out: Counter = Counter()
    for r in range(p):
        q, rem = _divmod(g, [(-r) % p, 1], p)
        if not rem:
            out[1] += 1
            g = q
    if len(g) - 1 >= 2:
        for b in range(p):
            for c in range(p):
                quad = [c, b, 1]
                if any(_eval(quad, x, p) == 0 for x in range(p)):
                    continue
                q, rem = _divmod(g, quad, p)
                if not rem:
                    out[2] += 1
                    g = q
    if len(g) - 1 >= 1:
        out[len(g) - 1] += 1
    return out
