"""Family censuses of torsion roots and Poncelet counts in canonical pencils.

``family_sum`` adds up r(n, lambda0) over the good fibres of a one-parameter
family of elliptic curves.  ``pencil_ngon_count`` counts ordered Poncelet
pairs in a canonical pencil directly through Cayley's criterion.  For the
split pencil and the Legendre family the two agree (after removing the
2-torsion for even n), and ``bridge_check`` tests exactly that.
"""

from __future__ import annotations

import enum
import csv
import io
import json
import math
import time
from dataclasses import dataclass, field as dc_field
from decimal import ROUND_HALF_UP, Decimal
from fractions import Fraction
from typing import Callable, Iterable

import numpy as np

from . import _batch
from .cayley import pencil_cayley_count
from .conics import ALL_TYPES, IntersectionType
from .elliptic import Curve, r_count
from .errors import BadReduction, InvalidInput, UnsupportedCharacteristic
from .field import PrimeField, is_prime, smallest_nonresidue
from .pencils import canonical_pencil, pencil_census, smooth_pair_count
from .poly import _gcd, _sub, _trim

CHUNK = 1024


class FamilyKind(enum.Enum):
    LEGENDRE = "legendre"
    QUADRATIC = "quadratic"

    @classmethod
    def parse(cls, text) -> FamilyKind:
        if isinstance(text, FamilyKind):
            return text
        key = str(text).strip().lower()
        aliases = {"quadratic-twist": "quadratic", "twist": "quadratic", "quadratictwistfamily": "quadratic"}
        key = aliases.get(key, key)
        for k in cls:
            if k.value == key:
                return k
        raise InvalidInput(f"unknown family {text!r}")


def good_parameters(kind, p: int) -> list[int]:
    kind = FamilyKind.parse(kind)
    if kind is FamilyKind.LEGENDRE:
        return list(range(2, p))
    return list(range(p))


def _family_coeffs(kind: FamilyKind, lam: int, p: int) -> tuple[int, int, int]:
    if kind is FamilyKind.LEGENDRE:
        return (-(1 + lam)) % p, lam % p, 0
    b = smallest_nonresidue(p)
    return (-lam) % p, (-b) % p, b * lam % p


def family_curve(kind, lambda0, field: PrimeField) -> Curve:
    """y^2 = x(x-1)(x-l) for Legendre, y^2 = (x-l)(x^2-b) for the quadratic family."""
    kind = FamilyKind.parse(kind)
    lam = int(lambda0) % field.p
    if kind is FamilyKind.LEGENDRE and lam in (0, 1):
        raise BadReduction(f"Legendre curve is singular at lambda = {lam}")
    return Curve(*_family_coeffs(kind, lam, field.p), field)


def _check_domain(p: int, n: int) -> None:
    if p <= 3 or not is_prime(p):
        raise InvalidInput(f"p must be a prime > 3, got {p}")
    if n < 2:
        raise InvalidInput("n must be at least 2")
    if math.gcd(n, p) != 1:
        raise UnsupportedCharacteristic(f"gcd(n, p) = gcd({n}, {p}) != 1")


def _root_counts_batch(kind: FamilyKind, lams: list[int], p: int, n: int) -> list[int]:
    f = np.array([list(_family_coeffs(kind, lam, p)[::-1]) + [1] for lam in lams], dtype=np.int64)
    # rows are (a6, a4, a2, 1)
    L = _batch.bmonic(_batch.blambda(n, f, p), p)
    h = _batch.bfrobenius(L, p)
    h[:, 1] = (h[:, 1] - 1) % p
    out = []
    for Lrow, hrow in zip(L.tolist(), h.tolist()):
        g = _gcd(Lrow, _trim(hrow), p)
        out.append(len(g) - 1)
    return out


def family_r_values(
    kind,
    p: int,
    n: int,
    lambdas: Iterable[int] | None = None,
    progress: Callable[[int, int], None] | None = None,
) -> list[tuple[int, int]]:
    """(lambda0, r(n, lambda0)) for the given (default: all good) parameters."""
    kind = FamilyKind.parse(kind)
    _check_domain(p, n)
    lams = good_parameters(kind, p) if lambdas is None else [int(v) % p for v in lambdas]
    out: list[tuple[int, int]] = []
    if not _batch.supported(p):
        field = PrimeField(p)
        for i, lam in enumerate(lams):
            out.append((lam, r_count(family_curve(kind, lam, field), n)))
            if progress:
                progress(i + 1, len(lams))
        return out
    for start in range(0, len(lams), CHUNK):
        chunk = lams[start:start + CHUNK]
        out.extend(zip(chunk, _root_counts_batch(kind, chunk, p, n)))
        if progress:
            progress(start + len(chunk), len(lams))
    return out


def render_ratio(total: int, p: int, places: int = 5) -> str:
    """total / p rounded half-up to the given number of decimals."""
    q = Decimal(1).scaleb(-places)
    return str((Decimal(total) / Decimal(p)).quantize(q, rounding=ROUND_HALF_UP))


@dataclass
class CensusReport:
    p: int
    n: int
    family: str
    total: int
    ratio: str
    expected: int | str | None = None
    elapsed_ms: int | None = None
    breakdown: list[tuple[int, int]] | None = dc_field(default=None, compare=False)

    FIELDS = ("p", "n", "family", "total", "ratio", "expected", "elapsed_ms")

    def as_dict(self) -> dict:
        return {k: getattr(self, k) for k in self.FIELDS}

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=False)

    @classmethod
    def from_json(cls, text: str) -> CensusReport:
        d = json.loads(text)
        return cls(**{k: d.get(k) for k in cls.FIELDS})

    @classmethod
    def csv_header(cls) -> str:
        return ",".join(cls.FIELDS)

    def to_csv_row(self) -> str:
        buf = io.StringIO()
        csv.writer(buf, lineterminator="").writerow(
            ["" if v is None else v for v in self.as_dict().values()]
        )
        return buf.getvalue()

    @classmethod
    def from_csv_row(cls, row: str) -> CensusReport:
        vals = next(csv.reader([row]))
        d = dict(zip(cls.FIELDS, vals))
        exp = d["expected"]
        return cls(
            p=int(d["p"]),
            n=int(d["n"]),
            family=d["family"],
            total=int(d["total"]),
            ratio=d["ratio"],
            expected=None if exp == "" else (int(exp) if exp.lstrip("-").isdigit() else exp),
            elapsed_ms=None if d["elapsed_ms"] == "" else int(d["elapsed_ms"]),
        )

    def breakdown_csv(self) -> str:
        lines = ["lambda0,r"]
        for lam, r in self.breakdown or []:
            lines.append(f"{lam},{r}")
        return "\n".join(lines) + "\n"


def family_sum(
    kind,
    p: int,
    n: int,
    shards: int = 1,
    breakdown: bool = False,
    timing: bool = False,
    progress: Callable[[int, int], None] | None = None,
) -> CensusReport:
    """Sum of r(n, lambda0) over the good fibres of the family.

    With ``shards > 1`` the parameter list is split round-robin by index and
    the shards are evaluated one after another; totals do not depend on k.
    """
    kind = FamilyKind.parse(kind)
    _check_domain(p, n)
    if shards < 1:
        raise InvalidInput("shards must be positive")
    t0 = time.perf_counter()
    lams = good_parameters(kind, p)
    rows: list[tuple[int, int]] = []
    for k in range(shards):
        rows.extend(family_r_values(kind, p, n, lams[k::shards], progress=progress))
    rows.sort()
    total = sum(r for _, r in rows)
    exp = expected_total(n, p, kind)
    return CensusReport(
        p=p,
        n=n,
        family=kind.value,
        total=total,
        ratio=render_ratio(total, p),
        expected=_render_expected(exp),
        elapsed_ms=round((time.perf_counter() - t0) * 1000) if timing else None,
        breakdown=rows if breakdown else None,
    )


def _render_expected(v):
    if v is None or isinstance(v, int):
        return v
    if isinstance(v, Fraction) and v.denominator == 1:
        return int(v)
    return str(v)


def divisor_counts(n: int) -> tuple[int, int]:
    """(d(n), d'(n)): all divisors, and divisors other than 1 and 2."""
    if n < 1:
        raise InvalidInput("n must be positive")
    divs = [k for k in range(1, n + 1) if n % k == 0]
    return len(divs), sum(1 for k in divs if k > 2)


def _power_of_two(n: int) -> int | None:
    if n >= 2 and n & (n - 1) == 0:
        return n.bit_length() - 1
    return None


def smooth_pair_total(q: int) -> int:
    """Ordered smooth transversal pairs over all pencils: sum of census x pairs."""
    return sum(pencil_census(t, q) * smooth_pair_count(t, q) for t in ALL_TYPES)


_TWO_TORSION = {
    IntersectionType.SPLIT: 3,
    IntersectionType.TWO_PAIRS: 3,
    IntersectionType.ONE_PAIR: 1,
    IntersectionType.QUARTET: 1,
    IntersectionType.TRIPLE: 0,
}


def expected_total(n: int, q: int, label="legendre"):
    """Main term of the count, without its error term.

    ``label`` is a family (a sum of r(n)), an intersection type (ordered
    Poncelet pairs in one pencil, 2-torsion removed), or ``"global"`` (all
    ordered smooth pairs in the plane, as a Fraction).  Returns None where no
    main term is known: even n that is not a power of 2.
    """
    d, dp = divisor_counts(n)
    if label == "global":
        return Fraction(dp, q) * smooth_pair_total(q)
    if n % 2:
        return (d - 1) * q
    m = _power_of_two(n)
    if m is None:
        return None
    try:
        kind = FamilyKind.parse(label)
    except InvalidInput:
        kind = None
    if kind is FamilyKind.LEGENDRE:
        return 3 * m * q
    if kind is FamilyKind.QUADRATIC:
        return m * q
    t = IntersectionType.parse(label)
    return _TWO_TORSION[t] * (m - 1) * q


def pencil_ngon_count(itype, q: int, n: int, shards: int = 1) -> int:
    """Ordered pairs (r, s), r != s, of smooth members with f_n = 0."""
    if q <= 3 or not is_prime(q):
        raise InvalidInput(f"q must be a prime > 3, got {q}")
    if n < 3:
        raise InvalidInput("n must be at least 3")
    P = canonical_pencil(itype, PrimeField(q))
    return sum(pencil_cayley_count(P, n, k, shards) for k in range(shards))


def bridge_sides(q: int, n: int) -> tuple[int, int, int]:
    """(split-pencil count, (2,2)-pencil count, Legendre torsion sum).

    For even n the torsion sum is taken over r(n) - r(2), i.e. with the
    2-torsion x-coordinates removed.
    """
    _check_domain(q, n)
    a = pencil_ngon_count(IntersectionType.SPLIT, q, n)
    b = pencil_ngon_count(IntersectionType.TWO_PAIRS, q, n)
    rows = family_r_values(FamilyKind.LEGENDRE, q, n)
    total = sum(r for _, r in rows)
    if n % 2 == 0:
        total -= sum(r for _, r in family_r_values(FamilyKind.LEGENDRE, q, 2))
    return a, b, total


def bridge_check(q: int, n: int) -> bool:
    a, b, total = bridge_sides(q, n)
    return a == b == total


def triangle_prediction(itype, q: int) -> int:
    t = IntersectionType.parse(itype)
    return {
        IntersectionType.SPLIT: q - 5,
        IntersectionType.ONE_PAIR: q - 1,
        IntersectionType.TWO_PAIRS: q - 5,
        IntersectionType.TRIPLE: q + 1,
        IntersectionType.QUARTET: q - 1,
    }[t]


def gamma3_exact(q: int) -> tuple[int, Fraction]:
    """Ordered smooth pairs admitting a Poncelet triangle, and their density."""
    if q <= 3 or not is_prime(q):
        raise InvalidInput(f"q must be a prime > 3, got {q}")
    count = (q ** 5 - q ** 2) * (q + 1) * q * (q - 1) ** 2
    return count, Fraction(q - 1, q * q - q + 1)


def gamma3_from_pencils(q: int) -> tuple[int, Fraction]:
    """The same two quantities summed pencil type by pencil type."""
    count = sum(pencil_census(t, q) * triangle_prediction(t, q) for t in ALL_TYPES)
    return count, Fraction(count, smooth_pair_total(q))
