"""Self-checks runnable from the command line (``poncelet verify SUITE``)."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .cayley import cayley_coeffs, hankel_f
from .census import (
    bridge_sides,
    family_sum,
    gamma3_exact,
    gamma3_from_pencils,
    pencil_ngon_count,
    triangle_prediction,
)
from .conics import ALL_TYPES, Conic, IntersectionType, is_smooth, is_transversal
from .field import PrimeField, is_prime
from .pencils import census_fraction

TABLE_N4 = {
    1487: "5.98991", 1489: "5.98993", 1493: "5.98995", 1499: "5.98999",
    1511: "5.99007", 1523: "5.99015", 1531: "5.99020", 1543: "5.99028",
}
TABLE_N8 = {
    1993: "8.97893", 1997: "8.98498", 1999: "8.98199", 2003: "8.98802",
    2011: "8.98807", 2017: "8.97918", 2027: "8.98816", 2029: "8.98521",
    2039: "8.98234", 2053: "8.98539", 2063: "8.98255", 2069: "8.98550",
}


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        return f"{'PASS' if self.ok else 'FAIL'}  {self.name}" + (f"  [{self.detail}]" if self.detail else "")


def primes_between(lo: int, hi: int) -> list[int]:
    return [q for q in range(lo, hi + 1) if is_prime(q)]


def suite_triangles(primes=None) -> list[Check]:
    primes = primes_between(7, 101) if primes is None else primes
    out = []
    for t in ALL_TYPES:
        bad = {}
        for q in primes:
            got = pencil_ngon_count(t, q, 3)
            if got != triangle_prediction(t, q):
                bad[q] = got
        out.append(Check(f"triangle pairs in pencil {t} for q in {primes[0]}..{primes[-1]}",
                         not bad, f"mismatches {bad}" if bad else f"{len(primes)} primes exact"))
    bad = [q for q in primes if gamma3_exact(q) != gamma3_from_pencils(q)]
    out.append(Check("global triangle count and density (exact rationals)", not bad,
                     f"mismatches at {bad}" if bad else ""))
    return out


def suite_tetragons(q: int = 101) -> list[Check]:
    out = []
    w = 6 * math.sqrt(q)
    bounds = {
        IntersectionType.SPLIT: (3 * q - w, 3 * q + w),
        IntersectionType.TWO_PAIRS: (3 * q - w, 3 * q + w),
        IntersectionType.ONE_PAIR: (q - w, q + w),
        IntersectionType.QUARTET: (q - w, q + w),
        IntersectionType.TRIPLE: (0, 9),
    }
    for t in ALL_TYPES:
        lo, hi = bounds[t]
        got = pencil_ngon_count(t, q, 4)
        out.append(Check(f"tetragon pairs in pencil {t} at q={q}", lo <= got <= hi,
                         f"count {got}, window [{lo:.1f}, {hi:.1f}]"))
    return out


def suite_bridge(cases=None) -> list[Check]:
    if cases is None:
        cases = [(31, 3), (31, 5)]
    out = []
    for q, n in cases:
        a, b, s = bridge_sides(q, n)
        out.append(Check(f"pencil counts equal Legendre torsion sum at q={q} n={n}",
                         a == b == s, f"(1,1,1,1)={a} (2,2)={b} sum={s}"))
    return out


def suite_tables(progress: Callable | None = None) -> list[Check]:
    out = []
    for n, table in ((4, TABLE_N4), (8, TABLE_N8)):
        for p, want in table.items():
            rep = family_sum("legendre", p, n, progress=progress)
            out.append(Check(f"Legendre root-sum ratio p={p} n={n}", rep.ratio == want,
                             f"got {rep.ratio}, table {want}"))
    return out


def random_transversal_pair(field: PrimeField, rng: random.Random) -> tuple[Conic, Conic]:
    while True:
        A = Conic([rng.randrange(field.p) for _ in range(6)], field)
        B = Conic([rng.randrange(field.p) for _ in range(6)], field)
        if is_smooth(A) and is_smooth(B) and is_transversal(A, B):
            return A, B


def suite_identities(seed: int = 0, samples: int = 50) -> list[Check]:
    rng = random.Random(seed)
    F = PrimeField(97)
    bad3 = bad4 = 0
    for _ in range(samples):
        A, B = random_transversal_pair(F, rng)
        s = cayley_coeffs(A, B, 4).values()
        bad3 += hankel_f(A, B, 3).value != s[2]
        bad4 += hankel_f(A, B, 4).value != s[3]
    frac = sum((census_fraction(t) for t in ALL_TYPES), Fraction(0))
    return [
        Check("f_3 equals s_2", bad3 == 0, f"{samples} random pairs over F_97"),
        Check("f_4 equals s_3", bad4 == 0, f"{samples} random pairs over F_97"),
        Check("pencil census fractions sum to 1", frac == 1, f"sum = {frac}"),
    ]


SUITES = {
    "triangles": suite_triangles,
    "tetragons": suite_tetragons,
    "bridge": suite_bridge,
    "tables": suite_tables,
    "identities": suite_identities,
}
