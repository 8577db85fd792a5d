"""Closed forms of H_2(r, s) and factorizations of H_3(r, s) on the canonical pencils.

Each form is stated only up to a nonzero constant.  Factors with coefficients
outside F_p are evaluated literally: square roots live in the quadratic
extension, and the three conjugate cubic factors of the (3,1) pencil are
multiplied out as a norm from F_p[T]/(T^3 + bT^2 + cT + 1).
"""

from poncelet.cayley import det_mod
from poncelet.conics import IntersectionType as T
from poncelet.field import QuadraticExtension, PrimeField, inv_mod, sqrt_mod
from poncelet.poly import _divmod, _mul


def h2_form(P, r: int, s: int) -> int:
    p = P.p
    k = P.parameters
    t = P.itype
    if t is T.SPLIT:
        v = r * r + (6 * s * s - 4 * s ** 3 - 4 * s) * r + s ** 4
    elif t is T.ONE_PAIR:
        e = k["e"]
        v = (
            r * r * (4 * e - 1)
            + r * (4 * s ** 3 * e * e - 6 * s * s * e - 4 * s * e + 4 * s - 2)
            + (-(s ** 4) * e * e + 6 * s * s * e - 4 * s + 3)
        )
    elif t is T.TWO_PAIRS:
        e1, e2 = k["e1"], k["e2"]
        v = (
            r * r * (-16 * e1 * e2 + 4 * e1 + 4 * e2 - 1)
            + r * (16 * s * e1 * e2 + 4 * s ** 3 - 6 * s * s - 4 * s * e1 - 4 * s * e2
                   + 8 * e1 * e2 + 4 * s - 2 * e1 - 2 * e2)
            + (-(s ** 4) - 24 * s * s * e1 * e2 + 48 * e1 * e1 * e2 * e2 + 6 * s * s * e1
               + 6 * s * s * e2 + 16 * s * e1 * e2 - 24 * e1 * e1 * e2 - 24 * e1 * e2 * e2
               - 4 * s * e1 - 4 * s * e2 + 3 * e1 * e1 + 3 * e2 * e2 + 6 * e1 * e2)
        )
    elif t is T.QUARTET:
        a, b, c = k["a"], k["b"], k["c"]
        v = (
            r * r * (4 * a * c * c - b * b)
            + r * (4 * s ** 3 * a * a + 6 * s * s * a * b - 4 * s * a * c * c + 4 * s * b * b + 2 * b * c * c)
            + (-(s ** 4) * a * a + 6 * s * s * a * c * c + 4 * s * b * c * c + 3 * c ** 4)
        )
    else:
        b, c = k["b"], k["c"]
        v = (
            r * r * (3 * s ** 4 + 4 * s ** 3 * b + 6 * s * s * c - c * c + 12 * s + 4 * b)
            + r * (2 * s ** 4 * b + 4 * s ** 3 * b * b - 4 * s ** 3 * c + 6 * s * s * b * c
                   + 4 * s * c * c - 18 * s * s - 4 * s * b + 2 * c)
            + (-(s ** 4) * b * b + 4 * s ** 4 * c + 12 * s ** 3 + 6 * s * s * b + 4 * s * c + 3)
        )
    return v % p


def _norm_mod_cubic(phi, h, p):
    """prod of phi(alpha) over the roots alpha of the monic cubic h."""
    rows = []
    for k in range(3):
        mono = [0] * k + [1]
        prod = _divmod(_mul(phi, mono, p), h, p)[1]
        rows.append(prod + [0] * (3 - len(prod)))
    return det_mod(rows, p)


def h3_factors(P, r: int, s: int) -> list:
    """The printed factors evaluated at (r, s): ints, or extension elements."""
    p = P.p
    k = P.parameters
    t = P.itype
    F = PrimeField(p)
    X = QuadraticExtension(F)
    if t is T.SPLIT:
        return [(-2 * r * s + s * s + r) % p, (s * s - r) % p, (s * s + r - 2 * s) % p]
    if t is T.ONE_PAIR:
        e = k["e"]
        return [
            (-2 * r * s * e + s * s * e + r - 1) % p,
            (s ** 4 * e * e - 2 * s ** 3 * e + 4 * r * r * e - 8 * r * s * e + 6 * s * s * e
             - r * r + 2 * r * s - 2 * s + 1) % p,
        ]
    if t is T.TWO_PAIRS:
        e1, e2 = k["e1"], k["e2"]
        A = sqrt_mod((1 - 4 * e1) * (1 - 4 * e2), p)
        B = -1 - A
        C = e1 + e2 - 4 * e1 * e2
        return [
            (-2 * r * s + s * s + r + 4 * e1 * e2 - e1 - e2) % p,
            (s * s + A * r + B * s + C) % p,
            (s * s - A * r + (-2 - B) * s + C) % p,
        ]
    if t is T.QUARTET:
        a, b, c = k["a"], k["b"], k["c"]
        ai = inv_mod(a, p)
        w = X.sqrt_of_base(b * b - 4 * a * c * c)
        A = w * ai
        B = X(b * ai) - w * ai
        return [
            a * a * (2 * r * s * a - s * s * a + r * b + c * c) % p,
            A * r + B * s + (s * s + ai * c * c),
            A * (-r) + (X(2 * ai * b) - B) * s + (s * s + ai * c * c),
        ]
    b, c = k["b"], k["c"]
    # phi(T) = rs^2 - 2T rs + (2T + b)s^2 + (-2T^2 - 2bT - c)r + (2T^2 + 2bT + 2c)s + 1
    phi = [
        (r * s * s + b * s * s - c * r + 2 * c * s + 1) % p,
        (-2 * r * s + 2 * s * s - 2 * b * r + 2 * b * s) % p,
        (-2 * r + 2 * s) % p,
    ]
    while phi and phi[-1] == 0:
        phi.pop()
    h = [1, c, b, 1]
    return [_norm_mod_cubic(phi, h, p)]


def h3_form(P, r: int, s: int) -> int:
    """Product of the printed factors; always lands in F_p."""
    p = P.p
    acc = None
    for f in h3_factors(P, r, s):
        acc = f if acc is None else acc * f
    if isinstance(acc, int):
        return acc % p
    assert acc.is_base(), "conjugate factors should multiply into the base field"
    return acc.a
