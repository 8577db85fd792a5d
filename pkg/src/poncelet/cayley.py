"""Cayley's criterion over F_p.

For conics A, B write sqrt(det(xA + B)) = H_0 + H_1 x + H_2 x^2 + ...  The
constant H_0 = sqrt(det B) may not lie in F_p, so we work with the
normalized coefficients s_k = H_k / H_0, i.e. the series square root of
det(xA + B) / det(B).  Each Hankel determinant f_n is homogeneous in the H's,
so f_n computed from the s's differs from the classical one by a power of the
unit H_0 and vanishes exactly when it does.

Index layout of the normalized Hankel matrices:

* odd n = 2m + 1: the m x m matrix (s_{2+i+j}), entries s_2 .. s_{2m}
* even n = 2m: the (m-1) x (m-1) matrix (s_{3+i+j}), entries s_3 .. s_{2m-1}

so f_3 = s_2 and f_4 = s_3, and s_0 .. s_{n-1} suffice for every n.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import _batch
from .conics import Conic, _char_cubic_coeffs
from .errors import InvalidInput, SingularConic
from .field import FieldElement, inv_mod
from .pencils import Pencil, PencilParam
from .poly import TruncatedSeries, series_sqrt


@dataclass(frozen=True)
class CayleyCoeffs:
    """s_0 = 1, s_1, ..., s_N, the expansion of sqrt(det(xA+B)/det B)."""

    s: tuple[FieldElement, ...]

    @property
    def N(self) -> int:
        return len(self.s) - 1

    def values(self) -> list[int]:
        return [int(v) for v in self.s]


def _normalized_cubic(A: Conic, B: Conic) -> list[int]:
    p = A.p
    D = _char_cubic_coeffs(A, B)
    d0 = D[0] if D else 0
    if d0 == 0:
        raise SingularConic("det B = 0")
    k = inv_mod(d0, p)
    return [c * k % p for c in D]


def cayley_coeffs(A: Conic, B: Conic, N: int) -> CayleyCoeffs:
    if N < 0:
        raise InvalidInput("truncation order must be non-negative")
    f = _normalized_cubic(A, B)
    g = series_sqrt(TruncatedSeries(f, A.field, N + 1))
    return CayleyCoeffs(tuple(FieldElement(c, A.field) for c in g.coeffs))


def hankel_layout(n: int) -> tuple[int, int]:
    """(size m, first index) of the normalized Hankel matrix for f_n."""
    if n < 3:
        raise InvalidInput("n must be at least 3")
    if n % 2:
        return (n - 1) // 2, 2
    return n // 2 - 1, 3


def hankel_matrix(s: Sequence[int], n: int) -> list[list[int]]:
    m, start = hankel_layout(n)
    return [[int(s[start + i + j]) for j in range(m)] for i in range(m)]


def det_mod(M: Sequence[Sequence[int]], p: int) -> int:
    """Determinant by Gaussian elimination over F_p."""
    A = [[v % p for v in row] for row in M]
    m = len(A)
    det = 1
    for k in range(m):
        piv = next((i for i in range(k, m) if A[i][k]), None)
        if piv is None:
            return 0
        if piv != k:
            A[k], A[piv] = A[piv], A[k]
            det = -det
        det = det * A[k][k] % p
        inv = inv_mod(A[k][k], p)
        for i in range(k + 1, m):
            c = A[i][k] * inv % p
            if c:
                A[i] = [(x - c * y) % p for x, y in zip(A[i], A[k])]
    return det % p


def hankel_f(A: Conic, B: Conic, n: int) -> FieldElement:
    """f_n up to a power of H_0 (see module docstring)."""
    hankel_layout(n)
    s = cayley_coeffs(A, B, n).values()
    return FieldElement(det_mod(hankel_matrix(s, n), A.p), A.field)


def satisfies_ngon_cayley(A: Conic, B: Conic, n: int) -> bool:
    return hankel_f(A, B, n).value == 0


# --- batched sweeps --------------------------------------------------------


def binary_cubic_pullback(cubic: Sequence[int], a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Coefficients of Delta(x*a + b) for Delta(u, v) = c3 u^3 + c2 u^2 v + c1 u v^2 + c0 v^3.

    ``a`` and ``b`` have shape (B, 2), rows (u, v) parameter vectors.
    """
    c0, c1, c2, c3 = cubic
    u = np.stack([b[:, 0], a[:, 0]], axis=1) % p
    v = np.stack([b[:, 1], a[:, 1]], axis=1) % p
    u2, v2 = _batch.bmul(u, u, p), _batch.bmul(v, v, p)
    terms = [
        (c3, _batch.bmul(u2, u, p)),
        (c2, _batch.bmul(u2, v, p)),
        (c1, _batch.bmul(u, v2, p)),
        (c0, _batch.bmul(v2, v, p)),
    ]
    out = np.zeros((a.shape[0], 4), dtype=np.int64)
    for c, t in terms:
        out = (out + c * t % p) % p
    return out


def batch_hankel(D: np.ndarray, n: int, p: int) -> np.ndarray:
    """Normalized f_n for each row of cubic coefficients D (with D[:, 0] != 0)."""
    m, start = hankel_layout(n)
    f = D * _batch.binv(D[:, 0], p)[:, None] % p
    s = _batch.bseries_sqrt(f, n, p)
    if m == 1:
        return s[:, start].copy()
    M = np.empty((D.shape[0], m, m), dtype=np.int64)
    for i in range(m):
        for j in range(m):
            M[:, i, j] = s[:, start + i + j]
    return _batch.bdet(M, p)


def ordered_smooth_pairs(P: Pencil, shard: int = 0, shards: int = 1) -> tuple[np.ndarray, np.ndarray, list]:
    """Parameter vectors of all ordered pairs (r, s), r != s, of smooth members.

    Pairs are enumerated r-major in P.params() order; with ``shards > 1`` only
    every ``shards``-th r (starting at ``shard``) is kept.
    """
    members = P.smooth_members()
    firsts = members[shard::shards]
    pairs = [(r, s) for r in firsts for s in members if r != s]
    a = np.array([r.vector() for r, _ in pairs], dtype=np.int64).reshape(-1, 2)
    b = np.array([s.vector() for _, s in pairs], dtype=np.int64).reshape(-1, 2)
    return a, b, pairs


def pencil_hankel_values(P: Pencil, n: int, shard: int = 0, shards: int = 1):
    """(pairs, values) where values[i] is the normalized f_n of the i-th pair
    (A, B) = (member(r), member(s))."""
    p = P.p
    a, b, pairs = ordered_smooth_pairs(P, shard, shards)
    if not pairs:
        return pairs, np.zeros(0, dtype=np.int64)
    if not _batch.supported(p):
        vals = [hankel_f(P.member(r), P.member(s), n).value for r, s in pairs]
        return pairs, np.array(vals, dtype=object)
    D = binary_cubic_pullback(P.cubic, a, b, p)
    return pairs, batch_hankel(D, n, p)


def pencil_cayley_count(P: Pencil, n: int, shard: int = 0, shards: int = 1) -> int:
    """Ordered pairs of distinct smooth members satisfying f_n = 0."""
    _, vals = pencil_hankel_values(P, n, shard, shards)
    return int(np.count_nonzero(vals == 0))


def pencil_cayley_pairs(P: Pencil, n: int) -> list[tuple[PencilParam, PencilParam]]:
    pairs, vals = pencil_hankel_values(P, n)
    return [pr for pr, v in zip(pairs, vals) if v == 0]
