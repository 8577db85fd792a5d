"""Vectorized kernels over a leading batch axis.

Polynomials are int64 arrays of shape (B, L), lowest degree first, each row
an independent problem over the same F_p.  Every product of two residues is
reduced before accumulation, so p < 2^31 keeps all intermediates in range.
"""

from __future__ import annotations

import numpy as np

MAX_P = 1 << 31


def supported(p: int) -> bool:
    return p < MAX_P


def binv(a: np.ndarray, p: int) -> np.ndarray:
    """Elementwise inverse mod p by Fermat; zeros map to zero."""
    a = np.asarray(a, dtype=np.int64) % p
    result = np.ones_like(a)
    base = a.copy()
    e = p - 2
    while e:
        if e & 1:
            result = result * base % p
        base = base * base % p
        e >>= 1
    return result * (a != 0)


def bmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    la, lb = a.shape[1], b.shape[1]
    if la < lb:
        a, b, la, lb = b, a, lb, la
    out = np.zeros((a.shape[0], la + lb - 1), dtype=np.int64)
    for j in range(lb):
        out[:, j:j + la] += a * b[:, j:j + 1] % p
        if (j & 7) == 7:
            out %= p
    return out % p


def badd(a: np.ndarray, b: np.ndarray, p: int, sign: int = 1) -> np.ndarray:
    n = max(a.shape[1], b.shape[1])
    out = np.zeros((a.shape[0], n), dtype=np.int64)
    out[:, :a.shape[1]] += a
    out[:, :b.shape[1]] += sign * b
    return out % p


def bscale(a: np.ndarray, c, p: int) -> np.ndarray:
    c = np.asarray(c, dtype=np.int64) % p
    if c.ndim == 1:
        c = c[:, None]
    return a * c % p


def bshrink(a: np.ndarray) -> np.ndarray:
    """Drop columns that are zero in every row."""
    nz = np.nonzero(a.any(axis=0))[0]
    if len(nz) == 0:
        return a[:, :1]
    return a[:, :nz[-1] + 1]


def bmonic(a: np.ndarray, p: int) -> np.ndarray:
    """Scale each row so that its last column is 1 (last column must be nonzero)."""
    return bscale(a, binv(a[:, -1], p), p)


def brem_monic(a: np.ndarray, f: np.ndarray, p: int) -> np.ndarray:
    """a mod f for monic f of shape (B, d+1); result has shape (B, d)."""
    d = f.shape[1] - 1
    r = a.copy()
    for k in range(r.shape[1] - 1, d - 1, -1):
        c = r[:, k:k + 1]
        r[:, k - d:k + 1] = (r[:, k - d:k + 1] - c * f % p) % p
    out = np.zeros((a.shape[0], d), dtype=np.int64)
    w = min(d, r.shape[1])
    out[:, :w] = r[:, :w]
    return out


def bfrobenius(f: np.ndarray, p: int, e: int | None = None) -> np.ndarray:
    """x^e mod f (default e = p) row by row; f monic of common degree d >= 1."""
    if e is None:
        e = p
    B, d = f.shape[0], f.shape[1] - 1
    r = np.zeros((B, d), dtype=np.int64)
    r[:, 0] = 1
    for bit in bin(e)[2:]:
        r = brem_monic(bmul(r, r, p), f, p)
        if bit == "1":
            s = np.zeros((B, d + 1), dtype=np.int64)
            s[:, 1:] = r
            r = brem_monic(s, f, p)
    return r


def bseries_sqrt(f: np.ndarray, N: int, p: int) -> np.ndarray:
    """Square roots g with g(0) = 1 of rows with f(0) = 1, mod x^N.

    Uses the coefficient recurrence 2 g_k = f_k - sum_{0<i<k} g_i g_{k-i},
    which only divides by 2.
    """
    B = f.shape[0]
    fk = np.zeros((B, N), dtype=np.int64)
    w = min(N, f.shape[1])
    fk[:, :w] = f[:, :w] % p
    half = (p + 1) // 2
    g = np.zeros((B, N), dtype=np.int64)
    g[:, 0] = 1
    for k in range(1, N):
        acc = fk[:, k].copy()
        for i in range(1, k):
            acc -= g[:, i] * g[:, k - i] % p
        g[:, k] = acc % p * half % p
    return g


def bdet(M: np.ndarray, p: int) -> np.ndarray:
    """Determinants mod p of a stack of m x m matrices, shape (B, m, m)."""
    M = np.array(M, dtype=np.int64) % p
    B, m, _ = M.shape
    det = np.ones(B, dtype=np.int64)
    rows = np.arange(B)
    for k in range(m):
        sub = M[:, k:, k] != 0
        has = sub.any(axis=1)
        piv = k + np.argmax(sub, axis=1)
        det = np.where(has, det, 0)
        swap = has & (piv != k)
        if swap.any():
            idx = rows[swap]
            tmp = M[idx, k, :].copy()
            M[idx, k, :] = M[idx, piv[swap], :]
            M[idx, piv[swap], :] = tmp
            det[swap] = (-det[swap]) % p
        pv = M[:, k, k]
        det = det * pv % p
        inv = binv(pv, p)
        for i in range(k + 1, m):
            c = M[:, i, k] * inv % p
            M[:, i, :] = (M[:, i, :] - c[:, None] * M[:, k, :] % p) % p
    return det


def bdivision_g(n: int, f: np.ndarray, p: int, cache: dict) -> np.ndarray:
    """Rows of g_n (psi_n / y for even n) for the cubics f = (a6, a4, a2, 1)."""
    if n in cache:
        return cache[n]
    B = f.shape[0]
    a6, a4, a2 = f[:, 0:1], f[:, 1:2], f[:, 2:3]
    b2, b4, b6 = 4 * a2 % p, 2 * a4 % p, 4 * a6 % p
    b8 = (4 * a2 * a6 % p - a4 * a4 % p) % p
    if n == 0:
        g = np.zeros((B, 1), dtype=np.int64)
    elif n in (1, 2):
        g = np.full((B, 1), n, dtype=np.int64)
    elif n == 3:
        three = np.full((B, 1), 3, dtype=np.int64)
        g = np.hstack([b8, 3 * b6 % p, 3 * b4 % p, b2, three]) % p
    elif n == 4:
        two = np.full((B, 1), 2, dtype=np.int64)
        g = np.hstack([
            (b4 * b8 % p - b6 * b6 % p) % p,
            (b2 * b8 % p - b4 * b6 % p) % p,
            10 * b8 % p,
            10 * b6 % p,
            5 * b4 % p,
            b2,
            two,
        ]) * 2 % p
    else:
        m = n // 2

        def G(k):
            return bdivision_g(k, f, p, cache)

        if n % 2:
            t1 = bmul(G(m + 2), bmul(G(m), bmul(G(m), G(m), p), p), p)
            t2 = bmul(G(m - 1), bmul(G(m + 1), bmul(G(m + 1), G(m + 1), p), p), p)
            f2 = bmul(f, f, p)
            if m % 2 == 0:
                t1 = bmul(t1, f2, p)
            else:
                t2 = bmul(t2, f2, p)
            g = badd(t1, t2, p, -1)
        else:
            t1 = bmul(G(m + 2), bmul(G(m - 1), G(m - 1), p), p)
            t2 = bmul(G(m - 2), bmul(G(m + 1), G(m + 1), p), p)
            g = bscale(bmul(G(m), badd(t1, t2, p, -1), p), (p + 1) // 2, p)
        g = bshrink(g)
    cache[n] = g
    return g


def blambda(n: int, f: np.ndarray, p: int) -> np.ndarray:
    g = bdivision_g(n, f, p, {})
    if n % 2 == 0:
        g = bscale(bmul(g, f, p), (p + 1) // 2, p)
    return bshrink(g)
