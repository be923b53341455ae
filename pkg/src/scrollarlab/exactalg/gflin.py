"""Dense linear algebra over F_p built on numpy int64 arrays.

All routines assume p * p * ncols fits in 63 bits, which holds for every
modulus this package accepts in its numpy-backed paths.
"""

from __future__ import annotations

import numpy as np

from .poly import modinv


def rref(a: np.ndarray, p: int):
    """Row-reduce a copy of `a` mod p; returns (R, pivot_columns)."""
    m = np.mod(np.asarray(a, dtype=np.int64), p).copy()
    rows, cols = m.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if len(nz) == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            m[[r, i]] = m[[i, r]]
        m[r] = m[r] * modinv(int(m[r, c]), p) % p
        col = m[:, c].copy()
        col[r] = 0
        m = (m - np.outer(col, m[r])) % p
        pivots.append(c)
        r += 1
    return m, pivots


def rank(a: np.ndarray, p: int) -> int:
    return len(rref(a, p)[1])


def nullspace(a: np.ndarray, p: int) -> np.ndarray:
    """Basis for the right kernel of `a` mod p, one vector per row."""
    a = np.asarray(a, dtype=np.int64)
    if a.size == 0:
        return np.eye(a.shape[1] if a.ndim == 2 else 0, dtype=np.int64)
    r, pivots = rref(a, p)
    rows, cols = a.shape
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for k, fc in enumerate(free):
        basis[k, fc] = 1
        for i, pc in enumerate(pivots):
            basis[k, pc] = (-r[i, fc]) % p
    return basis


def solve(a: np.ndarray, b: np.ndarray, p: int):
    """One solution of a x = b mod p, or None if inconsistent."""
    a = np.mod(np.asarray(a, dtype=np.int64), p)
    b = np.mod(np.asarray(b, dtype=np.int64), p)
    aug = np.hstack([a, b.reshape(-1, 1)])
    r, pivots = rref(aug, p)
    cols = a.shape[1]
    if cols in pivots:
        return None
    x = np.zeros(cols, dtype=np.int64)
    for i, pc in enumerate(pivots):
        x[pc] = r[i, cols]
    return x


def inverse(a: np.ndarray, p: int) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64)
    n = a.shape[0]
    aug = np.hstack([a % p, np.eye(n, dtype=np.int64)])
    r, pivots = rref(aug, p)
    if pivots != list(range(n)):
        raise ArithmeticError("matrix not invertible mod %d" % p)
    return r[:, n:]


def matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    return np.asarray(a, dtype=np.int64) @ np.asarray(b, dtype=np.int64) % p


def det(a: np.ndarray, p: int) -> int:
    m = np.mod(np.asarray(a, dtype=np.int64), p).copy()
    n = m.shape[0]
    d = 1
    for c in range(n):
        nz = np.nonzero(m[c:, c])[0]
        if len(nz) == 0:
            return 0
        i = c + int(nz[0])
        if i != c:
            m[[c, i]] = m[[i, c]]
            d = -d % p
        d = d * int(m[c, c]) % p
        inv = modinv(int(m[c, c]), p)
        below = m[c + 1 :, c] * inv % p
        m[c + 1 :] = (m[c + 1 :] - np.outer(below, m[c])) % p
    return d


def charpoly_modp(a: np.ndarray, p: int) -> np.ndarray:
    """Coefficients (ascending) of det(y*I - a) mod p via Hessenberg reduction."""
    h = np.mod(np.asarray(a, dtype=np.int64), p).copy()
    n = h.shape[0]
    for c in range(n - 2):
        nz = np.nonzero(h[c + 1 :, c])[0]
        if len(nz) == 0:
            continue
        piv = c + 1 + int(nz[0])
        if piv != c + 1:
            h[[c + 1, piv]] = h[[piv, c + 1]]
            h[:, [c + 1, piv]] = h[:, [piv, c + 1]]
        inv = modinv(int(h[c + 1, c]), p)
        factors = h[c + 2 :, c] * inv % p
        h[c + 2 :] = (h[c + 2 :] - np.outer(factors, h[c + 1])) % p
        h[:, c + 1] = (h[:, c + 1] + h[:, c + 2 :] @ factors) % p
    # charpoly of the Hessenberg form by the leading-minor recurrence
    polys = [np.zeros(n + 1, dtype=np.int64) for _ in range(n + 1)]
    polys[0][0] = 1
    for k in range(1, n + 1):
        pk = np.zeros(n + 1, dtype=np.int64)
        pk[1 : k + 1] = polys[k - 1][:k]
        pk = (pk - int(h[k - 1, k - 1]) * polys[k - 1]) % p
        prod = 1
        for i in range(k - 1, 0, -1):
            prod = prod * int(h[i, i - 1]) % p
            term = prod * int(h[i - 1, k - 1]) % p
            if term:
                pk = (pk - term * polys[i - 1]) % p
        polys[k] = pk
    return polys[n]
