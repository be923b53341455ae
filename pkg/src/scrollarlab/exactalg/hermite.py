"""Hermite (row echelon) form over F_p[t] by Euclidean column reduction.

Used for module bases of orders and ideals: the echelon shape makes
expressing elements in the basis an exact forward substitution.
"""

from __future__ import annotations

from .poly import UniPoly, modinv


def hermite_form(rows):
    """Echelon basis of the row module: pivots (first nonzero entries) in
    strictly increasing columns, monic, with the entries above each pivot
    reduced; zero rows are dropped."""
    if not rows:
        return []
    ncols = len(rows[0])
    p = rows[0][0].p
    work = [list(r) for r in rows if any(not f.is_zero() for f in r)]
    basis = []
    for col in range(ncols):
        while True:
            nz = [i for i in range(len(work)) if not work[i][col].is_zero()]
            if not nz:
                pivot = None
                break
            if len(nz) == 1:
                pivot = work.pop(nz[0])
                break
            nz.sort(key=lambda i: work[i][col].degree)
            i0 = nz[0]
            for i in nz[1:]:
                q = work[i][col] // work[i0][col]
                work[i] = [work[i][j] - q * work[i0][j] for j in range(ncols)]
            work = [r for r in work if any(not f.is_zero() for f in r)]
        if pivot is not None:
            inv = modinv(pivot[col].lc(), p)
            basis.append([f * inv for f in pivot])
    # reduce entries above each pivot
    for k in range(len(basis)):
        piv_col = next(j for j, f in enumerate(basis[k]) if not f.is_zero())
        for i in range(k):
            q = basis[i][piv_col] // basis[k][piv_col]
            if not q.is_zero():
                basis[i] = [
                    basis[i][j] - q * basis[k][j] for j in range(ncols)
                ]
    return basis


def is_echelon_square(num) -> bool:
    d = len(num)
    for i in range(d):
        if len(num[i]) != d or num[i][i].is_zero():
            return False
        for j in range(i):
            if not num[i][j].is_zero():
                return False
    return True


def echelon_express(num, rhs_vectors):
    """Solve c . num = w for each w in rhs_vectors, with num square upper
    echelon; divisions must be exact (the vectors lie in the row module)."""
    d = len(num)
    out = []
    for w in rhs_vectors:
        w = list(w)
        c = [None] * d
        for j in range(d):
            c[j] = w[j].exact_div(num[j][j])
            if not c[j].is_zero():
                for k in range(j, d):
                    if not num[j][k].is_zero():
                        w[k] = w[k] - c[j] * num[j][k]
        out.append(c)
    return out
