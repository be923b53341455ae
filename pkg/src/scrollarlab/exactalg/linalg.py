"""Matrices over F_p[t] and F_p(t): fraction-free determinants and solving,
weak Popov row reduction with optional column shifts, resultants by
evaluation-interpolation, and interpolated characteristic polynomials.
"""

from __future__ import annotations

import random

import numpy as np

from . import gflin
from .poly import RationalFunction, UniPoly, lagrange_interpolate, modinv

PolyMat = list  # list of list of UniPoly


def mat_dims(m: PolyMat):
    return len(m), len(m[0]) if m else 0


def bareiss_det(m: PolyMat) -> UniPoly:
    """Fraction-free determinant of a square UniPoly matrix."""
    n = len(m)
    if n == 0:
        raise ValueError("empty matrix")
    p = m[0][0].p
    var = m[0][0].var
    a = [row[:] for row in m]
    sign = 1
    prev = UniPoly.one(p, var)
    for k in range(n - 1):
        if a[k][k].is_zero():
            for i in range(k + 1, n):
                if not a[i][k].is_zero():
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return UniPoly.zero(p, var)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[k][k] * a[i][j] - a[i][k] * a[k][j]
                a[i][j] = num.exact_div(prev)
            a[i][k] = UniPoly.zero(p, var)
        prev = a[k][k]
    return a[n - 1][n - 1] * sign


def polymat_solve(a: PolyMat, b: PolyMat) -> list[list[RationalFunction]]:
    """Solve a X = b over F_p(t) by fraction-free elimination; a square and
    nonsingular, b a list of right-hand-side columns stacked as a matrix."""
    n = len(a)
    p = a[0][0].p
    var = a[0][0].var
    ncols = len(b[0])
    m = [a[i][:] + b[i][:] for i in range(n)]
    prev = UniPoly.one(p, var)
    for k in range(n - 1):
        if m[k][k].is_zero():
            for i in range(k + 1, n):
                if not m[i][k].is_zero():
                    m[k], m[i] = m[i], m[k]
                    break
            else:
                raise ArithmeticError("singular matrix")
        for i in range(k + 1, n):
            for j in range(k + 1, n + ncols):
                m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]).exact_div(prev)
            m[i][k] = UniPoly.zero(p, var)
        prev = m[k][k]
    if m[n - 1][n - 1].is_zero():
        raise ArithmeticError("singular matrix")
    x = [[None] * ncols for _ in range(n)]
    for c in range(ncols):
        for i in range(n - 1, -1, -1):
            acc = RationalFunction.from_poly(m[i][n + c])
            for j in range(i + 1, n):
                acc = acc - x[j][c] * m[i][j]
            x[i][c] = acc / m[i][i]
    return x


def ratmat_inverse(m: list[list[RationalFunction]]) -> list[list[RationalFunction]]:
    n = len(m)
    p = m[0][0].p
    var = m[0][0].num.var
    den = UniPoly.one(p, var)
    for row in m:
        for e in row:
            den = den * e.den.exact_div(den.gcd(e.den))
    cleared = [[(e * den).as_poly() for e in row] for row in m]
    eye = [
        [den if i == j else UniPoly.zero(p, var) for j in range(n)] for i in range(n)
    ]
    return polymat_solve(cleared, eye)


# ---------------------------------------------------------------------------
# weak Popov / row reduction
# ---------------------------------------------------------------------------


def shifted_row_degree(row, shifts) -> int | None:
    """max_j deg(row[j]) + shifts[j], or None for a zero row."""
    best = None
    for j, f in enumerate(row):
        if f.is_zero():
            continue
        d = f.degree + shifts[j]
        if best is None or d > best:
            best = d
    return best


def _leading_vector(row, shifts, rd, p):
    out = np.zeros(len(row), dtype=np.int64)
    for j, f in enumerate(row):
        if not f.is_zero() and f.degree + shifts[j] == rd:
            out[j] = f.lc()
    return out


def weak_popov(m: PolyMat, shifts=None, transform: bool = False):
    """Shifted weak Popov form by unimodular row operations over F_p[t].

    Returns (rows, u, degrees): `rows` is the reduced matrix (same row space),
    `u` the transform with u * m = rows (or None), and `degrees` the shifted
    row degrees (None for zero rows).  The nonzero rows of the output form a
    row-reduced basis of the row module: their shifted degrees are the minimal
    degree profile.
    """
    if not m:
        raise ValueError("empty matrix")
    p = m[0][0].p
    var = m[0][0].var
    nrows, ncols = len(m), len(m[0])
    if shifts is None:
        shifts = [0] * ncols
    rows = [row[:] for row in m]
    u = None
    if transform:
        u = [
            [UniPoly.const(p, 1 if i == j else 0, var) for j in range(nrows)]
            for i in range(nrows)
        ]
    while True:
        rds = [shifted_row_degree(r, shifts) for r in rows]
        live = [i for i in range(nrows) if rds[i] is not None]
        if len(live) <= 1:
            break
        lcmat = np.array(
            [_leading_vector(rows[i], shifts, rds[i], p) for i in live], dtype=np.int64
        )
        kern = gflin.nullspace(lcmat.T, p)
        if len(kern) == 0:
            break
        lam = kern[0]
        support = [live[k] for k in np.nonzero(lam)[0]]
        pivot = max(support, key=lambda i: (rds[i], i))
        lam_by_row = {live[k]: int(lam[k]) for k in np.nonzero(lam)[0]}
        inv = modinv(lam_by_row[pivot], p)
        for i in support:
            if i == pivot:
                continue
            coef = lam_by_row[i] * inv % p
            tshift = rds[pivot] - rds[i]
            mult = UniPoly.monomial(p, tshift, coef, var)
            rows[pivot] = [
                rows[pivot][j] + mult * rows[i][j] for j in range(ncols)
            ]
            if transform:
                u[pivot] = [u[pivot][j] + mult * u[i][j] for j in range(nrows)]
    degrees = [shifted_row_degree(r, shifts) for r in rows]
    return rows, u, degrees


def popov_normalize(m: PolyMat, shifts=None):
    """Canonical (shifted) Popov form of the nonzero row module: weak Popov,
    then pivot normalization and full reduction, rows sorted by pivot index."""
    rows, _, _ = weak_popov(m, shifts)
    p = rows[0][0].p
    ncols = len(rows[0])
    if shifts is None:
        shifts = [0] * ncols
    rows = [r for r in rows if any(not f.is_zero() for f in r)]

    def pivot_index(row):
        rd = shifted_row_degree(row, shifts)
        best = None
        for j, f in enumerate(row):
            if not f.is_zero() and f.degree + shifts[j] == rd:
                best = j
        return best

    changed = True
    while changed:
        changed = False
        rows.sort(key=lambda r: (pivot_index(r), shifted_row_degree(r, shifts)))
        for i, row in enumerate(rows):
            piv = pivot_index(row)
            lead = row[piv]
            if not lead.is_monic():
                inv = modinv(lead.lc(), p)
                rows[i] = [f * inv for f in row]
                row = rows[i]
                lead = row[piv]
            for k, other in enumerate(rows):
                if k == i:
                    continue
                q = other[piv] // lead
                if not q.is_zero():
                    rows[k] = [other[j] - q * row[j] for j in range(ncols)]
                    changed = True
    rows.sort(key=lambda r: (pivot_index(r), shifted_row_degree(r, shifts)))
    return rows


def row_module_basis(m: PolyMat, shifts=None) -> PolyMat:
    """Minimal (weak Popov) basis of the F_p[t]-module spanned by the rows;
    zero rows are discarded."""
    rows, _, _ = weak_popov(m, shifts)
    return [r for r in rows if any(not f.is_zero() for f in r)]


# ---------------------------------------------------------------------------
# resultants via evaluation-interpolation
# ---------------------------------------------------------------------------


def resultant_modp(a: np.ndarray, b: np.ndarray, p: int) -> int:
    """Resultant of univariate polynomials over F_p (coefficient arrays)."""
    a = np.trim_zeros(np.mod(a, p), "b")
    b = np.trim_zeros(np.mod(b, p), "b")
    if len(a) == 0 or len(b) == 0:
        return 0
    res = 1
    while True:
        da, db = len(a) - 1, len(b) - 1
        if db == 0:
            return res * pow(int(b[0]), da, p) % p
        # remainder of a by b
        r = a.copy()
        inv = modinv(int(b[-1]), p)
        for i in range(da, db - 1, -1):
            if r[i]:
                c = r[i] * inv % p
                r[i - db : i + 1] = (r[i - db : i + 1] - c * b) % p
        r = np.trim_zeros(r[:db], "b")
        if len(r) == 0:
            return 0
        dr = len(r) - 1
        res = res * pow(int(b[-1]), da - dr, p) % p
        if (da * db) % 2:
            res = (-res) % p
        a, b = b, r


def xpoly_resultant(f, g) -> UniPoly:
    """Res_main(f, g) in F_p[t] for XPolys over the same aux variable, by
    specializing t and interpolating; falls back to a fraction-free Sylvester
    determinant when F_p has too few usable points."""
    p = f.p
    var = f.aux_var()
    if f.is_zero() or g.is_zero():
        return UniPoly.zero(p, var)
    bound = f.degree * g.max_coeff_degree() + g.degree * f.max_coeff_degree()
    bound = max(bound, 0)
    if bound + 1 > p:
        return _sylvester_resultant(f, g)
    lcf, lcg = f.lc(), g.lc()
    xs, ys = [], []
    t0 = 0
    while len(xs) < bound + 1:
        if t0 >= p:
            return _sylvester_resultant(f, g)
        if lcf(t0) != 0 and lcg(t0) != 0:
            fa = f.specialize_aux(t0)
            ga = g.specialize_aux(t0)
            xs.append(t0)
            ys.append(resultant_modp(fa.c, ga.c, p))
        t0 += 1
    return lagrange_interpolate(p, xs, ys, var)


def _sylvester_resultant(f, g) -> UniPoly:
    from .poly import UniPoly

    p = f.p
    var = f.aux_var()
    m, n = f.degree, g.degree
    if m == 0:
        return f.coeff(0) ** n
    if n == 0:
        return g.coeff(0) ** m
    size = m + n
    z = UniPoly.zero(p, var)
    rows = []
    for i in range(n):
        row = [z] * size
        for j in range(m + 1):
            row[i + j] = f.coeff(m - j)
        rows.append(row)
    for i in range(m):
        row = [z] * size
        for j in range(n + 1):
            row[i + j] = g.coeff(n - j)
        rows.append(row)
    return bareiss_det(rows)


def xpoly_content(f) -> UniPoly:
    """gcd of the coefficients of an XPoly."""
    from .poly import UniPoly

    g = UniPoly.zero(f.p, f.aux_var())
    for c in f.coeffs:
        g = g.gcd(c)
        if g.is_one():
            break
    return g


def xpoly_gcd_main(f, g):
    """gcd in the main variable over F_p(t), primitive-part normalized, by a
    pseudo-remainder sequence with content removal."""
    from .poly import XPoly

    a, b = f, g
    if a.degree < b.degree:
        a, b = b, a
    while not b.is_zero():
        # pseudo-remainder: lc(b)^(da-db+1) a mod b
        da, db = a.degree, b.degree
        lc = b.lc()
        r = a * lc ** (da - db + 1)
        q, r = _xpoly_divmod_general(r, b)
        cont = xpoly_content(r) if not r.is_zero() else None
        if cont is not None and not cont.is_one():
            r = r.map_coeffs(lambda c: c.exact_div(cont))
        a, b = b, r
    cont = xpoly_content(a)
    if not cont.is_one():
        a = a.map_coeffs(lambda c: c.exact_div(cont))
    return a


def _xpoly_divmod_general(a, b):
    """Division when lc(b) divides the relevant leading coefficients exactly
    (guaranteed after pseudo-scaling)."""
    from .poly import XPoly, UniPoly

    p = a.p
    rem = list(a.coeffs)
    db = b.degree
    if a.degree < db:
        return XPoly.zero(p, a.main), a
    quot = [UniPoly.zero(p, a.aux_var())] * (a.degree - db + 1)
    for i in range(a.degree, db - 1, -1):
        if i >= len(rem) or rem[i].is_zero():
            continue
        qc = rem[i].exact_div(b.lc())
        quot[i - db] = qc
        for j in range(db + 1):
            if not b.coeffs[j].is_zero():
                rem[i - db + j] = rem[i - db + j] - qc * b.coeffs[j]
    return XPoly(p, quot, a.main), XPoly(p, rem[:db], a.main)


def xpoly_separable(f) -> bool:
    """True when gcd(f, df/dmain) is trivial over F_p(t)."""
    df = f.derivative()
    if df.is_zero():
        return False
    g = xpoly_gcd_main(f, df)
    return g.degree == 0


def xpoly_discriminant(f) -> UniPoly:
    """disc_main(f) for monic f: (-1)**(d(d-1)/2) Res(f, f')."""
    if not f.is_monic():
        raise ValueError("discriminant implemented for monic polynomials")
    d = f.degree
    res = xpoly_resultant(f, f.derivative())
    if (d * (d - 1) // 2) % 2:
        res = -res
    return res


# ---------------------------------------------------------------------------
# characteristic polynomials by evaluation-interpolation
# ---------------------------------------------------------------------------


def _common_denominator(m, p, var):
    den = UniPoly.one(p, var)
    for row in m:
        for e in row:
            if isinstance(e, RationalFunction):
                den = den * e.den.exact_div(den.gcd(e.den))
    return den


def charpoly_interpolated(m, degree_bound: int, seed: int = 0):
    """Coefficients (ascending in y) of det(y I - m) for a square matrix over
    F_p[t] or F_p(t).

    The matrix is cleared by the common denominator `den`; `degree_bound` must
    bound the t-degree of every coefficient of det(y den I - den m), which for
    polynomial matrices is the characteristic polynomial itself (a bound of
    n * max entry degree always works).  Evaluation points are enumerated in a
    seeded order but the result is seed-independent; points at denominator
    poles are skipped.  Raises if F_p has fewer than degree_bound + 1 usable
    points.
    """
    n = len(m)
    first = m[0][0]
    p = first.p
    var = first.num.var if isinstance(first, RationalFunction) else first.var
    den = _common_denominator(m, p, var)
    cleared = []
    for row in m:
        out = []
        for e in row:
            if isinstance(e, RationalFunction):
                out.append((e * den).as_poly())
            else:
                out.append(e * den)
        cleared.append(out)
    rng = random.Random((seed, p, n, "charpoly"))
    order = list(range(p))
    rng.shuffle(order)
    npoints = degree_bound + 1
    xs = []
    mats = []
    for t0 in order:
        if den(t0) == 0:
            continue
        xs.append(t0)
        mats.append(
            np.array([[f(t0) for f in row] for row in cleared], dtype=np.int64)
        )
        if len(xs) == npoints:
            break
    else:
        raise ArithmeticError(
            "insufficient distinct sample points in F_%d (need %d); enlarge p"
            % (p, npoints)
        )
    # deterministic merge: per-point charpolys keyed by evaluation point
    values = {t0: gflin.charpoly_modp(a, p) for t0, a in zip(xs, mats)}
    xs_sorted = sorted(values)
    coeff_polys = []
    for k in range(n + 1):
        ys = [int(values[t0][k]) for t0 in xs_sorted]
        coeff_polys.append(lagrange_interpolate(p, xs_sorted, ys, var))
    # det(y I - m) = det(z I - den*m)|_{z = den*y} / den**n
    out = []
    for k in range(n + 1):
        out.append(RationalFunction(coeff_polys[k], den ** (n - k)))
    return out
