"""Point configurations of the geometric generic fiber: the quadrics through
the d points cut out by a trace-zero reduced basis and its trace dual, their
weighted generator degrees, the full bigraded resolution computed degree by
degree with plain linear algebra, specialization checks of the vanishing, and
the binary cubic form in degree 3.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from math import ceil, floor

import numpy as np

from .exactalg import (
    RationalFunction,
    UniPoly,
    XPoly,
    gflin,
    irreducible_polynomial,
    ratmat_inverse,
    roots_in_extension,
    xpoly_discriminant,
)
from .exactalg.factor import GFExt, factorize
from .funfield import (
    CoverModel,
    cover_data,
    dual_basis,
    element_trace,
    reduced_basis,
    trace_zero_basis,
    _rf_mul_mod,
)
from .predict import (
    ScrollarProfile,
    schreyer_interval,
    schreyer_sum,
)
from .splitalg import SplittingAlgebra
from .symrep import syzygy_rank


@dataclass
class PointConfigData:
    model: CoverModel
    basis: list  # trace-zero reduced basis rows (RationalFunction coords)
    dual: list  # trace-dual rows
    exponents: tuple  # (0, e_1, ..., e_{d-1})
    genus: int
    table: dict  # (j, k) 1 <= j <= k <= d-1 -> coords of a*_j a*_k in basis


@dataclass
class QuadricSet:
    config: PointConfigData
    quadrics: list  # symmetric (d-1) x (d-1) matrices with UniPoly entries
    weights: tuple  # (e_1, ..., e_{d-1})
    degrees: tuple | None  # generator shifts b, ascending, once graded

    def beta(self) -> int:
        return len(self.quadrics)


@dataclass
class RelativeResolution:
    config: PointConfigData
    shifts: dict  # step i -> sorted tuple b^(i)
    betti: tuple  # (1, beta_1, ..., beta_depth[, ..., 1])
    final_shift: int | None  # shift of the rank-1 last module, when computed
    generators: dict  # step i -> list of (shift, element dict)

    def to_json(self) -> dict:
        return {
            "beta": list(self.betti),
            "b": {str(i): list(v) for i, v in sorted(self.shifts.items())},
        }


def point_config(model: CoverModel) -> PointConfigData:
    """Trace-zero reduced basis, its trace dual, and the exact product table
    of the dual elements expanded in the basis itself."""
    if model.d < 3:
        raise ValueError("point configurations need d >= 3")
    red = trace_zero_basis(reduced_basis(model))
    dual = dual_basis(model, red.basis)
    d = model.d
    p = model.p
    binv = ratmat_inverse([list(r) for r in red.basis])
    table = {}
    for j in range(1, d):
        for k in range(j, d):
            prod_power = _rf_mul_mod(model.f, dual[j], dual[k])
            coords = []
            for c in range(d):
                acc = RationalFunction.const(p, 0, "t")
                for r in range(d):
                    acc = acc + prod_power[r] * binv[r][c]
                coords.append(acc)
            table[(j, k)] = coords
    return PointConfigData(
        model, red.basis, dual, red.exponents, red.genus, table
    )


def _cleared_table(config: PointConfigData):
    """Product table with one common denominator; returns (den, Q) where
    Q[(j,k)] is a list of d UniPoly coordinates."""
    p = config.model.p
    den = UniPoly.one(p, "t")
    for coords in config.table.values():
        for e in coords:
            den = den * e.den.exact_div(den.gcd(e.den))
    cleared = {
        key: [(e * den).as_poly() for e in coords]
        for key, coords in config.table.items()
    }
    return den, cleared


def quadric_space(config: PointConfigData) -> QuadricSet:
    """Full solution space of sum c_{jk} a*_j a*_k = 0 over F_p(t), of
    dimension d(d-3)/2, echelonized with monomials ordered by weight
    e_j + e_k then lexicographically."""
    d = config.model.d
    p = config.model.p
    if d == 3:
        raise ValueError("three points are cut out by a cubic; use cubic_form_d3")
    _, cleared = _cleared_table(config)
    e = config.exponents
    keys = sorted(
        cleared.keys(), key=lambda jk: (e[jk[0]] + e[jk[1]], jk)
    )
    # rational elimination on the d x N coordinate matrix
    rows = [[cleared[key][r] for key in keys] for r in range(d)]
    kernel = _poly_kernel(rows, p)
    expected = d * (d - 3) // 2
    if len(kernel) != expected:
        raise ArithmeticError(
            "quadric space has dimension %d, expected %d" % (len(kernel), expected)
        )
    quadrics = [_vector_to_matrix(vec, keys, d, p) for vec in kernel]
    return QuadricSet(config, quadrics, tuple(e[1:]), None)


def _poly_kernel(rows, p: int):
    """Kernel vectors (right) of a small matrix with UniPoly entries, found by
    fraction-free elimination; each vector is scaled to polynomial entries."""
    nrows = len(rows)
    ncols = len(rows[0])
    m = [[RationalFunction.from_poly(x) for x in row] for row in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, nrows):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = m[r][c].inverse()
        m[r] = [x * inv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c]:
                coef = m[i][c]
                m[i] = [m[i][j] - coef * m[r][j] for j in range(ncols)]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    free = [c for c in range(ncols) if c not in pivots]
    out = []
    for fc in free:
        vec = [RationalFunction.const(p, 0, "t")] * ncols
        vec[fc] = RationalFunction.const(p, 1, "t")
        for i, pc in enumerate(pivots):
            vec[pc] = -m[i][fc]
        den = UniPoly.one(p, "t")
        for x in vec:
            den = den * x.den.exact_div(den.gcd(x.den))
        poly_vec = [(x * den).as_poly() for x in vec]
        content = UniPoly.zero(p, "t")
        for x in poly_vec:
            content = content.gcd(x)
        if not content.is_one():
            poly_vec = [x.exact_div(content) for x in poly_vec]
        out.append(poly_vec)
    return out


def _vector_to_matrix(vec, keys, d, p):
    inv2 = (p + 1) // 2
    mat = [[UniPoly.zero(p, "t") for _ in range(d - 1)] for _ in range(d - 1)]
    for val, (j, k) in zip(vec, keys):
        if j == k:
            mat[j - 1][j - 1] = val
        else:
            half = val * inv2
            mat[j - 1][k - 1] = half
            mat[k - 1][j - 1] = half
    return mat


# ---------------------------------------------------------------------------
# graded generators, degree by degree
# ---------------------------------------------------------------------------


def _window(d: int, i: int, g: int, pad: int = 2):
    lo, hi = schreyer_interval(d, i, g)
    return floor(lo) - pad, ceil(hi) + pad


def _solve_step_one(config: PointConfigData, b: int):
    """F_p-basis of quadrics with deg c_{jk} <= e_j + e_k - b vanishing on the
    configuration; returns (dimension, solutions as {(j,k): UniPoly})."""
    d = config.model.d
    p = config.model.p
    e = config.exponents
    _, cleared = _cleared_table(config)
    keys = sorted(cleared.keys(), key=lambda jk: (e[jk[0]] + e[jk[1]], jk))
    slots = []  # (key, t-power)
    for key in keys:
        cap = e[key[0]] + e[key[1]] - b
        for a in range(cap + 1):
            slots.append((key, a))
    if not slots:
        return 0, []
    max_rhs = max(
        max((c.degree for c in cleared[key]), default=0) for key in keys
    )
    height_t = max_rhs + max(a for _, a in slots) + 1
    mat = np.zeros((d * height_t, len(slots)), dtype=np.int64)
    for col, (key, a) in enumerate(slots):
        for r in range(d):
            poly = cleared[key][r]
            if poly.is_zero():
                continue
            seg = mat[r * height_t : (r + 1) * height_t, col]
            seg[a : a + len(poly.c)] = poly.c
    kern = gflin.nullspace(mat, p)
    sols = []
    for v in kern:
        sol = {}
        for col, (key, a) in enumerate(slots):
            if v[col]:
                cur = sol.get(key, UniPoly.zero(p, "t"))
                sol[key] = cur + UniPoly.monomial(p, a, int(v[col]), "t")
        sols.append(sol)
    return len(kern), sols


def graded_quadric_degrees(config: PointConfigData) -> QuadricSet:
    """Weighted-minimal quadric generators: scan candidate shifts b from the
    interval downward, read off generator multiplicities from the dimension
    sequence, and keep new generators independent of t-multiples of the
    earlier ones.  The multiset of shifts is checked against its closed-form
    sum and interval."""
    d = config.model.d
    g = config.genus
    p = config.model.p
    lo, hi = _window(d, 1, g)
    beta1 = syzygy_rank(d, 1)
    gens, blocks = _graded_generators(
        lambda b: _solve_step_one(config, b), lo, hi, beta1
    )
    degrees = tuple(sorted(b for b, _ in gens))
    if sum(degrees) != schreyer_sum(d, 1, g):
        raise ArithmeticError(
            "quadric shifts %s sum to %d, expected %d"
            % (list(degrees), sum(degrees), schreyer_sum(d, 1, g))
        )
    lo_f, hi_f = schreyer_interval(d, 1, g)
    for b in degrees:
        if not lo_f <= b <= hi_f:
            raise ArithmeticError("shift %d outside the closed-form interval" % b)
    e = config.exponents
    quadrics = []
    for b, sol in sorted(gens, key=lambda t: t[0]):
        keys = sorted(sol.keys())
        vec = [sol[k] for k in keys]
        quadrics.append(_vector_to_matrix(vec, keys, d, p))
    return QuadricSet(config, quadrics, tuple(e[1:]), degrees)


def _graded_generators(solver, b_lo: int, b_hi: int, expected_rank: int):
    """Generic downward scan: solver(b) gives (dim, solutions) of the
    shift->=b slice; new generators at b are solutions independent of
    t-multiples of generators already found at higher shifts."""
    gens = []  # (shift, solution dict)
    dims = {}
    sols_at = {}
    for b in range(b_hi, b_lo - 1, -1):
        dim, sols = solver(b)
        dims[b] = dim
        sols_at[b] = sols
        covered = sum(bb - b + 1 for bb, _ in gens)
        new = dim - covered
        if new < 0:
            raise ArithmeticError("dimension sequence is not monotone")
        if new == 0:
            continue
        picked = _independent_new(sols, gens, b)
        if len(picked) != new:
            raise ArithmeticError(
                "found %d new generators at shift %d, expected %d"
                % (len(picked), b, new)
            )
        gens.extend((b, s) for s in picked)
        if len(gens) == expected_rank and b > b_lo:
            # confirm no further generators below: dims must now be forced
            continue
    if len(gens) != expected_rank:
        raise ArithmeticError(
            "found %d generators, expected %d (window exhausted)"
            % (len(gens), expected_rank)
        )
    return gens, dims


def _independent_new(sols, gens, b):
    """Subset of `sols` independent modulo t-multiples of existing gens."""
    if not sols:
        return []
    keyset = sorted({k for s in sols for k in s} | {k for _, s in gens for k in s})
    p = next(iter(sols[0].values())).p if sols[0] else None
    if p is None:
        for s in sols:
            if s:
                p = next(iter(s.values())).p
                break
    maxdeg = 0
    for s in list(sols) + [s for _, s in gens]:
        for v in s.values():
            maxdeg = max(maxdeg, v.degree)
    width = maxdeg + max((bb - b for bb, _ in gens), default=0) + 1

    def flatten(sol, shift):
        vec = np.zeros(len(keyset) * width, dtype=np.int64)
        for idx, key in enumerate(keyset):
            v = sol.get(key)
            if v is not None and not v.is_zero():
                vec[idx * width + shift : idx * width + shift + len(v.c)] = v.c
        return vec

    old_rows = []
    for bb, s in gens:
        for r in range(bb - b + 1):
            old_rows.append(flatten(s, r))
    picked = []
    stack = old_rows[:]
    base_rank = gflin.rank(np.array(stack), p) if stack else 0
    for s in sols:
        cand = flatten(s, 0)
        trial = stack + [cand]
        rk = gflin.rank(np.array(trial), p)
        if rk > base_rank:
            picked.append(s)
            stack = trial
            base_rank = rk
    return picked


# ---------------------------------------------------------------------------
# higher syzygies
# ---------------------------------------------------------------------------


def _gen_to_module_element(sol: dict):
    """Step-one generator {(j,k): c} as a module element over component 0."""
    return {(0, tuple(sorted(jk))): c for jk, c in sol.items()}


def _solve_linear_syzygies(p, e, prev, b):
    """F_p-basis of vectors (L_m) of linear forms, deg coefficient of x_n in
    L_m <= e[n] + prev_shift_m - b, with sum_m L_m . prev_m = 0."""
    slots = []  # (m, n, a)
    for m, (bm, _) in enumerate(prev):
        for n in range(1, len(e)):
            cap = e[n] + bm - b
            for a in range(cap + 1):
                slots.append((m, n, a))
    if not slots:
        return 0, []
    # equations: for each product key (component, xmono) and each t-degree
    eq_index = {}
    entries = []  # (eq_row, col, coeff array start): assembled below
    max_t = 0
    rows_data = []
    for col, (m, n, a) in enumerate(slots):
        _, elem = prev[m]
        for (comp, mono), c in elem.items():
            new_mono = tuple(sorted(mono + (n,)))
            key = (comp, new_mono)
            if key not in eq_index:
                eq_index[key] = len(eq_index)
            rows_data.append((eq_index[key], col, a, c))
            max_t = max(max_t, a + c.degree)
    height = max_t + 1
    mat = np.zeros((len(eq_index) * height, len(slots)), dtype=np.int64)
    for eq, col, a, c in rows_data:
        seg = mat[eq * height : (eq + 1) * height, col]
        seg[a : a + len(c.c)] = (seg[a : a + len(c.c)] + c.c) % p
    kern = gflin.nullspace(mat, p)
    sols = []
    for v in kern:
        sol = {}
        for col, (m, n, a) in enumerate(slots):
            if v[col]:
                key = (m, (n,))
                cur = sol.get(key, UniPoly.zero(p, "t"))
                sol[key] = cur + UniPoly.monomial(p, a, int(v[col]), "t")
        sols.append(sol)
    return len(kern), sols


def relative_resolution(config: PointConfigData, depth: int) -> RelativeResolution:
    """Syzygy shifts b^(i) for i = 1..depth, solved bidegree by bidegree; when
    depth reaches d-3 the rank-1 final step is verified as well (its single
    generator sits at shift g+d-1, forced by the duality of the resolution)."""
    d = config.model.d
    g = config.genus
    p = config.model.p
    if not 1 <= depth <= d - 3:
        raise ValueError("depth must be between 1 and d-3")
    e = config.exponents
    qs = graded_quadric_degrees(config)
    shifts = {1: qs.degrees}
    generators = {}
    prev = []
    for b, mat in zip(sorted(qs.degrees), qs.quadrics):
        sol = {}
        for j in range(1, d):
            for k in range(j, d):
                c = mat[j - 1][k - 1] if j == k else mat[j - 1][k - 1] * 2
                if not c.is_zero():
                    sol[(j, k)] = c
        prev.append((b, _gen_to_module_element(sol)))
    generators[1] = prev
    for i in range(2, depth + 1):
        lo, hi = _window(d, i, g)
        beta_i = syzygy_rank(d, i)
        gens, _ = _graded_generators(
            lambda b: _solve_linear_syzygies(p, e, prev, b), lo, hi, beta_i
        )
        bs = tuple(sorted(b for b, _ in gens))
        if sum(bs) != schreyer_sum(d, i, g):
            raise ArithmeticError(
                "step %d shifts %s sum to %d, expected %d"
                % (i, list(bs), sum(bs), schreyer_sum(d, i, g))
            )
        shifts[i] = bs
        prev = sorted(gens, key=lambda t: t[0])
        generators[i] = prev
    final_shift = None
    if depth == d - 3:
        final_shift = _final_rank_one_shift(config, prev)
    betti = (1,) + tuple(syzygy_rank(d, i) for i in range(1, depth + 1))
    if depth == d - 3:
        betti = betti + (1,)
    return RelativeResolution(config, shifts, betti, final_shift, generators)


def _solve_quadratic_syzygies(p, e, prev, b):
    """Like _solve_linear_syzygies but with x-degree-2 entries (the rank-1
    closing step of the resolution)."""
    d = len(e)
    slots = []
    monos = list(combinations_with_replacement(range(1, d), 2))
    for m, (bm, _) in enumerate(prev):
        for mono in monos:
            cap = e[mono[0]] + e[mono[1]] + bm - b
            for a in range(cap + 1):
                slots.append((m, mono, a))
    if not slots:
        return 0, []
    eq_index = {}
    rows_data = []
    max_t = 0
    for col, (m, mono, a) in enumerate(slots):
        _, elem = prev[m]
        for (comp, emono), c in elem.items():
            new_mono = tuple(sorted(emono + mono))
            key = (comp, new_mono)
            if key not in eq_index:
                eq_index[key] = len(eq_index)
            rows_data.append((eq_index[key], col, a, c))
            max_t = max(max_t, a + c.degree)
    height = max_t + 1
    mat = np.zeros((len(eq_index) * height, len(slots)), dtype=np.int64)
    for eq, col, a, c in rows_data:
        seg = mat[eq * height : (eq + 1) * height, col]
        seg[a : a + len(c.c)] = (seg[a : a + len(c.c)] + c.c) % p
    kern = gflin.nullspace(mat, p)
    sols = []
    for v in kern:
        sol = {}
        for col, (m, mono, a) in enumerate(slots):
            if v[col]:
                key = (m, mono)
                cur = sol.get(key, UniPoly.zero(p, "t"))
                sol[key] = cur + UniPoly.monomial(p, a, int(v[col]), "t")
        sols.append(sol)
    return len(kern), sols


def _final_rank_one_shift(config: PointConfigData, prev) -> int:
    """Shift of the unique generator of the last (rank-1) syzygy module."""
    d = config.model.d
    g = config.genus
    p = config.model.p
    e = config.exponents
    target = g + d - 1
    gens, _ = _graded_generators(
        lambda b: _solve_quadratic_syzygies(p, e, prev, b),
        target - 2,
        target + 2,
        1,
    )
    return gens[0][0]


# ---------------------------------------------------------------------------
# specialization checks
# ---------------------------------------------------------------------------


def verify_point_vanishing(
    config: PointConfigData, quadrics, trials: int = 16, seed: int = 0
) -> bool:
    """Specialize t, build the d points over a splitting extension through
    the cofactor formulas of the coordinate matrix, and check that every
    quadric vanishes at every point.  Any nonvanishing raises."""
    if trials < 1:
        raise ValueError("need at least one trial")
    model = config.model
    p, d = model.p, model.d
    disc = xpoly_discriminant(model.f)
    den = UniPoly.one(p, "t")
    for row in list(config.basis):
        for x in row:
            den = den * x.den.exact_div(den.gcd(x.den))
    rng = random.Random((seed, p, d, "vanishing"))
    done = 0
    attempts = 0
    while done < trials:
        attempts += 1
        if attempts > 64 * trials:
            raise ArithmeticError("could not find enough good sample points")
        t0 = rng.randrange(p)
        if disc(t0) == 0 or den(t0) == 0:
            continue
        if not _vanishing_at_point(config, quadrics, t0, seed):
            raise ArithmeticError(
                "a quadric does not vanish at t = %d (contradiction)" % t0
            )
        done += 1
    return True


def check_point_vanishing(config, quadrics, trials: int = 16, seed: int = 0) -> bool:
    """Non-raising variant: False on first failure (negative controls)."""
    try:
        return verify_point_vanishing(config, quadrics, trials, seed)
    except ArithmeticError:
        return False


def _vanishing_at_point(config: PointConfigData, quadrics, t0: int, seed: int) -> bool:
    model = config.model
    p, d = model.p, model.d
    f0 = model.f.specialize_aux(t0)
    factors = factorize(f0, seed=seed)
    if any(m > 1 for _, m in factors):
        return True  # ramified fiber: skip silently (caller picks new points)
    degs = [g.degree for g, _ in factors]
    m_ext = 1
    for dd in degs:
        m_ext = m_ext * dd // _gcd_int(m_ext, dd)
    modulus = irreducible_polynomial(p, m_ext, seed=seed)
    field = GFExt(p, modulus)
    roots = roots_in_extension(f0, field, seed=seed)
    # coordinate matrix D: row 0 all ones, row j+1 = alpha_j at each root
    basis0 = []
    for row in config.basis:
        basis0.append([_rf_eval(x, t0, p) for x in row])
    dmat = []
    dmat.append([field.one() for _ in range(d)])
    for j in range(1, d):
        row = []
        for root in roots:
            acc = field.zero()
            power = field.one()
            for c in basis0[j]:
                acc = field.add(acc, field.mul(power, field.from_int(c)))
                power = field.mul(power, root)
            row.append(acc)
        dmat.append(row)
    det = _gf_det(dmat, field)
    if field.is_zero(det):
        return True  # degenerate specialization, skip
    det_inv = field.inv(det)
    points = []
    for i in range(d):
        coords = []
        for j in range(1, d):
            minor = _gf_minor_det(dmat, j, i, field)
            sign = -1 if (i + j) % 2 else 1
            val = field.mul(minor, det_inv)
            if sign < 0:
                val = field.neg(val)
            coords.append(val)
        points.append(coords)
    for mat in quadrics:
        q0 = [[mat[a][b](t0) for b in range(d - 1)] for a in range(d - 1)]
        for pt in points:
            acc = field.zero()
            for a in range(d - 1):
                for b in range(d - 1):
                    if q0[a][b]:
                        term = field.mul(pt[a], pt[b])
                        term = field.mul(term, field.from_int(q0[a][b]))
                        acc = field.add(acc, term)
            if not field.is_zero(acc):
                return False
    return True


def _rf_eval(x, t0, p):
    if isinstance(x, RationalFunction):
        return x.eval(t0)
    return x(t0)


def _gcd_int(a, b):
    while b:
        a, b = b, a % b
    return a


def _gf_det(mat, field: GFExt):
    n = len(mat)
    m = [[x.copy() for x in row] for row in mat]
    det = field.one()
    for c in range(n):
        piv = None
        for i in range(c, n):
            if not field.is_zero(m[i][c]):
                piv = i
                break
        if piv is None:
            return field.zero()
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = field.neg(det)
        det = field.mul(det, m[c][c])
        inv = field.inv(m[c][c])
        for i in range(c + 1, n):
            if field.is_zero(m[i][c]):
                continue
            factor = field.mul(m[i][c], inv)
            for j in range(c, n):
                m[i][j] = field.sub(m[i][j], field.mul(factor, m[c][j]))
    return det


def _gf_minor_det(mat, drop_row, drop_col, field: GFExt):
    sub = [
        [mat[i][j] for j in range(len(mat)) if j != drop_col]
        for i in range(len(mat))
        if i != drop_row
    ]
    return _gf_det(sub, field)


# ---------------------------------------------------------------------------
# three points in the projective line: one binary cubic
# ---------------------------------------------------------------------------


def cubic_form_d3(model: CoverModel):
    """The binary cubic C(u, v) with C = (coefficient of the Vandermonde
    element in prod_{i<j}(w^(i) - w^(j)) for w = u a_1 + v a_2), computed in
    the 6-dimensional splitting algebra; coefficients are polynomial.

    Returns (coefficients c_30, c_21, c_12, c_03, basis) with
    C = c_30 u^3 + c_21 u^2 v + c_12 u v^2 + c_03 v^3."""
    if model.d != 3:
        raise ValueError("cubic form construction needs d = 3")
    p = model.p
    red = trace_zero_basis(reduced_basis(model))
    algebra = SplittingAlgebra(model.f)
    den = UniPoly.one(p, "t")
    for row in red.basis[1:]:
        for x in row:
            den = den * x.den.exact_div(den.gcd(x.den))
    coords = [[(x * den).as_poly() for x in row] for row in red.basis[1:]]
    # conjugates of den*alpha_1, den*alpha_2 in the splitting algebra
    conj = [
        [algebra.embed_k_element(coords[m], i) for i in range(1, 4)]
        for m in range(2)
    ]
    # product of the three linear forms (w^(i) - w^(j)) in formal (u, v)
    pairs = [(0, 1), (0, 2), (1, 2)]
    form = {(0, 0): {algebra.one_mono(): UniPoly.one(p, "t")}}
    for (i, j) in pairs:
        du = algebra.elem_add(conj[0][i], algebra.elem_scale(conj[0][j], -1))
        dv = algebra.elem_add(conj[1][i], algebra.elem_scale(conj[1][j], -1))
        new = {}
        for (eu, ev), elem in form.items():
            for (inc_u, inc_v, lin) in ((1, 0, du), (0, 1, dv)):
                key = (eu + inc_u, ev + inc_v)
                prod = algebra.elem_mul(elem, lin)
                cur = new.get(key)
                new[key] = prod if cur is None else algebra.elem_add(cur, prod)
        form = new
    delta = algebra.vandermonde_delta()
    witness = next(m for m, c in delta.items() if not c.is_zero())
    coeffs = {}
    for key, elem in form.items():
        num = elem.get(witness, UniPoly.zero(p, "t"))
        ratio = RationalFunction(num, delta[witness])
        # proportionality check: elem == ratio * delta
        for m, c in delta.items():
            lhs = RationalFunction.from_poly(elem.get(m, UniPoly.zero(p, "t")))
            if lhs != ratio * c:
                raise ArithmeticError("coefficient is not a multiple of delta")
        for m in elem:
            if m not in delta:
                raise ArithmeticError("coefficient leaves the sign line")
        scaled = ratio / RationalFunction.from_poly(den**3)
        if not scaled.is_poly():
            raise ArithmeticError("cubic form coefficient is not polynomial")
        coeffs[key] = scaled.as_poly()
    c30 = coeffs.get((3, 0), UniPoly.zero(p, "t"))
    c21 = coeffs.get((2, 1), UniPoly.zero(p, "t"))
    c12 = coeffs.get((1, 2), UniPoly.zero(p, "t"))
    c03 = coeffs.get((0, 3), UniPoly.zero(p, "t"))
    return (c30, c21, c12, c03), red


def index_form_d3(model: CoverModel, red) -> tuple:
    """Independent route to the same cubic up to sign: the index form
    det(coordinates of 1, w, w^2) for w = u a_1 + v a_2, expanded as
    u^3 A[2] + u^2 v (2B[2] - A[1]) + u v^2 (C[2] - 2B[1]) - v^3 C[1]
    with A, B, C the basis coordinates of a_1^2, a_1 a_2, a_2^2."""
    p = model.p
    basis = red.basis
    binv = ratmat_inverse([list(r) for r in basis])
    zero = RationalFunction.const(p, 0, "t")

    def coords_in_basis(vec):
        return [
            sum((vec[r] * binv[r][c] for r in range(3)), zero) for c in range(3)
        ]

    a = coords_in_basis(_rf_mul_mod(model.f, basis[1], basis[1]))
    b = coords_in_basis(_rf_mul_mod(model.f, basis[1], basis[2]))
    c = coords_in_basis(_rf_mul_mod(model.f, basis[2], basis[2]))
    cubic = (
        a[2],
        b[2] * 2 - a[1],
        c[2] - b[1] * 2,
        -c[1],
    )
    out = []
    for v in cubic:
        if not v.is_poly():
            raise ArithmeticError("index form coefficient is not polynomial")
        out.append(v.as_poly())
    return tuple(out)
