"""Degree-d function fields over F_p(t): maximal orders at the finite and
infinite patches (Round-2 radical-idealizer enlargement), genus, ramification
patterns, reduced bases and scrollar invariants, trace-zero and trace-dual
bases.

Conventions.  A plane model is f(t, x), monic of degree d in x with F_p[t]
coefficients.  The finite patch works over F_p[t]; the infinite patch
substitutes t = 1/u and rescales x by u^m (m minimal making the substituted
polynomial integral), giving a monic model g(u, y) with y = u^m x.  An order
basis is stored as a numerator matrix over the patch ring plus one common
monic denominator; rows are coordinates in the power basis of the patch
variable.

The genus is (deg_t disc_fin + ord_u disc_inf)/2 - d + 1, where ord_u is the
u-adic valuation: primes of disc_inf away from u = 0 are re-countings of
finite branch points on the overlap of the two patches, so only the u-adic
part contributes new ramification.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .exactalg import (
    GFExt,
    RationalFunction,
    UniPoly,
    XPoly,
    bareiss_det,
    factorize,
    is_irreducible,
    parse_xpoly,
    polymat_solve,
    popov_normalize,
    ratmat_inverse,
    row_module_basis,
    weak_popov,
    xpoly_discriminant,
    xpoly_to_str,
)
from .exactalg.hermite import echelon_express, hermite_form, is_echelon_square
from .exactalg.poly import is_probable_prime, modinv
from .predict import ScrollarProfile
from .symrep import Partition


class ModelError(ValueError):
    """The input does not define a usable cover."""


class ReducibleError(ModelError):
    pass


class WildRamificationError(ModelError):
    pass


class CertificateError(ArithmeticError):
    """An internal optimality or maximality certificate failed."""


@dataclass(frozen=True)
class CoverModel:
    p: int
    d: int
    f: XPoly  # monic in x, UniPoly-in-t coefficients
    m_inf: int  # x-rescaling exponent at infinity

    def __str__(self):
        return "p = %d; f = %s" % (self.p, xpoly_to_str(self.f))


def _infinity_exponent(f: XPoly) -> int:
    d = f.degree
    m = 0
    for i in range(d):
        ci = f.coeff(i)
        if not ci.is_zero():
            m = max(m, -(-ci.degree // (d - i)))  # ceil
    return m


def validate_cover(p: int, f: XPoly, seed: int = 0,
                   assert_irreducible: bool = False) -> CoverModel:
    """Check the model: p prime and > d, f monic separable of degree d >= 2,
    and certify irreducibility by specializing t at up to 32 seeded points
    (sound one-sided test; reject otherwise unless asserted)."""
    if not is_probable_prime(p):
        raise ModelError("p = %d is not prime" % p)
    d = f.degree
    if d < 2:
        raise ModelError("degree in x must be >= 2")
    if p <= d:
        raise WildRamificationError("p <= d risks wild ramification")
    if not f.is_monic():
        raise ModelError("f must be monic in x")
    disc = xpoly_discriminant(f)
    if disc.is_zero():
        raise WildRamificationError("f is inseparable (disc = 0)")
    rng = random.Random((seed, p, "irred"))
    certified = False
    for _ in range(32):
        t0 = rng.randrange(p)
        spec = f.specialize_aux(t0)
        if spec.degree == d and is_irreducible(spec):
            certified = True
            break
    if not certified and not assert_irreducible:
        # cheap exact fallback: a root in F_p(t) would give a linear factor
        if _has_linear_factor(f):
            raise ReducibleError("f has a root in F_p(t)")
        raise ReducibleError(
            "irreducibility not certified by 32 specializations; "
            "pass assert_irreducible to override"
        )
    return CoverModel(p, d, f, _infinity_exponent(f))


def _has_linear_factor(f: XPoly) -> bool:
    # f monic: any root in F_p(t) is a polynomial dividing the constant term
    c0 = f.coeff(0)
    if c0.is_zero():
        return True
    for g, _ in factorize(c0):
        for sign in (1, -1):
            if f.eval_main(g * sign).is_zero():
                return True
    # constant roots
    for a in range(f.p):
        val = f.eval_main(a)
        if val.is_zero():
            return True
    return False


def model_from_string(text: str, seed: int = 0, **kw) -> CoverModel:
    """Parse the curve format "p = 1009; f = x^4 + (t^3+1)*x + t"."""
    entries: dict[str, str] = {}
    for chunk in text.replace("\n", ";").split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        if "=" not in chunk:
            raise ModelError("bad curve line %r" % chunk)
        key, _, val = chunk.partition("=")
        key = key.strip()
        if key in entries:
            raise ModelError("duplicate key %r" % key)
        entries[key] = val.strip()
    unknown = set(entries) - {"p", "f"}
    if unknown:
        raise ModelError("unknown keys %s" % sorted(unknown))
    if "p" not in entries or "f" not in entries:
        raise ModelError("curve file needs both p and f")
    p = int(entries["p"])
    if not is_probable_prime(p):
        raise ModelError("p = %d is not prime" % p)
    f = parse_xpoly(entries["f"], p, "x", "t")
    return validate_cover(p, f, seed=seed, **kw)


def model_to_string(model: CoverModel) -> str:
    return str(model)


# ---------------------------------------------------------------------------
# orders
# ---------------------------------------------------------------------------


@dataclass
class OrderBasis:
    patch: str  # "finite" | "infinite"
    var: str  # "t" | "u"
    F: XPoly  # defining polynomial on this patch (monic, main var "x"/"y")
    num: list  # d x d UniPoly rows (echelon): basis coordinates * den
    num_norm: list  # same module, first row = the element 1
    den: UniPoly
    disc: UniPoly  # discriminant of this order
    index_sq: UniPoly  # disc(F) / disc, a perfect square
    local: dict  # prime -> (num, den) pi-maximal overorder, small denominators

    @property
    def d(self) -> int:
        return self.F.degree

    def basis_rows(self) -> list[list[RationalFunction]]:
        """Basis with first element 1, as rational power-basis coordinates."""
        return [
            [RationalFunction(e, self.den) for e in row] for row in self.num_norm
        ]


def _power_traces(F: XPoly, upto: int) -> list[UniPoly]:
    """Newton power sums s_k = Tr(xi^k) of the monic polynomial F."""
    p = F.p
    var = F.aux_var()
    d = F.degree
    a = [F.coeff(i) for i in range(d)]  # F = xi^d + a_{d-1} xi^{d-1} + ... + a_0
    s = [UniPoly.const(p, d % p, var)]
    for k in range(1, upto + 1):
        acc = UniPoly.zero(p, var)
        if k <= d:
            acc = acc + a[d - k] * k
            rng = range(1, k)
        else:
            rng = range(1, d + 1)
        for i in rng:
            acc = acc + a[d - i] * s[k - i]
        s.append(-acc)
    return s


def _mul_mod(F: XPoly, v: list[UniPoly], w: list[UniPoly]) -> list[UniPoly]:
    """Product of two power-basis coordinate vectors, reduced mod F."""
    p = F.p
    prod = XPoly(p, v, F.main) * XPoly(p, w, F.main)
    _, rem = prod.divmod_monic(F)
    z = UniPoly.zero(p, F.aux_var())
    return [rem.coeff(k) if k <= rem.degree else z for k in range(F.degree)]


def _order_disc(F: XPoly, num, den: UniPoly) -> tuple[UniPoly, UniPoly]:
    """(disc of the order spanned by num/den, index^2 = disc(F)/disc)."""
    d = F.degree
    s = _power_traces(F, 2 * d - 2)
    hankel = [[s[i + j] for j in range(d)] for i in range(d)]
    tmp = [
        [sum((num[i][k] * hankel[k][j] for k in range(d)),
             UniPoly.zero(F.p, F.aux_var())) for j in range(d)]
        for i in range(d)
    ]
    gram = [
        [sum((tmp[i][k] * num[j][k] for k in range(d)),
             UniPoly.zero(F.p, F.aux_var())) for j in range(d)]
        for i in range(d)
    ]
    det = bareiss_det(gram)
    disc = det.exact_div(den ** (2 * d))
    disc_f = xpoly_discriminant(F)
    index_sq = disc_f.exact_div(disc)
    return disc, index_sq


def _express_in_basis(num, den: UniPoly, vectors, vden: UniPoly):
    """Coordinates of elements (v / vden in power basis) with respect to the
    basis rows num/den; the results must be polynomial (asserted)."""
    d = len(num)
    rhs = [[(e * den).exact_div(vden) for e in v] for v in vectors]
    if is_echelon_square(num):
        return echelon_express(num, rhs)
    a_t = [[num[j][i] for j in range(d)] for i in range(d)]
    b = [[rhs[k][i] for k in range(len(vectors))] for i in range(d)]
    sol = polymat_solve(a_t, b)
    out = []
    for k in range(len(vectors)):
        out.append([sol[i][k].as_poly() for i in range(d)])
    return out


class _Fq:
    """Residue field F_p[t]/(pi), with a fast path for deg pi = 1."""

    def __init__(self, pi: UniPoly):
        self.pi = pi.monic()
        self.p = pi.p
        self.m = pi.degree
        self.ext = None if self.m == 1 else GFExt(pi.p, self.pi)
        self._a0 = (-self.pi.coeff(0)) % self.p if self.m == 1 else None

    def reduce_poly(self, f: UniPoly):
        if self.m == 1:
            return f(self._a0)
        r = f % self.pi
        out = np.zeros(self.m, dtype=np.int64)
        out[: len(r.c)] = r.c
        return out

    def lift(self, a) -> UniPoly:
        if self.m == 1:
            return UniPoly.const(self.p, int(a), self.pi.var)
        return UniPoly(self.p, a, self.pi.var)

    def zero(self):
        return 0 if self.m == 1 else self.ext.zero()

    def one(self):
        return 1 if self.m == 1 else self.ext.one()

    def add(self, a, b):
        return (a + b) % self.p if self.m == 1 else self.ext.add(a, b)

    def mul(self, a, b):
        return (a * b) % self.p if self.m == 1 else self.ext.mul(a, b)

    def sub(self, a, b):
        return (a - b) % self.p if self.m == 1 else self.ext.sub(a, b)

    def inv(self, a):
        return modinv(a, self.p) if self.m == 1 else self.ext.inv(a)

    def is_zero(self, a):
        return a == 0 if self.m == 1 else self.ext.is_zero(a)

    def q(self) -> int:
        return self.p**self.m


def _fq_matrix_kernel(rows, fq: _Fq):
    """Kernel (list of coordinate vectors) of the map given by stacked rows
    over the residue field."""
    if fq.m == 1:
        from .exactalg import gflin

        a = np.array(rows, dtype=np.int64)
        return [list(v) for v in gflin.nullspace(a, fq.p)]
    # generic Gaussian elimination over F_q
    m = [list(r) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, nrows):
            if not fq.is_zero(m[i][c]):
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = fq.inv(m[r][c])
        m[r] = [fq.mul(inv, e) for e in m[r]]
        for i in range(nrows):
            if i != r and not fq.is_zero(m[i][c]):
                coef = m[i][c]
                m[i] = [fq.sub(m[i][j], fq.mul(coef, m[r][j])) for j in range(ncols)]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [fq.zero()] * ncols
        vec[fc] = fq.one()
        for i, pc in enumerate(pivots):
            vec[pc] = fq.sub(fq.zero(), m[i][fc])
        basis.append(vec)
    return basis


def _structure_constants(F: XPoly, num, den: UniPoly):
    """c[i][j] = polynomial coordinates of b_i b_j in the basis num/den."""
    d = len(num)
    prods = []
    for i in range(d):
        for j in range(i, d):
            prods.append(_mul_mod(F, num[i], num[j]))
    coords = _express_in_basis(num, den, prods, den * den)
    table = [[None] * d for _ in range(d)]
    k = 0
    for i in range(d):
        for j in range(i, d):
            table[i][j] = coords[k]
            table[j][i] = coords[k]
            k += 1
    return table


def _reduced_table(table, fq: _Fq, d: int):
    if fq.m == 1:
        arr = np.zeros((d, d, d), dtype=np.int64)
        for i in range(d):
            for j in range(d):
                for l in range(d):
                    arr[i, j, l] = fq.reduce_poly(table[i][j][l])
        return arr
    return [
        [[fq.reduce_poly(c) for c in table[i][j]] for j in range(d)]
        for i in range(d)
    ]


def _algebra_mul(tq, fq: _Fq, d: int, a, b):
    """Product in the quotient algebra from the reduced structure constants."""
    if fq.m == 1:
        return np.einsum("i,j,ijl->l", a, b, tq) % fq.p
    out = [fq.zero()] * d
    for i in range(d):
        if fq.is_zero(a[i]):
            continue
        for j in range(d):
            if fq.is_zero(b[j]):
                continue
            s = fq.mul(a[i], b[j])
            row = tq[i][j]
            for l in range(d):
                if not fq.is_zero(row[l]):
                    out[l] = fq.add(out[l], fq.mul(s, row[l]))
    return out


def _radical_mod(table, fq: _Fq, d: int):
    """Radical of O/pi O as the kernel of the trace form Tr(xy), valid because
    d < p makes every block length prime to the characteristic."""
    tq = _reduced_table(table, fq, d)
    if fq.m == 1:
        tr = np.einsum("kii->k", tq) % fq.p
        gram = np.einsum("ijk,k->ij", tq, tr) % fq.p
        from .exactalg import gflin

        return [list(v) for v in gflin.nullspace(gram, fq.p)]
    tr = []
    for k in range(d):
        acc = fq.zero()
        for i in range(d):
            acc = fq.add(acc, tq[k][i][i])
        tr.append(acc)
    gram = []
    for i in range(d):
        row = []
        for j in range(d):
            acc = fq.zero()
            for k in range(d):
                if not fq.is_zero(tq[i][j][k]):
                    acc = fq.add(acc, fq.mul(tq[i][j][k], tr[k]))
            row.append(acc)
        gram.append(row)
    return _fq_matrix_kernel(gram, fq)


def _radical_frobenius(table, fq: _Fq, d: int):
    """Reference implementation: kernel of the iterated Frobenius
    x -> x^(q^e) with q^e >= d (an F_q-linear map killing the nilpotents)."""
    tq = _reduced_table(table, fq, d)

    def apow(a, e):
        result = None
        base = a
        while e:
            if e & 1:
                result = base if result is None else _algebra_mul(tq, fq, d, result, base)
            base = _algebra_mul(tq, fq, d, base, base)
            e >>= 1
        return result

    q = fq.q()
    elem = []
    for i in range(d):
        if fq.m == 1:
            e_i = np.zeros(d, dtype=np.int64)
            e_i[i] = 1
        else:
            e_i = [fq.zero()] * d
            e_i[i] = fq.one()
        elem.append(e_i)
    mat = [apow(e_i, q) for e_i in elem]  # row i = coordinates of b_i^q
    qe = q
    while qe < d:
        mat = [_compose_rows(mat, row, fq, d) for row in mat]
        qe = qe * qe
    # left kernel: x with sum_i x_i mat[i] = 0
    cols = [[mat[i][l] for i in range(d)] for l in range(d)]
    return _fq_matrix_kernel(cols, fq)


def _compose_rows(mat, vec, fq: _Fq, d: int):
    """Image of `vec` under the linear map sending e_i to mat[i]."""
    if fq.m == 1:
        stacked = np.array(mat, dtype=np.int64)
        return np.asarray(vec, dtype=np.int64) @ stacked % fq.p
    out = [fq.zero()] * d
    for i in range(d):
        if fq.is_zero(vec[i]):
            continue
        for l in range(d):
            if not fq.is_zero(mat[i][l]):
                out[l] = fq.add(out[l], fq.mul(vec[i], mat[i][l]))
    return out


def _round2_at_prime(F: XPoly, num, den: UniPoly, pi: UniPoly):
    """One radical-idealizer step at pi; returns (num, den, enlarged?)."""
    d = F.degree
    p = F.p
    var = F.aux_var()
    fq = _Fq(pi)
    table = _structure_constants(F, num, den)
    rad = _radical_mod(table, fq, d)
    # ideal I = pi O + <radical lifts>, as a module in O-coordinates
    rows = []
    for k in range(d):
        row = [UniPoly.zero(p, var) for _ in range(d)]
        row[k] = pi
        rows.append(row)
    for vec in rad:
        rows.append([fq.lift(a) for a in vec])
    ibasis = hermite_form(rows)
    if len(ibasis) != d:
        raise CertificateError("radical ideal basis has wrong rank")
    # multiplier test: y I <= pi I for y in O, solved modulo pi
    # coordinates of b_k * g_j in O-basis, then in I-basis
    prods = []
    for k in range(d):
        for g in ibasis:
            w = [
                sum((g[m] * table[k][m][l] for m in range(d)),
                    UniPoly.zero(p, var))
                for l in range(d)
            ]
            prods.append(w)
    # z with z * ibasis = w for each product (polynomial: I is an ideal)
    sol_rows = echelon_express(ibasis, prods)
    cond_rows = []
    for k in range(d):
        row = []
        for jj in range(d):
            z = sol_rows[k * d + jj]
            for i in range(d):
                row.append(fq.reduce_poly(z[i]))
        cond_rows.append(row)
    # find y with sum_k y_k cond_rows[k] = 0 (left kernel)
    cond_t = [[cond_rows[k][c] for k in range(d)] for c in range(len(cond_rows[0]))]
    kern = _fq_matrix_kernel(cond_t, fq)
    if not kern:
        return num, den, False
    # enlarge: O' = O + (1/pi) <kernel lifts>
    rows = []
    for k in range(d):
        row = [UniPoly.zero(p, var) for _ in range(d)]
        row[k] = pi
        rows.append(row)
    for vec in kern:
        rows.append([fq.lift(a) for a in vec])
    newbasis = hermite_form(rows)
    if len(newbasis) != d:
        raise CertificateError("enlargement basis has wrong rank")
    # new rows (in O-coords) are newbasis / pi; convert to power coordinates
    new_num = hermite_form(
        [
            [
                sum((newbasis[i][k] * num[k][j] for k in range(d)),
                    UniPoly.zero(p, var))
                for j in range(d)
            ]
            for i in range(d)
        ]
    )
    if len(new_num) != d:
        raise CertificateError("enlarged order basis has wrong rank")
    new_den = den * pi
    # remove common content
    g = new_den
    for row in new_num:
        for e in row:
            g = g.gcd(e)
            if g.is_one():
                break
        if g.is_one():
            break
    if not g.is_one():
        new_num = [[e.exact_div(g) for e in row] for row in new_num]
        new_den = new_den.exact_div(g)
    return new_num, new_den, True


def _normalize_first_element_one(F: XPoly, num, den: UniPoly):
    """Unimodular change making the first basis row equal to the element 1."""
    d = F.degree
    p = F.p
    var = F.aux_var()
    one_vec = [den if j == 0 else UniPoly.zero(p, var) for j in range(d)]
    coords = _express_in_basis(num, den, [one_vec], den)[0]
    # the element 1 is primitive in the order, so gcd of its coordinates is a
    # unit; Bezout-combine rows (contravariant transform) until one coordinate
    # is a unit, then swap that combination in for the element itself
    rows = [list(r) for r in num]
    c = list(coords)
    pivot = None
    for i, ci in enumerate(c):
        if not ci.is_zero() and ci.is_constant():
            pivot = i
            break
    if pivot is None:
        i0 = next(i for i, ci in enumerate(c) if not ci.is_zero())
        for i in range(i0 + 1, d):
            if c[i].is_zero():
                continue
            g, _, _ = c[i0].xgcd(c[i])
            a = c[i0].exact_div(g)
            b = c[i].exact_div(g)
            _, s, u = a.xgcd(b)  # s a + u b = 1
            new_i0 = [a * rows[i0][j] + b * rows[i][j] for j in range(d)]
            new_i = [(-u) * rows[i0][j] + s * rows[i][j] for j in range(d)]
            rows[i0], rows[i] = new_i0, new_i
            c[i0], c[i] = g, UniPoly.zero(p, var)
        if not c[i0].is_constant() or c[i0].is_zero():
            raise CertificateError("the element 1 is not primitive in the order")
        pivot = i0
    # identity matrix with row `pivot` replaced by c has unit determinant
    rows[pivot] = one_vec
    rows[0], rows[pivot] = rows[pivot], rows[0]
    return rows


def _maximal_order(F: XPoly, seed: int = 0) -> OrderBasis:
    d = F.degree
    p = F.p
    var = F.aux_var()
    disc_f = xpoly_discriminant(F)
    if disc_f.is_zero():
        raise WildRamificationError("inseparable model on this patch")
    num = [
        [UniPoly.const(p, 1 if i == j else 0, var) for j in range(d)]
        for i in range(d)
    ]
    den = UniPoly.one(p, var)
    primes = [g for g, m in factorize(disc_f, seed=seed) if m >= 2]
    # per-prime enlargement from the equation order (the steps at distinct
    # primes commute), then a deterministic merge sorted by prime
    local: dict = {}
    for pi in sorted(primes, key=lambda g: (g.degree, g.c.tobytes())):
        num_pi = [
            [UniPoly.const(p, 1 if i == j else 0, var) for j in range(d)]
            for i in range(d)
        ]
        den_pi = UniPoly.one(p, var)
        while True:
            num_pi, den_pi, enlarged = _round2_at_prime(F, num_pi, den_pi, pi)
            if not enlarged:
                break
        local[pi] = (num_pi, den_pi)
    if local:
        den = UniPoly.one(p, var)
        for _, den_pi in local.values():
            den = den * den_pi
        rows = []
        for num_pi, den_pi in local.values():
            scale = den.exact_div(den_pi)
            rows.extend([[e * scale for e in row] for row in num_pi])
        num = hermite_form(rows)
        if len(num) != d:
            raise CertificateError("merged order basis has wrong rank")
        g0 = den
        for row in num:
            for e in row:
                g0 = g0.gcd(e)
                if g0.is_one():
                    break
            if g0.is_one():
                break
        if not g0.is_one():
            num = [[e.exact_div(g0) for e in row] for row in num]
            den = den.exact_div(g0)
    num_norm = _normalize_first_element_one(F, num, den)
    # determinant identity: disc(O) = disc(F) (det basis)^2, index = 1/det
    det = UniPoly.one(p, var)
    for i in range(d):
        det = det * num[i][i]
    index = (den**d).exact_div(det)
    index_sq = index * index
    disc = disc_f.exact_div(index_sq)
    if not is_square_certificate(index_sq):
        raise CertificateError("order index is not a square")
    patch = "finite" if var == "t" else "infinite"
    return OrderBasis(patch, var, F, num, num_norm, den, disc, index_sq, local)


def is_square_certificate(f: UniPoly) -> bool:
    from .exactalg import is_square_poly

    return is_square_poly(f)


def infinite_patch_polynomial(model: CoverModel) -> XPoly:
    """g(u, y) = u^(d m) f(1/u, y/u^m), monic in y with F_p[u] coefficients."""
    p, d, m = model.p, model.d, model.m_inf
    coeffs = []
    for i in range(d + 1):
        ci = model.f.coeff(i)
        if ci.is_zero():
            coeffs.append(UniPoly.zero(p, "u"))
            continue
        k = m * (d - i) - ci.degree
        if k < 0:
            raise CertificateError("infinity exponent too small")
        coeffs.append(ci.reverse().shift(k).with_var("u"))
    return XPoly(p, coeffs, "y")


@dataclass
class ReducedBasisResult:
    model: CoverModel
    basis: list  # d rows of RationalFunction, coordinates in powers of x
    exponents: tuple[int, ...]  # 0 = e_0 <= e_1 <= ... <= e_{d-1}
    genus: int

    def profile(self) -> ScrollarProfile:
        return ScrollarProfile(self.exponents[1:], "measured")


@dataclass
class RamificationReport:
    places: list  # (place descriptor str, Partition)
    classification: str  # "simple" | "good" | "other"

    def to_json(self) -> dict:
        return {
            "ramification": [
                {"place": place, "type": list(pat.parts)} for place, pat in self.places
            ],
            "classification": self.classification,
        }


class CoverData:
    """Lazy per-model pipeline cache."""

    def __init__(self, model: CoverModel):
        self.model = model
        self._fin = None
        self._inf = None
        self._reduced = None
        self._transition = None

    def finite_order(self) -> OrderBasis:
        if self._fin is None:
            self._fin = _maximal_order(self.model.f)
        return self._fin

    def infinite_order(self) -> OrderBasis:
        if self._inf is None:
            self._inf = _maximal_order(infinite_patch_polynomial(self.model))
        return self._inf

    def genus(self) -> int:
        fin = self.finite_order()
        inf = self.infinite_order()
        ord_u = _valuation_at_var(inf.disc)
        total = fin.disc.degree + ord_u
        if total % 2:
            raise CertificateError("odd branch degree (maximality bug)")
        g = total // 2 - self.model.d + 1
        if g < 0:
            raise CertificateError("negative genus (model not geometrically integral?)")
        return g

    def transition(self):
        """Rows: finite-patch basis in coordinates of the infinite-patch basis;
        entries Laurent, returned as (numer UniPoly in t, shift k) pairs with
        value numer / t^k."""
        if self._transition is not None:
            return self._transition
        model = self.model
        p, d, m = model.p, model.d, model.m_inf
        fin = self.finite_order()
        inf = self.infinite_order()
        w_rows = []
        for i in range(d):
            row = []
            for j in range(d):
                # y^j = x^j / t^(j m); coefficient r(u) -> r(1/t)
                r = inf.num[i][j]
                if r.is_zero():
                    row.append(RationalFunction.const(p, 0, "t"))
                    continue
                numer = r.reverse().with_var("t")
                den_u = inf.den
                den_t = den_u.reverse().with_var("t")
                # r(u)/den(u) at u = 1/t equals numer * t^(deg den - deg r) / den_t
                shift = den_u.degree - r.degree - j * m
                if shift >= 0:
                    row.append(RationalFunction(numer.shift(shift), den_t))
                else:
                    row.append(
                        RationalFunction(
                            numer, den_t * UniPoly.monomial(p, -shift, 1, "t")
                        )
                    )
            w_rows.append(row)
        w_inv = ratmat_inverse(w_rows)
        fin_rows = fin.basis_rows()
        c_rows = []
        for i in range(d):
            row = []
            for j in range(d):
                acc = RationalFunction.const(p, 0, "t")
                for k in range(d):
                    acc = acc + fin_rows[i][k] * w_inv[k][j]
                lp = acc.laurent_parts()
                if lp is None:
                    raise CertificateError(
                        "transition matrix entry is not Laurent; patches disagree"
                    )
                row.append(lp)
            c_rows.append(row)
        self._transition = c_rows
        return c_rows

    def reduced(self) -> ReducedBasisResult:
        if self._reduced is not None:
            return self._reduced
        model = self.model
        p, d = model.p, model.d
        c_rows = self.transition()
        shift = max((k for row in c_rows for (_, k) in row), default=0)
        mat = [
            [numer.shift(shift - k) for (numer, k) in row] for row in c_rows
        ]
        canon = popov_normalize(mat)
        if len(canon) != d:
            raise CertificateError("transition matrix is rank-deficient")
        # transform U with U * mat = canon (must be unimodular over F_p[t])
        mat_t = [[mat[j][i] for j in range(d)] for i in range(d)]
        rhs = [[canon[j][i] for j in range(d)] for i in range(d)]
        sol = polymat_solve(mat_t, rhs)
        u_rows = [[sol[j][i].as_poly() for j in range(d)] for i in range(d)]
        degs = [max(f.degree for f in row if not f.is_zero()) for row in canon]
        exps = [dg - shift for dg in degs]
        order = sorted(range(d), key=lambda i: exps[i])
        exps_sorted = [exps[i] for i in order]
        if exps_sorted[0] != 0 or (d > 1 and exps_sorted[1] <= 0):
            raise ModelError(
                "scrollar exponents %s: constant field extension or "
                "disconnected model" % exps_sorted
            )
        fin_rows = self.finite_order().basis_rows()
        basis = []
        for i in order:
            row = []
            for j in range(d):
                acc = RationalFunction.const(p, 0, "t")
                for k in range(d):
                    acc = acc + fin_rows[k][j] * u_rows[i][k]
                row.append(acc)
            basis.append(row)
        # normalize the degree-0 row to the element 1
        first = basis[0]
        if any(not first[j].is_zero() for j in range(1, d)) or first[0].is_zero():
            raise ModelError("degree-0 element is not constant; disconnected model")
        scale = first[0].inverse()
        basis[0] = [first[0] * scale] + [first[j] for j in range(1, d)]
        g = self.genus()
        if sum(exps_sorted[1:]) != g + d - 1:
            raise CertificateError(
                "reduced-basis certificate failed: sum %d != g + d - 1 = %d"
                % (sum(exps_sorted[1:]), g + d - 1)
            )
        if max(exps_sorted) * d > 2 * g + 2 * d - 2:
            raise CertificateError("largest exponent violates the Maroni bound")
        self._reduced = ReducedBasisResult(model, basis, tuple(exps_sorted), g)
        return self._reduced


_COVER_CACHE: dict[CoverModel, CoverData] = {}


def cover_data(model: CoverModel) -> CoverData:
    if model not in _COVER_CACHE:
        _COVER_CACHE[model] = CoverData(model)
    return _COVER_CACHE[model]


def maximal_order(model: CoverModel, patch: str) -> OrderBasis:
    data = cover_data(model)
    if patch == "finite":
        return data.finite_order()
    if patch == "infinite":
        return data.infinite_order()
    raise ValueError("patch must be 'finite' or 'infinite'")


def genus(model: CoverModel) -> int:
    return cover_data(model).genus()


def reduced_basis(model: CoverModel) -> ReducedBasisResult:
    return cover_data(model).reduced()


def scrollar_profile(model: CoverModel) -> ScrollarProfile:
    return reduced_basis(model).profile()


def _valuation_at_var(f: UniPoly) -> int:
    if f.is_zero():
        raise ZeroDivisionError
    nz = np.nonzero(f.c)[0]
    return int(nz[0])


# -- traces and duals -------------------------------------------------------


def element_trace(model: CoverModel, coords) -> RationalFunction:
    """Trace of an element given by power-basis coordinates."""
    s = _power_traces(model.f, model.d - 1)
    acc = RationalFunction.const(model.p, 0, "t")
    for k in range(model.d):
        acc = acc + _as_rf(model.p, coords[k]) * s[k]
    return acc


def _as_rf(p, e) -> RationalFunction:
    if isinstance(e, RationalFunction):
        return e
    if isinstance(e, UniPoly):
        return RationalFunction.from_poly(e)
    return RationalFunction.const(p, int(e), "t")


def trace_zero_basis(result: ReducedBasisResult) -> ReducedBasisResult:
    """Replace b_i by b_i - Tr(b_i)/d for i >= 1; invariants are unchanged."""
    model = result.model
    d = model.d
    inv_d = modinv(d % model.p, model.p)
    basis = [list(result.basis[0])]
    for i in range(1, d):
        tr = element_trace(model, result.basis[i])
        adjust = tr * inv_d
        if not adjust.is_poly():
            raise CertificateError("trace of integral element is not integral")
        if adjust.num.degree > result.exponents[i]:
            raise CertificateError("trace correction breaks reducedness")
        row = list(result.basis[i])
        row[0] = row[0] - adjust
        basis.append(row)
    return ReducedBasisResult(model, basis, result.exponents, result.genus)


def dual_basis(model: CoverModel, basis) -> list:
    """Trace-dual rows: Tr(b_i b*_j) = delta_ij."""
    d = model.d
    p = model.p
    s = _power_traces(model.f, 2 * d - 2)
    gram = []
    for i in range(d):
        row = []
        for j in range(d):
            prod = _rf_mul_mod(model.f, basis[i], basis[j])
            acc = RationalFunction.const(p, 0, "t")
            for k in range(d):
                acc = acc + prod[k] * s[k]
            row.append(acc)
        gram.append(row)
    ginv = ratmat_inverse(gram)
    out = []
    for i in range(d):
        row = []
        for j in range(d):
            acc = RationalFunction.const(p, 0, "t")
            for k in range(d):
                acc = acc + ginv[i][k] * basis[k][j]
            row.append(acc)
        out.append(row)
    return out


def _rf_mul_mod(F: XPoly, v, w):
    """Product of rational coordinate vectors mod F."""
    p = F.p
    dv = UniPoly.one(p, "t")
    for e in v:
        dv = dv * _as_rf(p, e).den.exact_div(dv.gcd(_as_rf(p, e).den))
    dw = UniPoly.one(p, "t")
    for e in w:
        dw = dw * _as_rf(p, e).den.exact_div(dw.gcd(_as_rf(p, e).den))
    v_cleared = [(_as_rf(p, e) * dv).as_poly() for e in v]
    w_cleared = [(_as_rf(p, e) * dw).as_poly() for e in w]
    prod = _mul_mod(F, v_cleared, w_cleared)
    den = dv * dw
    return [RationalFunction(e, den) for e in prod]


# -- ramification -----------------------------------------------------------


def _pattern_at_prime(order: OrderBasis, pi: UniPoly) -> Partition:
    """Geometric ramification pattern above (each geometric point of) pi,
    from the radical filtration of O/pi O: the pattern is the conjugate of
    (dim A/R, dim R/R^2, ...)."""
    d = order.d
    fq = _Fq(pi)
    num, den = order.local.get(pi, (order.num, order.den))
    table = _structure_constants(order.F, num, den)
    tq = _reduced_table(table, fq, d)
    rad = _radical_mod(table, fq, d)
    layers = [d]
    current = rad
    while current:
        layers.append(len(current))
        nxt = []
        for a in current:
            for b in rad:
                nxt.append(_algebra_mul(tq, fq, d, a, b))
        current = _fq_row_space(nxt, fq)
    dims = [layers[i] - layers[i + 1] for i in range(len(layers) - 1)] + [layers[-1]]
    # dims[k] = dim R^k / R^(k+1); conjugate partition gives the pattern
    n_k = dims
    pattern = []
    col = len(n_k)
    while col > 0:
        pattern.extend([col] * (n_k[col - 1] - (n_k[col] if col < len(n_k) else 0)))
        col -= 1
    pattern = [v for v in pattern if v > 0]
    pattern.sort(reverse=True)
    return Partition(tuple(pattern))


def _fq_row_space(rows, fq: _Fq):
    """Reduced basis of the row space over the residue field."""
    if not rows:
        return []
    m = [list(r) for r in rows]
    ncols = len(m[0])
    basis = []
    pivots = {}
    for row in m:
        row = list(row)
        for c, i in sorted(pivots.items()):
            if not fq.is_zero(row[c]):
                coef = row[c]
                basis_row = basis[i]
                row = [fq.sub(row[j], fq.mul(coef, basis_row[j])) for j in range(ncols)]
        lead = next((c for c in range(ncols) if not fq.is_zero(row[c])), None)
        if lead is None:
            continue
        inv = fq.inv(row[lead])
        row = [fq.mul(inv, e) for e in row]
        pivots[lead] = len(basis)
        basis.append(row)
    return basis


def ramification_report(model: CoverModel) -> RamificationReport:
    data = cover_data(model)
    fin = data.finite_order()
    inf = data.infinite_order()
    d = model.d
    places = []
    simple_pat = Partition((2,) + (1,) * (d - 2))
    good_pat = Partition((3,) + (1,) * (d - 3)) if d >= 3 else None
    for pi, mult in factorize(fin.disc):
        if mult == 1:
            pat = simple_pat
        else:
            pat = _pattern_at_prime(fin, pi)
        places.append((str(pi), pat))
    v = _valuation_at_var(inf.disc)
    if v == 1:
        places.append(("infinity", simple_pat))
    elif v >= 2:
        places.append(("infinity", _pattern_at_prime(inf, UniPoly.gen(model.p, "u"))))
    for _, pat in places:
        if any(e % model.p == 0 for e in pat.parts):
            raise WildRamificationError("wild ramification at a branch place")
    if all(pat == simple_pat for _, pat in places):
        cls = "simple"
    elif good_pat is not None and all(
        pat in (simple_pat, good_pat) for _, pat in places
    ):
        cls = "good"
    else:
        cls = "other"
    return RamificationReport(places, cls)


def bounded_integral_dimension(model: CoverModel, r: int) -> int:
    """dim over F_p of {v in O : t^(-r) v integral at infinity}, computed by
    direct linear algebra on the transition matrix (independent of the
    reduced-basis computation)."""
    from .exactalg import gflin

    data = cover_data(model)
    c_rows = data.transition()
    d = model.d
    p = model.p
    if r < 0:
        return 0
    # v = sum_i q_i(t) b_i, deg q_i <= r + slack; the slack absorbs any skew
    # between the working basis and a reduced one (generous Cramer bound)
    shift = max(0, max(k for row in c_rows for (_, k) in row))
    entry_deg = max(
        max(numer.degree, 0) + shift - k for row in c_rows for (numer, k) in row
    )
    slack = (d - 1) * entry_deg + shift
    bound = r + slack
    m_max = bound + max(
        numer.degree - k for row in c_rows for (numer, k) in row
        if not numer.is_zero()
    )
    # unknowns: coefficients of q_i; condition rows: coordinate j at degree m
    # for every r < m <= m_max; coefficient of t^m in q_i t^a slot is
    # numer_ij[m - a + k_ij]
    ncols = d * (bound + 1)
    nrows = d * max(0, m_max - r)
    mat = np.zeros((nrows, ncols), dtype=np.int64)
    for i in range(d):
        for a in range(bound + 1):
            cc = i * (bound + 1) + a
            for j in range(d):
                numer, k = c_rows[i][j]
                if numer.is_zero():
                    continue
                for mi, m in enumerate(range(r + 1, m_max + 1)):
                    idx = m - a + k
                    if 0 <= idx <= numer.degree:
                        mat[j * (m_max - r) + mi, cc] = numer.coeff(idx)
    return ncols - gflin.rank(mat, p)


def analyze(model: CoverModel) -> dict:
    """Full report: genus, scrollar profile, ramification."""
    red = reduced_basis(model)
    report = ramification_report(model)
    out = {
        "genus": red.genus,
        "scrollar": list(red.profile().values),
    }
    out.update(report.to_json())
    return out


# ---------------------------------------------------------------------------
# seeded random curves on Hirzebruch surfaces
# ---------------------------------------------------------------------------


def generate_curve(
    c: int, d: int, e: int, p: int, seed: int, allow_good: bool = False,
    max_retries: int = 64,
) -> CoverModel:
    """Random bidegree-(c,d) curve on the surface of invariant e: seeded
    coefficients on the lattice points of the defining polygon, monicized in
    x, retried until the branching is simple (or merely good with
    allow_good)."""
    if c < 0 or e < 0 or d < 2:
        raise ModelError("need c, e >= 0 and d >= 2")
    if p <= d:
        raise WildRamificationError("p <= d risks wild ramification")
    rng = random.Random((seed, c, d, e, p, "gen-curve"))
    for _ in range(max_retries):
        rows = []
        for j in range(d + 1):
            width = c + (d - j) * e
            rows.append([rng.randrange(p) for _ in range(width + 1)])
        # pin the polygon: corner monomials must appear
        for (j, i) in ((0, 0), (d, 0), (d, c), (0, c + d * e)):
            if rows[j][i] == 0:
                rows[j][i] = 1 + rng.randrange(p - 1)
        coeffs = [UniPoly(p, row, "t") for row in rows]
        lead = coeffs[d]
        # monicize: x -> x / lead, scaled by lead**(d-1)
        monic_coeffs = [
            coeffs[i] * lead ** (d - 1 - i) if i < d else UniPoly.one(p, "t")
            for i in range(d + 1)
        ]
        f = XPoly(p, monic_coeffs, "x")
        try:
            model = validate_cover(p, f, seed=seed)
            report = ramification_report(model)
        except ModelError:
            continue
        if report.classification == "simple":
            return model
        if allow_good and report.classification == "good":
            return model
    raise ModelError("no suitably branched curve found in %d retries" % max_retries)
