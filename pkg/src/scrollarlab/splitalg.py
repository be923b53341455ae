"""The splitting algebra of a monic degree-d polynomial: the d!-dimensional
quotient of F_p(t)[x_1..x_d] by the symmetric-function relations, realized on
the staircase monomial basis x^a with a_i < i.

The defining rewriting data are the polynomials g_d = f, g_{k-1} = g_k/(T - x_k)
(synthetic division), giving the reduction x_k^k -> lower staircase terms;
monomial reductions are memoized.  Two coefficient flavours are provided: the
symbolic algebra with UniPoly-in-t values (for exact operator matrices on
small dimensions) and a scalar algebra over F_p obtained by specializing t
(for fast per-sample-point work on dimensions up to 720).
"""

from __future__ import annotations

import numpy as np

from .exactalg import UniPoly, XPoly
from .exactalg.poly import modinv

Mono = tuple  # exponent tuple (a_1, ..., a_d), a_i <= i - 1 once reduced


class _AlgebraCore:
    """Shared staircase machinery; subclasses supply the coefficient ring."""

    def _ring_one(self):
        raise NotImplementedError

    def _ring_mul(self, a, b):
        raise NotImplementedError

    def _ring_add(self, a, b):
        raise NotImplementedError

    def _ring_neg(self, a):
        raise NotImplementedError

    def _ring_is_zero(self, a) -> bool:
        raise NotImplementedError

    def _setup(self, d: int, f_coeffs):
        self.d = d
        self._reduce_memo: dict[Mono, dict] = {}
        exps = [()]
        for k in range(1, d + 1):
            exps = [e + (a,) for e in exps for a in range(k)]
        exps.sort()
        self.basis: list[Mono] = exps
        self.index: dict[Mono, int] = {m: i for i, m in enumerate(exps)}
        self._build_rules(f_coeffs)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def one_mono(self) -> Mono:
        return (0,) * self.d

    def _build_rules(self, f_coeffs):
        d = self.d
        self.rules: dict[int, dict[Mono, object]] = {}
        g = [{self.one_mono(): f_coeffs[j]} for j in range(d)]
        for k in range(d, 0, -1):
            rule: dict[Mono, object] = {}
            for j in range(k):
                for mono, coef in g[j].items():
                    m = list(mono)
                    m[k - 1] += j
                    key = tuple(m)
                    neg = self._ring_neg(coef)
                    cur = rule.get(key)
                    rule[key] = neg if cur is None else self._ring_add(cur, neg)
            self.rules[k] = {
                m: c for m, c in rule.items() if not self._ring_is_zero(c)
            }
            if k == 1:
                break
            b = [None] * (k - 1)
            carry = {self.one_mono(): self._ring_one()}
            for j in range(k - 2, -1, -1):
                shifted = self.mul_by_var(carry, k)
                b_j = dict(g[j + 1])
                for mono, coef in shifted.items():
                    cur = b_j.get(mono)
                    b_j[mono] = coef if cur is None else self._ring_add(cur, coef)
                b[j] = {
                    m: c for m, c in b_j.items() if not self._ring_is_zero(c)
                }
                carry = b[j]
            g = b

    def reduce_pure(self, mono: Mono) -> dict:
        """Staircase reduction of the bare monomial x^mono, memoized."""
        memo = self._reduce_memo
        cached = memo.get(mono)
        if cached is not None:
            return cached
        k = next((i + 1 for i in range(self.d) if mono[i] >= i + 1), None)
        if k is None:
            out = {mono: self._ring_one()}
            memo[mono] = out
            return out
        rest = list(mono)
        rest[k - 1] -= k
        out: dict = {}
        for rm, rc in self.rules[k].items():
            combined = tuple(rest[i] + rm[i] for i in range(self.d))
            for m2, c2 in self.reduce_pure(combined).items():
                prod = self._ring_mul(rc, c2)
                cur = out.get(m2)
                val = prod if cur is None else self._ring_add(cur, prod)
                if self._ring_is_zero(val):
                    out.pop(m2, None)
                else:
                    out[m2] = val
        memo[mono] = out
        return out

    def reduce_monomial(self, mono: Mono, coef, out: dict):
        for m2, c2 in self.reduce_pure(mono).items():
            prod = self._ring_mul(coef, c2)
            cur = out.get(m2)
            val = prod if cur is None else self._ring_add(cur, prod)
            if self._ring_is_zero(val):
                out.pop(m2, None)
            else:
                out[m2] = val
        return out

    def mul_by_var(self, elem: dict, k: int) -> dict:
        out: dict = {}
        for mono, coef in elem.items():
            m = list(mono)
            m[k - 1] += 1
            self.reduce_monomial(tuple(m), coef, out)
        return out

    def mono_mul(self, m1: Mono, m2: Mono) -> dict:
        combined = tuple(a + b for a, b in zip(m1, m2))
        return dict(self.reduce_pure(combined))

    def elem_mul(self, a: dict, b: dict) -> dict:
        out: dict = {}
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                combined = tuple(x + y for x, y in zip(m1, m2))
                self.reduce_monomial(combined, self._ring_mul(c1, c2), out)
        return out

    def elem_add(self, a: dict, b: dict) -> dict:
        out = dict(a)
        for m, c in b.items():
            cur = out.get(m)
            s = c if cur is None else self._ring_add(cur, c)
            if self._ring_is_zero(s):
                out.pop(m, None)
            else:
                out[m] = s
        return out

    def elem_scale(self, a: dict, c) -> dict:
        out = {}
        for m, v in a.items():
            prod = self._ring_mul(v, c)
            if not self._ring_is_zero(prod):
                out[m] = prod
        return out

    def var_elem(self, k: int) -> dict:
        m = [0] * self.d
        m[k - 1] = 1
        return dict(self.reduce_pure(tuple(m)))

    def theta_exponents(self, group_elements, weights) -> list[Mono]:
        """Exponent vectors of the invariant sum_h prod_i x_{h(i)}^{w_i};
        h is a 0-based permutation tuple."""
        out = []
        for h in group_elements:
            exp = [0] * self.d
            for i, w in enumerate(weights):
                exp[h[i]] += w
            out.append(tuple(exp))
        return out


class SplittingAlgebra(_AlgebraCore):
    """Symbolic flavour: coefficients are UniPoly in the base variable."""

    def __init__(self, f: XPoly):
        if not f.is_monic():
            raise ValueError("splitting algebra needs a monic polynomial")
        self.f = f
        self.p = f.p
        self.var = f.aux_var()
        self._one = UniPoly.one(f.p, self.var)
        self._setup(f.degree, [f.coeff(j) for j in range(f.degree)])

    def _ring_one(self):
        return self._one

    def _ring_mul(self, a, b):
        return a * b

    def _ring_add(self, a, b):
        return a + b

    def _ring_neg(self, a):
        return -a

    def _ring_is_zero(self, a):
        return a.is_zero()

    def embed_k_element(self, coords, conjugate: int) -> dict:
        """Image of an element of K = F_p(t)[x]/(f), given by power-basis
        coordinates (UniPoly), under the embedding x -> x_conjugate."""
        xk = self.var_elem(conjugate)
        acc: dict = {}
        power = {self.one_mono(): self._one}
        for j, cj in enumerate(coords):
            if j:
                power = self.elem_mul(power, xk)
            if not cj.is_zero():
                acc = self.elem_add(acc, self.elem_scale(power, cj))
        return acc

    def vandermonde_delta(self) -> dict:
        """delta = prod_{i<j} (x_i - x_j)."""
        acc = {self.one_mono(): self._one}
        for i in range(1, self.d + 1):
            for j in range(i + 1, self.d + 1):
                diff = self.elem_add(
                    self.var_elem(i), self.elem_scale(self.var_elem(j), -1)
                )
                acc = self.elem_mul(acc, diff)
        return acc

    def multiplication_tensor(self, terms: list[Mono]) -> np.ndarray:
        """Dense coefficient tensor M[i, j, k]: coefficient of t^k in the
        (i, j) entry of the matrix of multiplication by the sum of the
        monomial terms; columns are images of basis monomials."""
        n = self.dim
        cols = []
        maxdeg = 0
        for mono in self.basis:
            out: dict = {}
            for term in terms:
                combined = tuple(a + b for a, b in zip(mono, term))
                self.reduce_monomial(combined, self._one, out)
            col = {self.index[m]: c for m, c in out.items()}
            for c in col.values():
                maxdeg = max(maxdeg, c.degree)
            cols.append(col)
        tensor = np.zeros((n, n, maxdeg + 1), dtype=np.int64)
        for j, col in enumerate(cols):
            for i, c in col.items():
                tensor[i, j, : len(c.c)] = c.c
        return tensor

    def matrix_rows(self, tensor: np.ndarray):
        """The operator as a UniPoly matrix (rows) from its tensor."""
        n = tensor.shape[0]
        return [
            [UniPoly(self.p, tensor[i, j]) for j in range(n)] for i in range(n)
        ]


class ScalarSplittingAlgebra(_AlgebraCore):
    """Specialized flavour over F_p: f's coefficients evaluated at t = t0."""

    def __init__(self, p: int, coeffs):
        self.p = p
        self._setup(len(coeffs), [int(c) % p for c in coeffs])

    def _ring_one(self):
        return 1

    def _ring_mul(self, a, b):
        return a * b % self.p

    def _ring_add(self, a, b):
        return (a + b) % self.p

    def _ring_neg(self, a):
        return (-a) % self.p

    def _ring_is_zero(self, a):
        return a == 0

    def variable_matrices(self) -> list[np.ndarray]:
        """Dense mod-p matrices of multiplication by x_1, ..., x_d."""
        n = self.dim
        mats = []
        for k in range(1, self.d + 1):
            m = np.zeros((n, n), dtype=np.int64)
            for j, mono in enumerate(self.basis):
                bumped = list(mono)
                bumped[k - 1] += 1
                for m2, c2 in self.reduce_pure(tuple(bumped)).items():
                    m[self.index[m2], j] = c2
            mats.append(m)
        return mats


def theta_apply(mats, weight_vectors, v: np.ndarray, p: int) -> np.ndarray:
    """Image of `v` under multiplication by sum_h prod_k x_k^(e_hk), using the
    per-variable matrices (which commute)."""
    out = np.zeros_like(v)
    for exps in weight_vectors:
        u = v
        for k, e in enumerate(exps):
            for _ in range(e):
                u = mats[k] @ u % p
        out = (out + u) % p
    return out


def krylov_minpoly_apply(apply_fn, start: np.ndarray, p: int, maxdeg: int):
    """Monic minimal polynomial of the operator `apply_fn` relative to
    `start`, as an int64 coefficient array (ascending), or None past maxdeg."""
    from .exactalg import gflin

    rows = [start % p]
    v = start % p
    for _ in range(maxdeg):
        v = apply_fn(v)
        stack = np.array(rows + [v], dtype=np.int64)
        kern = gflin.nullspace(stack.T, p)
        if len(kern):
            lam = kern[0]
            j = len(rows)
            inv = modinv(int(lam[j]), p)
            return lam * inv % p
        rows.append(v)
    return None


def krylov_minpoly(mat: np.ndarray, start: np.ndarray, p: int, maxdeg: int):
    return krylov_minpoly_apply(lambda v: mat @ v % p, start, p, maxdeg)


def xpoly_nth_root(s: XPoly, n: int) -> XPoly:
    """Exact monic n-th root in the main variable; raises when s is not a
    perfect n-th power."""
    if s.is_zero() or not s.is_monic() or s.degree % n:
        raise ArithmeticError("not a monic n-th power")
    p = s.p
    m = s.degree // n
    var = s.aux_var()
    coeffs = [UniPoly.zero(p, var) for _ in range(m)] + [UniPoly.one(p, var)]
    inv_n = modinv(n % p, p)
    for j in range(1, m + 1):
        partial = XPoly(p, coeffs, s.main) ** n
        delta = s.coeff(n * m - j) - partial.coeff(n * m - j)
        coeffs[m - j] = delta * inv_n
    root = XPoly(p, coeffs, s.main)
    if not (root**n == s):
        raise ArithmeticError("not a perfect %d-th power" % n)
    return root
