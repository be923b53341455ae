"""Factorization of univariate polynomials over F_p, irreducibility testing,
and small extension fields F_{p^m} realized as quotient rings.

The randomized pieces (equal-degree splitting, irreducible generation) take an
explicit seed and are reproducible.
"""

from __future__ import annotations

import random

import numpy as np

from .poly import UniPoly, modinv


def squarefree_decomposition(f: UniPoly) -> list[tuple[UniPoly, int]]:
    """Yun-style decomposition valid in characteristic p; returns monic pairs
    (g, m) with product(g**m) = monic(f) and the g squarefree, pairwise coprime."""
    if f.is_zero():
        raise ZeroDivisionError("squarefree decomposition of 0")
    f = f.monic()
    out: dict[int, UniPoly] = {}
    _sqf_rec(f, 1, out)
    merged: dict[int, UniPoly] = {}
    for m, g in out.items():
        if g.degree > 0:
            merged[m] = merged.get(m, UniPoly.one(f.p, f.var)) * g
    return sorted(((g, m) for m, g in merged.items()), key=lambda t: (t[1], t[0].degree))


def _sqf_rec(f: UniPoly, mult: int, out: dict[int, UniPoly]):
    p = f.p
    if f.is_constant():
        return
    df = f.derivative()
    if df.is_zero():
        # f is a p-th power
        _sqf_rec(f.pth_root(), mult * p, out)
        return
    c = f.gcd(df)
    w = f.exact_div(c)
    i = 1
    while not w.is_one():
        y = w.gcd(c)
        factor = w.exact_div(y)
        if factor.degree > 0:
            key = mult * i
            out[key] = out.get(key, UniPoly.one(p, f.var)) * factor
        w = y
        c = c.exact_div(y)
        i += 1
    if not c.is_one():
        _sqf_rec(c, mult, out)


def _pow_mod(base: UniPoly, e: int, mod: UniPoly) -> UniPoly:
    result = UniPoly.one(base.p, base.var)
    base = base % mod
    while e:
        if e & 1:
            result = result * base % mod
        base = base * base % mod
        e >>= 1
    return result


def _frobenius_power(f: UniPoly, k: int) -> UniPoly:
    """x**(p**k) mod f."""
    x = UniPoly.gen(f.p, f.var)
    g = x
    for _ in range(k):
        g = _pow_mod(g, f.p, f)
    return g


def distinct_degree_factor(f: UniPoly) -> list[tuple[UniPoly, int]]:
    """Split a monic squarefree f into products of irreducibles of equal degree."""
    p = f.p
    x = UniPoly.gen(p, f.var)
    out = []
    h = x
    rest = f
    d = 0
    while rest.degree > 2 * (d + 1) - 1 and rest.degree > 0:
        d += 1
        h = _pow_mod(h, p, rest)
        g = rest.gcd(h - x)
        if not g.is_one():
            out.append((g, d))
            rest = rest.exact_div(g)
            h = h % rest
    if rest.degree > 0:
        out.append((rest, rest.degree))
    return out


def _equal_degree_split(f: UniPoly, d: int, rng: random.Random) -> list[UniPoly]:
    """Cantor-Zassenhaus on a monic squarefree product of degree-d irreducibles."""
    p = f.p
    if f.degree == d:
        return [f]
    exponent = (p**d - 1) // 2
    while True:
        a = UniPoly(p, [rng.randrange(p) for _ in range(f.degree)], f.var)
        if a.degree < 1:
            continue
        g = f.gcd(a)
        if 0 < g.degree < f.degree:
            return _equal_degree_split(g, d, rng) + _equal_degree_split(
                f.exact_div(g), d, rng
            )
        b = _pow_mod(a, exponent, f) - 1
        g = f.gcd(b)
        if 0 < g.degree < f.degree:
            return _equal_degree_split(g, d, rng) + _equal_degree_split(
                f.exact_div(g), d, rng
            )


def factorize(f: UniPoly, seed: int = 0) -> list[tuple[UniPoly, int]]:
    """Monic irreducible factors with multiplicities, deterministically ordered.
    The product of factor**mult equals monic(f)."""
    if f.is_zero():
        raise ZeroDivisionError("factorization of 0")
    rng = random.Random((seed, f.p, f.degree, "factorize"))
    result = []
    for g, mult in squarefree_decomposition(f):
        for gd, d in distinct_degree_factor(g):
            for irr in _equal_degree_split(gd, d, rng):
                result.append((irr.monic(), mult))
    result.sort(key=lambda t: (t[0].degree, t[0].c.tobytes()))
    return result


def is_irreducible(f: UniPoly) -> bool:
    """Rabin test: deterministic."""
    n = f.degree
    if n <= 0:
        return False
    if n == 1:
        return True
    f = f.monic()
    x = UniPoly.gen(f.p, f.var)
    h = _frobenius_power(f, n)
    if not (h - x) % f == UniPoly.zero(f.p, f.var):
        return False
    # at each maximal proper subfield degree n/q the Frobenius orbit must be free
    for q in {qq for qq in range(2, n + 1) if n % qq == 0 and _is_prime_small(qq)}:
        g = _frobenius_power(f, n // q) - x
        if not f.gcd(g).is_one():
            return False
    return True


def _is_prime_small(n: int) -> bool:
    return n > 1 and all(n % k for k in range(2, int(n**0.5) + 1))


def irreducible_polynomial(p: int, degree: int, seed: int = 0, var: str = "z") -> UniPoly:
    """Seeded search for a monic irreducible of the given degree."""
    rng = random.Random((seed, p, degree, "irr"))
    while True:
        c = [rng.randrange(p) for _ in range(degree)] + [1]
        f = UniPoly(p, c, var)
        if is_irreducible(f):
            return f


def is_square_poly(f: UniPoly) -> bool:
    """True when f is a square in F_p[t] (p odd)."""
    if f.is_zero():
        return True
    if pow(f.lc(), (f.p - 1) // 2, f.p) != 1:
        return False
    return all(m % 2 == 0 for _, m in squarefree_decomposition(f))


def poly_sqrt(f: UniPoly) -> UniPoly:
    """A square root of a perfect-square f (monic-normalized leading choice)."""
    if f.is_zero():
        return f
    lc = f.lc()
    s = _sqrt_modp(lc, f.p)
    root = UniPoly.const(f.p, s, f.var)
    for g, m in squarefree_decomposition(f):
        if m % 2:
            raise ArithmeticError("not a square")
        root = root * g ** (m // 2)
    return root


def _sqrt_modp(a: int, p: int) -> int:
    """Tonelli-Shanks; raises if a is a non-residue."""
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        raise ArithmeticError("not a quadratic residue")
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


class GFExt:
    """The field F_{p^m} = F_p[z]/(modulus); elements are int64 coefficient
    tuples of length m."""

    def __init__(self, p: int, modulus: UniPoly):
        self.p = p
        self.modulus = modulus.monic()
        self.m = modulus.degree
        self._mod_c = self.modulus.c

    def zero(self):
        return np.zeros(self.m, dtype=np.int64)

    def one(self):
        e = np.zeros(self.m, dtype=np.int64)
        e[0] = 1
        return e

    def from_int(self, a: int):
        e = np.zeros(self.m, dtype=np.int64)
        e[0] = a % self.p
        return e

    def gen(self):
        e = np.zeros(self.m, dtype=np.int64)
        if self.m > 1:
            e[1] = 1
        else:
            e[0] = (-self.modulus.c[0]) % self.p
        return e

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        c = np.convolve(a, b) % self.p
        # reduce mod modulus
        for i in range(len(c) - 1, self.m - 1, -1):
            if c[i]:
                c[i - self.m : i] = (c[i - self.m : i] - c[i] * self._mod_c[:-1]) % self.p
                c[i] = 0
        return c[: self.m] % self.p

    def is_zero(self, a):
        return not np.any(a)

    def eq(self, a, b):
        return bool(np.all((a - b) % self.p == 0))

    def inv(self, a):
        fa = UniPoly(self.p, a, self.modulus.var)
        if fa.is_zero():
            raise ZeroDivisionError
        g, s, _ = fa.xgcd(self.modulus)
        if not g.is_one():
            raise ZeroDivisionError("non-invertible element")
        out = np.zeros(self.m, dtype=np.int64)
        out[: len(s.c)] = s.c
        return out % self.p

    def pow(self, a, e: int):
        result = self.one()
        base = a % self.p
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def key(self, a) -> tuple:
        return tuple(int(v) for v in a)


def roots_in_extension(f0: UniPoly, field: GFExt, seed: int = 0) -> list:
    """All roots of a squarefree F_p-polynomial inside the extension field,
    in a fixed enumeration order.  Every irreducible factor degree of f0 must
    divide field.m."""
    fld = field
    # lift f0 into the extension and split into linear factors
    poly = [fld.from_int(int(c)) for c in f0.c]
    rng = random.Random((seed, fld.p, fld.m, "roots"))
    roots: list = []
    _collect_roots(poly, fld, rng, roots)
    roots.sort(key=fld.key)
    if len(roots) != f0.degree:
        raise ArithmeticError("extension does not split the polynomial")
    return roots


def _pv_trim(v: list, fld: GFExt) -> list:
    while v and fld.is_zero(v[-1]):
        v.pop()
    return v


def _pv_mod(a: list, b: list, fld: GFExt) -> list:
    a = [x.copy() for x in a]
    db = len(b) - 1
    inv = fld.inv(b[-1])
    for i in range(len(a) - 1, db - 1, -1):
        if fld.is_zero(a[i]):
            continue
        q = fld.mul(a[i], inv)
        for j in range(db + 1):
            a[i - db + j] = fld.sub(a[i - db + j], fld.mul(q, b[j]))
    return _pv_trim(a[:db], fld)


def _pv_gcd(a: list, b: list, fld: GFExt) -> list:
    a, b = [x.copy() for x in a], [x.copy() for x in b]
    while b:
        a, b = b, _pv_mod(a, b, fld)
    if a:
        inv = fld.inv(a[-1])
        a = [fld.mul(x, inv) for x in a]
    return a


def _pv_powmod(base: list, e: int, mod: list, fld: GFExt) -> list:
    result = [fld.one()]
    base = _pv_mod(base, mod, fld)
    while e:
        if e & 1:
            result = _pv_mod(_pv_mul(result, base, fld), mod, fld)
        base = _pv_mod(_pv_mul(base, base, fld), mod, fld)
        e >>= 1
    return result


def _pv_mul(a: list, b: list, fld: GFExt) -> list:
    if not a or not b:
        return []
    out = [fld.zero() for _ in range(len(a) + len(b) - 1)]
    for i, x in enumerate(a):
        if fld.is_zero(x):
            continue
        for j, y in enumerate(b):
            out[i + j] = fld.add(out[i + j], fld.mul(x, y))
    return _pv_trim(out, fld)


def _collect_roots(poly: list, fld: GFExt, rng: random.Random, out: list):
    poly = _pv_trim([x.copy() for x in poly], fld)
    if len(poly) <= 1:
        return
    if len(poly) == 2:
        # a + b z = 0  ->  z = -a/b
        out.append(fld.mul(fld.neg(poly[0]), fld.inv(poly[1])))
        return
    q = fld.p**fld.m
    while True:
        shift = np.array([rng.randrange(fld.p) for _ in range(fld.m)], dtype=np.int64)
        base = [shift, fld.one()]
        g = _pv_powmod(base, (q - 1) // 2, poly, fld)
        g = _pv_trim(g, fld)
        if g:
            g[0] = fld.sub(g[0], fld.one())
        else:
            g = [fld.neg(fld.one())]
        g = _pv_gcd(_pv_trim(g, fld), poly, fld)
        if 0 < len(g) - 1 < len(poly) - 1:
            _collect_roots(g, fld, rng, out)
            _collect_roots(_pv_exact_div(poly, g, fld), fld, rng, out)
            return


def _pv_exact_div(a: list, b: list, fld: GFExt) -> list:
    a = [x.copy() for x in a]
    db = len(b) - 1
    inv = fld.inv(b[-1])
    q = [fld.zero() for _ in range(len(a) - db)]
    for i in range(len(a) - 1, db - 1, -1):
        if fld.is_zero(a[i]):
            continue
        coef = fld.mul(a[i], inv)
        q[i - db] = coef
        for j in range(db + 1):
            a[i - db + j] = fld.sub(a[i - db + j], fld.mul(coef, b[j]))
    return _pv_trim(q, fld)
