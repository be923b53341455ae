"""Dense univariate polynomials over a prime field F_p, rational functions,
and polynomials in a second variable with F_p[t] coefficients.

Coefficient vectors are numpy int64 arrays with entries in [0, p).  The zero
polynomial is the empty array and has degree -1.  Multiplication uses a single
int64 convolution when p**2 * len fits in a machine word and falls back to
Kronecker substitution (big-int packing) otherwise, so any modulus p < 2**61
is supported exactly.
"""

from __future__ import annotations

import numpy as np

_INT63 = 1 << 62


def is_probable_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for n < 3.3 * 10**24."""
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41):
        if n % q == 0:
            return n == q
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def modinv(a: int, p: int) -> int:
    a = int(a) % p
    if a == 0:
        raise ZeroDivisionError("inverse of 0 mod %d" % p)
    return pow(a, p - 2, p)


def _trim(c: np.ndarray) -> np.ndarray:
    nz = np.nonzero(c)[0]
    if len(nz) == 0:
        return c[:0]
    return c[: nz[-1] + 1]


class UniPoly:
    """Univariate polynomial over F_p; coefficient c[i] multiplies var**i."""

    __slots__ = ("p", "c", "var")

    def __init__(self, p: int, coeffs, var: str = "t", check: bool = True):
        self.p = p
        c = np.asarray(coeffs, dtype=np.int64)
        if check:
            c = _trim(np.mod(c, p))
        self.c = c
        self.var = var

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero(p: int, var: str = "t") -> "UniPoly":
        return UniPoly(p, [], var, check=False)

    @staticmethod
    def const(p: int, a: int, var: str = "t") -> "UniPoly":
        a %= p
        return UniPoly(p, [a] if a else [], var, check=False)

    @staticmethod
    def one(p: int, var: str = "t") -> "UniPoly":
        return UniPoly.const(p, 1, var)

    @staticmethod
    def gen(p: int, var: str = "t") -> "UniPoly":
        return UniPoly(p, [0, 1], var, check=False)

    @staticmethod
    def monomial(p: int, k: int, a: int = 1, var: str = "t") -> "UniPoly":
        c = np.zeros(k + 1, dtype=np.int64)
        c[k] = a % p
        return UniPoly(p, c)

    # -- basic queries ------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.c) - 1

    def is_zero(self) -> bool:
        return len(self.c) == 0

    def is_one(self) -> bool:
        return len(self.c) == 1 and self.c[0] == 1

    def is_constant(self) -> bool:
        return len(self.c) <= 1

    def lc(self) -> int:
        return 0 if self.is_zero() else int(self.c[-1])

    def constant(self) -> int:
        return 0 if self.is_zero() else int(self.c[0])

    def coeff(self, k: int) -> int:
        return int(self.c[k]) if 0 <= k < len(self.c) else 0

    def is_monic(self) -> bool:
        return self.lc() == 1

    def __hash__(self):
        return hash((self.p, self.var, self.c.tobytes()))

    def __eq__(self, other):
        if isinstance(other, int):
            other = UniPoly.const(self.p, other, self.var)
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.p == other.p and len(self.c) == len(other.c) and bool(
            np.all(self.c == other.c)
        )

    def __bool__(self):
        return not self.is_zero()

    # -- arithmetic ---------------------------------------------------

    def _coerce(self, other) -> "UniPoly":
        if isinstance(other, UniPoly):
            if other.p != self.p:
                raise ValueError("mixed moduli")
            return other
        if isinstance(other, (int, np.integer)):
            return UniPoly.const(self.p, int(other), self.var)
        raise TypeError(type(other))

    def __add__(self, other):
        other = self._coerce(other)
        n = max(len(self.c), len(other.c))
        out = np.zeros(n, dtype=np.int64)
        out[: len(self.c)] = self.c
        out[: len(other.c)] += other.c
        return UniPoly(self.p, _trim(np.mod(out, self.p)), self.var, check=False)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly(self.p, _trim(np.mod(-self.c, self.p)), self.var, check=False)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, np.integer)):
            a = int(other) % self.p
            if a == 0:
                return UniPoly.zero(self.p, self.var)
            return UniPoly(
                self.p, _trim(self.c * a % self.p), self.var, check=False
            )
        other = self._coerce(other)
        if self.is_zero() or other.is_zero():
            return UniPoly.zero(self.p, self.var)
        n = min(len(self.c), len(other.c))
        if self.p * self.p * n < _INT63:
            out = np.convolve(self.c, other.c) % self.p
        else:
            out = _kronecker_mul(self.c, other.c, self.p)
        return UniPoly(self.p, _trim(out), self.var, check=False)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power")
        result = UniPoly.one(self.p, self.var)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other):
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        p = self.p
        if other.is_constant():
            inv = modinv(other.lc(), p)
            return self * inv, UniPoly.zero(p, self.var)
        r = self.c
        db = other.degree
        if len(r) - 1 < db:
            return UniPoly.zero(p, self.var), self
        qlen = len(r) - db
        if qlen * db > 4096 and p * p * (qlen + db) < _INT63:
            # division by power-series inversion of the reversed divisor
            ra = r[::-1].copy()
            rb = other.c[::-1].copy()
            inv_b = _series_inverse(rb, qlen, p)
            q_rev = np.convolve(ra[:qlen], inv_b)[:qlen] % p
            q = q_rev[::-1].copy()
            rem = (r[:db] - np.convolve(q, other.c)[:db]) % p
            return (
                UniPoly(p, _trim(q), self.var, check=False),
                UniPoly(p, _trim(rem), self.var, check=False),
            )
        r = r.copy()
        q = np.zeros(qlen, dtype=np.int64)
        inv = modinv(other.lc(), p)
        b = other.c
        for i in range(len(r) - 1, db - 1, -1):
            if r[i]:
                coef = r[i] * inv % p
                q[i - db] = coef
                r[i - db : i + 1] = (r[i - db : i + 1] - coef * b) % p
        return (
            UniPoly(p, _trim(q), self.var, check=False),
            UniPoly(p, _trim(r[:db]), self.var, check=False),
        )

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other) -> "UniPoly":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ArithmeticError("division was not exact")
        return q

    def monic(self) -> "UniPoly":
        if self.is_zero() or self.lc() == 1:
            return self
        return self * modinv(self.lc(), self.p)

    def gcd(self, other) -> "UniPoly":
        a, b = self, self._coerce(other)
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def xgcd(self, other):
        """Return (g, s, u) with g = s*self + u*other, g monic."""
        p = self.p
        a, b = self, self._coerce(other)
        s0, s1 = UniPoly.one(p, self.var), UniPoly.zero(p, self.var)
        u0, u1 = UniPoly.zero(p, self.var), UniPoly.one(p, self.var)
        while not b.is_zero():
            q, r = divmod(a, b)
            a, b = b, r
            s0, s1 = s1, s0 - q * s1
            u0, u1 = u1, u0 - q * u1
        if a.is_zero():
            return a, s0, u0
        inv = modinv(a.lc(), p)
        return a * inv, s0 * inv, u0 * inv

    def derivative(self) -> "UniPoly":
        if len(self.c) <= 1:
            return UniPoly.zero(self.p, self.var)
        k = np.arange(1, len(self.c), dtype=np.int64)
        return UniPoly(self.p, _trim(self.c[1:] * k % self.p), self.var, check=False)

    def shift(self, k: int) -> "UniPoly":
        """Multiply by var**k (k >= 0)."""
        if self.is_zero() or k == 0:
            return self
        return UniPoly(
            self.p,
            np.concatenate([np.zeros(k, dtype=np.int64), self.c]),
            self.var,
            check=False,
        )

    def __call__(self, a: int) -> int:
        acc = 0
        p = self.p
        for coef in self.c[::-1]:
            acc = (acc * a + int(coef)) % p
        return acc

    def eval_many(self, pts: np.ndarray) -> np.ndarray:
        """Evaluate at a vector of points (Horner, vectorized)."""
        p = self.p
        acc = np.zeros(len(pts), dtype=np.int64)
        for coef in self.c[::-1]:
            acc = (acc * pts + int(coef)) % p
        return acc

    def compose(self, other: "UniPoly") -> "UniPoly":
        """self(other(t)), by Horner."""
        acc = UniPoly.zero(self.p, other.var)
        for coef in self.c[::-1]:
            acc = acc * other + int(coef)
        return acc

    def scale_arg(self, s: int) -> "UniPoly":
        """self(s * var)."""
        pw = np.mod(
            np.array([pow(s % self.p, i, self.p) for i in range(len(self.c))],
                     dtype=np.int64),
            self.p,
        )
        return UniPoly(self.p, _trim(self.c * pw % self.p), self.var, check=False)

    def reverse(self, n: int | None = None) -> "UniPoly":
        """var**n * self(1/var); n defaults to deg(self)."""
        if self.is_zero():
            return self
        if n is None:
            n = self.degree
        if n < self.degree:
            raise ValueError("reverse bound below degree")
        out = np.zeros(n + 1, dtype=np.int64)
        out[n - self.degree :] = self.c[::-1]
        return UniPoly(self.p, _trim(out), self.var, check=False)

    def with_var(self, var: str) -> "UniPoly":
        return UniPoly(self.p, self.c, var, check=False)

    def pth_root(self) -> "UniPoly":
        """Inverse of Frobenius on F_p[t]: valid when all exponents are multiples of p."""
        if self.is_zero():
            return self
        if np.any(self.c[np.arange(len(self.c)) % self.p != 0]):
            raise ArithmeticError("not a p-th power")
        return UniPoly(self.p, self.c[:: self.p], self.var, check=False)

    def __repr__(self):
        return poly_to_str(self)


def _series_inverse(c: np.ndarray, n: int, p: int) -> np.ndarray:
    """First n coefficients of 1/c(t) mod p (c[0] must be a unit), by Newton
    iteration with int64 convolutions."""
    out = np.zeros(1, dtype=np.int64)
    out[0] = modinv(int(c[0]), p)
    k = 1
    while k < n:
        k = min(2 * k, n)
        ck = c[:k]
        prod = np.convolve(out, ck)[:k] % p
        corr = (-prod) % p
        corr[0] = (corr[0] + 2) % p
        out = np.convolve(out, corr)[:k] % p
    return out[:n]


def _kronecker_mul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Exact multiplication via packing into one big integer."""
    nbits = 2 * (p - 1).bit_length() + (min(len(a), len(b))).bit_length() + 1
    pa = sum(int(x) << (i * nbits) for i, x in enumerate(a))
    pb = sum(int(x) << (i * nbits) for i, x in enumerate(b))
    prod = pa * pb
    mask = (1 << nbits) - 1
    out = np.zeros(len(a) + len(b) - 1, dtype=np.int64)
    for i in range(len(out)):
        out[i] = (prod & mask) % p
        prod >>= nbits
    return out


def lagrange_interpolate(p: int, xs, ys, var: str = "t") -> UniPoly:
    """Unique polynomial of degree < len(xs) through the given points (Newton form)."""
    xs = [int(x) % p for x in xs]
    ys = [int(y) % p for y in ys]
    n = len(xs)
    if len(set(xs)) != n:
        raise ValueError("interpolation points must be distinct")
    coef = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            denom = (xs[i] - xs[i - j]) % p
            coef[i] = (coef[i] - coef[i - 1]) * modinv(denom, p) % p
    poly = UniPoly.zero(p, var)
    for i in range(n - 1, -1, -1):
        poly = poly * (UniPoly.gen(p, var) - xs[i]) + coef[i]
    return poly


class RationalFunction:
    """Reduced fraction of UniPoly with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: UniPoly, den: UniPoly | None = None, reduce_=True):
        if den is None:
            den = UniPoly.one(num.p, num.var)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if reduce_:
            g = num.gcd(den)
            if not g.is_one():
                num = num.exact_div(g)
                den = den.exact_div(g)
            if not den.is_monic():
                inv = modinv(den.lc(), num.p)
                num = num * inv
                den = den * inv
        self.num = num
        self.den = den

    @staticmethod
    def from_poly(f: UniPoly) -> "RationalFunction":
        return RationalFunction(f, None, reduce_=False)

    @staticmethod
    def const(p: int, a: int, var: str = "t") -> "RationalFunction":
        return RationalFunction.from_poly(UniPoly.const(p, a, var))

    @property
    def p(self):
        return self.num.p

    def is_zero(self):
        return self.num.is_zero()

    def is_poly(self):
        return self.den.is_one()

    def as_poly(self) -> UniPoly:
        if not self.den.is_one():
            raise ArithmeticError("not a polynomial: %r" % self)
        return self.num

    def _coerce(self, other) -> "RationalFunction":
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, UniPoly):
            return RationalFunction.from_poly(other)
        if isinstance(other, (int, np.integer)):
            return RationalFunction.const(self.p, int(other), self.num.var)
        raise TypeError(type(other))

    def __add__(self, other):
        o = self._coerce(other)
        return RationalFunction(
            self.num * o.den + o.num * self.den, self.den * o.den
        )

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den, reduce_=False)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o.num.is_zero():
            raise ZeroDivisionError
        return RationalFunction(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def inverse(self):
        return RationalFunction(self.den, self.num)

    def __eq__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return not self.num.is_zero()

    def eval(self, a: int) -> int:
        d = self.den(a)
        if d == 0:
            raise ZeroDivisionError("pole at %d" % a)
        return self.num(a) * modinv(d, self.p) % self.p

    def laurent_parts(self):
        """Return (numerator poly, k) with self = num / t**k, or None if the
        denominator is not a monomial."""
        den = self.den
        nz = np.nonzero(den.c)[0]
        if len(nz) != 1:
            return None
        k = int(nz[0])
        if den.c[k] != 1:
            return None
        return self.num, k

    def __repr__(self):
        if self.den.is_one():
            return repr(self.num)
        return "(%r)/(%r)" % (self.num, self.den)


class XPoly:
    """Polynomial in a main variable with UniPoly coefficients (e.g. f(t, x),
    dense in x).  coeffs[i] multiplies main**i."""

    __slots__ = ("p", "coeffs", "main")

    def __init__(self, p: int, coeffs, main: str = "x", trim=True):
        self.p = p
        coeffs = list(coeffs)
        if trim:
            while coeffs and coeffs[-1].is_zero():
                coeffs.pop()
        self.coeffs = coeffs
        self.main = main

    @staticmethod
    def zero(p: int, main: str = "x") -> "XPoly":
        return XPoly(p, [], main, trim=False)

    @staticmethod
    def const(p: int, f: UniPoly, main: str = "x") -> "XPoly":
        return XPoly(p, [f], main)

    @staticmethod
    def gen(p: int, main: str = "x", aux: str = "t") -> "XPoly":
        return XPoly(p, [UniPoly.zero(p, aux), UniPoly.one(p, aux)], main, trim=False)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def aux_var(self) -> str:
        return self.coeffs[0].var if self.coeffs else "t"

    def coeff(self, k: int) -> UniPoly:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return UniPoly.zero(self.p, self.aux_var())

    def lc(self) -> UniPoly:
        if self.is_zero():
            return UniPoly.zero(self.p)
        return self.coeffs[-1]

    def is_monic(self) -> bool:
        return not self.is_zero() and self.lc().is_one()

    def max_coeff_degree(self) -> int:
        return max((f.degree for f in self.coeffs), default=-1)

    def __eq__(self, other):
        if not isinstance(other, XPoly):
            return NotImplemented
        return self.p == other.p and len(self.coeffs) == len(other.coeffs) and all(
            a == b for a, b in zip(self.coeffs, other.coeffs)
        )

    def __hash__(self):
        return hash((self.p, self.main, tuple(self.coeffs)))

    def _coerce(self, other) -> "XPoly":
        if isinstance(other, XPoly):
            return other
        if isinstance(other, UniPoly):
            return XPoly(self.p, [other], self.main)
        if isinstance(other, (int, np.integer)):
            return XPoly(self.p, [UniPoly.const(self.p, int(other), self.aux_var())],
                         self.main)
        raise TypeError(type(other))

    def __add__(self, other):
        o = self._coerce(other)
        n = max(len(self.coeffs), len(o.coeffs))
        z = UniPoly.zero(self.p, self.aux_var())
        out = [
            (self.coeffs[i] if i < len(self.coeffs) else z)
            + (o.coeffs[i] if i < len(o.coeffs) else z)
            for i in range(n)
        ]
        return XPoly(self.p, out, self.main)

    __radd__ = __add__

    def __neg__(self):
        return XPoly(self.p, [-f for f in self.coeffs], self.main, trim=False)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __mul__(self, other):
        if isinstance(other, UniPoly):
            return XPoly(self.p, [f * other for f in self.coeffs], self.main)
        if isinstance(other, (int, np.integer)):
            return XPoly(self.p, [f * int(other) for f in self.coeffs], self.main)
        o = self._coerce(other)
        if self.is_zero() or o.is_zero():
            return XPoly.zero(self.p, self.main)
        z = UniPoly.zero(self.p, self.aux_var())
        out = [z] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(o.coeffs):
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return XPoly(self.p, out, self.main)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        result = XPoly(self.p, [UniPoly.one(self.p, self.aux_var())], self.main)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def divmod_monic(self, other: "XPoly"):
        """Division by a divisor whose leading coefficient is a unit of F_p."""
        if other.is_zero():
            raise ZeroDivisionError
        lc = other.lc()
        if not lc.is_constant():
            raise ArithmeticError("divisor leading coefficient must be constant")
        inv = modinv(lc.constant(), self.p)
        z = UniPoly.zero(self.p, self.aux_var())
        rem = list(self.coeffs)
        db = other.degree
        if len(rem) - 1 < db:
            return XPoly.zero(self.p, self.main), self
        quot = [z] * (len(rem) - db)
        for i in range(len(rem) - 1, db - 1, -1):
            if rem[i].is_zero():
                continue
            q = rem[i] * inv
            quot[i - db] = q
            for j, b in enumerate(other.coeffs):
                if not b.is_zero():
                    rem[i - db + j] = rem[i - db + j] - q * b
        return XPoly(self.p, quot, self.main), XPoly(self.p, rem[:db], self.main)

    def exact_div_monic(self, other: "XPoly") -> "XPoly":
        q, r = self.divmod_monic(other)
        if not r.is_zero():
            raise ArithmeticError("division was not exact")
        return q

    def derivative(self) -> "XPoly":
        if len(self.coeffs) <= 1:
            return XPoly.zero(self.p, self.main)
        return XPoly(
            self.p,
            [self.coeffs[k] * k for k in range(1, len(self.coeffs))],
            self.main,
        )

    def specialize_aux(self, t0: int) -> UniPoly:
        """Evaluate the coefficient variable at t0, leaving a UniPoly in main."""
        return UniPoly(self.p, [f(t0) for f in self.coeffs], self.main)

    def eval_main(self, a):
        """Horner evaluation of the main variable at a UniPoly/RationalFunction/int."""
        if isinstance(a, (int, np.integer)):
            a = UniPoly.const(self.p, int(a), self.aux_var())
        acc = (
            RationalFunction.const(self.p, 0, self.aux_var())
            if isinstance(a, RationalFunction)
            else UniPoly.zero(self.p, self.aux_var())
        )
        for f in self.coeffs[::-1]:
            acc = acc * a + f
        return acc

    def map_coeffs(self, fn) -> "XPoly":
        return XPoly(self.p, [fn(f) for f in self.coeffs], self.main)

    def shift_main(self, k: int) -> "XPoly":
        z = UniPoly.zero(self.p, self.aux_var())
        return XPoly(self.p, [z] * k + list(self.coeffs), self.main)

    def compose_main_linear(self, a: UniPoly, b: UniPoly) -> "XPoly":
        """Substitute main -> a(t)*main + b(t) (a, b in F_p[t])."""
        lin = XPoly(self.p, [b, a], self.main)
        acc = XPoly.zero(self.p, self.main)
        for f in self.coeffs[::-1]:
            acc = acc * lin + XPoly(self.p, [f], self.main)
        return acc

    def __repr__(self):
        return xpoly_to_str(self)


def xpoly_sqrt(s: "XPoly") -> "XPoly":
    """Exact square root in the main variable of a monic even-degree square
    with UniPoly coefficients; raises if s is not a perfect square."""
    if s.is_zero():
        return s
    if not s.is_monic() or s.degree % 2:
        raise ArithmeticError("not a monic even-degree square")
    p = s.p
    m = s.degree // 2
    z = UniPoly.zero(p, s.aux_var())
    r = [z] * (m + 1)
    r[m] = UniPoly.one(p, s.aux_var())
    inv2 = modinv(2, p)
    for j in range(m - 1, -1, -1):
        # match the coefficient of main**(m + j)
        acc = s.coeff(m + j)
        for i in range(j + 1, m):
            acc = acc - r[i] * r[m + j - i]
        r[j] = acc * inv2
    root = XPoly(p, r, s.main)
    if not (root * root == s):
        raise ArithmeticError("not a perfect square")
    return root


# ---------------------------------------------------------------------------
# text format: integer coefficients mod p, variables among t, u, x, y
# ---------------------------------------------------------------------------

_ALLOWED_VARS = ("t", "u", "x", "y")


class _Tok:
    def __init__(self, text):
        self.toks = []
        i = 0
        while i < len(text):
            ch = text[i]
            if ch.isspace():
                i += 1
            elif ch.isdigit():
                j = i
                while j < len(text) and text[j].isdigit():
                    j += 1
                self.toks.append(("int", int(text[i:j])))
                i = j
            elif ch in "+-*^()":
                self.toks.append((ch, ch))
                i += 1
            elif ch.isalpha():
                if ch not in _ALLOWED_VARS:
                    raise ValueError("unknown variable %r" % ch)
                self.toks.append(("var", ch))
                i += 1
            else:
                raise ValueError("bad character %r" % ch)
        self.pos = 0

    def peek(self):
        return self.toks[self.pos] if self.pos < len(self.toks) else ("end", None)

    def next(self):
        tok = self.peek()
        self.pos += 1
        return tok


def _parse_expr(tk: _Tok, p: int):
    terms = _parse_term(tk, p)
    while tk.peek()[0] in ("+", "-"):
        op = tk.next()[0]
        rhs = _parse_term(tk, p)
        if op == "-":
            rhs = {k: (-v) % p for k, v in rhs.items()}
        terms = _dict_add(terms, rhs, p)
    return terms


def _parse_factor(tk: _Tok, p: int):
    kind, val = tk.next()
    if kind == "-":
        inner = _parse_factor(tk, p)
        return {k: (-v) % p for k, v in inner.items()}
    if kind == "int":
        base = {(): val % p}
    elif kind == "var":
        base = {((val, 1),): 1}
    elif kind == "(":
        base = _parse_expr(tk, p)
        if tk.next()[0] != ")":
            raise ValueError("unbalanced parenthesis")
    else:
        raise ValueError("unexpected token %r" % kind)
    if tk.peek()[0] == "^":
        tk.next()
        kind, e = tk.next()
        if kind != "int":
            raise ValueError("exponent must be an integer")
        out = {(): 1}
        for _ in range(e):
            out = _dict_mul(out, base, p)
        return out
    return base


def _parse_term(tk: _Tok, p: int):
    factors = _parse_factor(tk, p)
    while tk.peek()[0] in ("*",):
        tk.next()
        nxt = _parse_factor(tk, p)
        factors = _dict_mul(factors, nxt, p)
    return factors


def _dict_add(a, b, p):
    out = dict(a)
    for k, v in b.items():
        out[k] = (out.get(k, 0) + v) % p
    return {k: v for k, v in out.items() if v}


def _dict_mul(a, b, p):
    out = {}
    for k1, v1 in a.items():
        d1 = dict(k1)
        for k2, v2 in b.items():
            d = dict(d1)
            for var, e in k2:
                d[var] = d.get(var, 0) + e
            key = tuple(sorted(d.items()))
            out[key] = (out.get(key, 0) + v1 * v2) % p
    return {k: v for k, v in out.items() if v}


def parse_multivariate(text: str, p: int) -> dict:
    """Parse into {((var, exp), ...): coeff} with coefficients mod p."""
    tk = _Tok(text)
    out = _parse_expr(tk, p)
    if tk.peek()[0] != "end":
        raise ValueError("trailing input near token %r" % (tk.peek(),))
    return out


def parse_unipoly(text: str, p: int, var: str) -> UniPoly:
    d = parse_multivariate(text, p)
    coeffs = {}
    for key, v in d.items():
        kd = dict(key)
        bad = [w for w in kd if w != var]
        if bad:
            raise ValueError("unexpected variable %s" % bad[0])
        coeffs[kd.get(var, 0)] = v
    if not coeffs:
        return UniPoly.zero(p, var)
    arr = np.zeros(max(coeffs) + 1, dtype=np.int64)
    for e, v in coeffs.items():
        arr[e] = v
    return UniPoly(p, arr, var)


def parse_xpoly(text: str, p: int, main: str, aux: str) -> XPoly:
    d = parse_multivariate(text, p)
    by_main: dict[int, dict[int, int]] = {}
    for key, v in d.items():
        kd = dict(key)
        bad = [w for w in kd if w not in (main, aux)]
        if bad:
            raise ValueError("unexpected variable %s" % bad[0])
        by_main.setdefault(kd.get(main, 0), {})[kd.get(aux, 0)] = v
    deg = max(by_main, default=-1)
    coeffs = []
    for k in range(deg + 1):
        cd = by_main.get(k, {})
        if cd:
            arr = np.zeros(max(cd) + 1, dtype=np.int64)
            for e, v in cd.items():
                arr[e] = v
            coeffs.append(UniPoly(p, arr, aux))
        else:
            coeffs.append(UniPoly.zero(p, aux))
    return XPoly(p, coeffs, main)


def poly_to_str(f: UniPoly) -> str:
    if f.is_zero():
        return "0"
    parts = []
    for k in range(f.degree, -1, -1):
        a = f.coeff(k)
        if a == 0:
            continue
        if k == 0:
            parts.append(str(a))
        else:
            pw = f.var if k == 1 else "%s^%d" % (f.var, k)
            parts.append(pw if a == 1 else "%d*%s" % (a, pw))
    return " + ".join(parts)


def xpoly_to_str(f: XPoly) -> str:
    if f.is_zero():
        return "0"
    parts = []
    for k in range(f.degree, -1, -1):
        c = f.coeff(k)
        if c.is_zero():
            continue
        if k == 0:
            parts.append(poly_to_str(c))
            continue
        pw = f.main if k == 1 else "%s^%d" % (f.main, k)
        if c.is_one():
            parts.append(pw)
        elif c.is_constant():
            parts.append("%d*%s" % (c.constant(), pw))
        else:
            parts.append("(%s)*%s" % (poly_to_str(c), pw))
    return " + ".join(parts)
