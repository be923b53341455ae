"""Partitions, standard Young tableaux, irreducible characters of S_d, and
fully enumerated permutation subgroups.

Everything downstream consumes only multiplicity and counting data from here:
Specht dimensions via hook lengths, character values via border-strip
recursion, class counts of subgroups, and the transposition-defect quantities
that scale all the genus and volume formulas.

Permutations are tuples `sigma` of length d with sigma[i] = image of i
(0-based); composition is (sigma * tau)(i) = sigma(tau(i)).  The external
text form is 1-based cycle notation, e.g. "(1 2)(3 4)".
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cache, lru_cache
from math import comb, factorial


# ---------------------------------------------------------------------------
# partitions
# ---------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class Partition:
    parts: tuple[int, ...]

    def __post_init__(self):
        if any(a < 1 for a in self.parts):
            raise ValueError("parts must be positive")
        if any(self.parts[i] < self.parts[i + 1] for i in range(len(self.parts) - 1)):
            raise ValueError("parts must be non-increasing")

    @staticmethod
    def of(*parts: int) -> "Partition":
        return Partition(tuple(parts))

    @property
    def d(self) -> int:
        return sum(self.parts)

    def __len__(self):
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    def __str__(self):
        return "[" + ",".join(str(a) for a in self.parts) + "]"

    def dual(self) -> "Partition":
        """Transpose of the Young diagram."""
        if not self.parts:
            return self
        cols = [sum(1 for a in self.parts if a > j) for j in range(self.parts[0])]
        return Partition(tuple(cols))

    def hook_lengths(self) -> list[list[int]]:
        conj = self.dual().parts
        return [
            [self.parts[i] - j + conj[j] - i - 1 for j in range(self.parts[i])]
            for i in range(len(self.parts))
        ]

    def is_hook(self) -> bool:
        return len(self.parts) <= 1 or all(a == 1 for a in self.parts[1:])


def parse_partition(text: str) -> Partition:
    parts = [int(s) for s in re.findall(r"-?\d+", text)]
    return Partition(tuple(parts))


def partitions_of(d: int) -> list[Partition]:
    """All partitions of d in reverse lexicographic order; 1 <= d <= 12."""
    if not 1 <= d <= 12:
        raise ValueError("d out of range (1..12)")
    return [Partition(t) for t in _partition_tuples(d)]


@cache
def _partition_tuples(d: int, cap: int | None = None) -> tuple[tuple[int, ...], ...]:
    if d == 0:
        return ((),)
    cap = d if cap is None else min(cap, d)
    out = []
    for first in range(cap, 0, -1):
        for rest in _partition_tuples(d - first, first):
            out.append((first,) + rest)
    return tuple(out)


def specht_dim(lam: Partition) -> int:
    """Dimension of the irreducible indexed by lam: d! over the hook product."""
    n = factorial(lam.d)
    for row in lam.hook_lengths():
        for h in row:
            n //= h
    return n


def syzygy_rank(d: int, i: int) -> int:
    """beta_i = (d/(i+1)) (d-2-i) C(d-2, i-1), the rank at step i of the
    length-(d-2) resolution of d general points in P^(d-2)."""
    return d * (d - 2 - i) * comb(d - 2, i - 1) // (i + 1)


def syzygy_partition(d: int, i: int) -> Partition:
    """The partition (d-i-1, 2, 1^(i-1)) attached to resolution step i."""
    if not 1 <= i <= d - 3:
        raise ValueError("step out of range")
    return Partition((d - i - 1, 2) + (1,) * (i - 1))


# ---------------------------------------------------------------------------
# characters (Murnaghan-Nakayama)
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def character(lam: Partition, mu: Partition) -> int:
    """chi_lam evaluated on the class of cycle type mu, by recursive
    border-strip removal with sign (-1)**(strip height)."""
    if lam.d != mu.d:
        raise ValueError("partition sizes differ")
    if lam.d == 0:
        return 1
    k = mu.parts[0]
    rest = Partition(mu.parts[1:])
    total = 0
    for smaller, height in _border_strips(lam, k):
        total += (-1) ** height * character(smaller, rest)
    return total


def _border_strips(lam: Partition, k: int):
    """All ways to remove a border strip of size k: yields (partition, height)."""
    parts = list(lam.parts)
    n = len(parts)
    out = []
    # a strip is determined by the row it starts in (topmost row touched)
    for top in range(n):
        for bottom in range(top, n):
            # candidate strip occupying rows top..bottom along the rim
            new = parts[:]
            # cells removed: in row r (top <= r < bottom): parts[r] - (parts[r+1] - 1)
            size = 0
            ok = True
            for r in range(top, bottom):
                take = parts[r] - parts[r + 1] + 1
                if take <= 0:
                    ok = False
                    break
                new[r] = parts[r + 1] - 1
                size += take
            if not ok:
                continue
            # bottom row: remove j >= 1 cells
            j = k - size
            if j < 1 or j > parts[bottom]:
                continue
            new[bottom] = parts[bottom] - j
            if bottom + 1 < n and new[bottom] < parts[bottom + 1]:
                continue
            trimmed = tuple(a for a in new if a > 0)
            if any(trimmed[i] < trimmed[i + 1] for i in range(len(trimmed) - 1)):
                continue
            out.append((Partition(trimmed), bottom - top))
    return out


def transposition_class(d: int) -> Partition:
    return Partition((2,) + (1,) * (d - 2))


def three_cycle_class(d: int) -> Partition:
    return Partition((3,) + (1,) * (d - 3))


def p_of_partition(lam: Partition) -> int:
    """Half the transposition defect: (dim V_lam - chi_lam(transposition)) / 2."""
    if lam.d < 2:
        raise ValueError("needs d >= 2")
    val = Fraction(specht_dim(lam) - character(lam, transposition_class(lam.d)), 2)
    if val.denominator != 1:
        raise ArithmeticError("transposition defect is odd")
    return int(val)


def class_size(mu: Partition) -> int:
    """Size of the conjugacy class of cycle type mu in S_d."""
    z = 1
    counts: dict[int, int] = {}
    for a in mu.parts:
        counts[a] = counts.get(a, 0) + 1
    for a, m in counts.items():
        z *= a**m * factorial(m)
    return factorial(mu.d) // z


# ---------------------------------------------------------------------------
# standard tableaux and reading words
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class StandardTableau:
    shape: Partition
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        d = self.shape.d
        seen = sorted(v for row in self.rows for v in row)
        if seen != list(range(1, d + 1)):
            raise ValueError("entries must be 1..d exactly once")
        for row in self.rows:
            if any(row[i] >= row[i + 1] for i in range(len(row) - 1)):
                raise ValueError("rows must increase")
        for i in range(len(self.rows) - 1):
            for j in range(len(self.rows[i + 1])):
                if self.rows[i][j] >= self.rows[i + 1][j]:
                    raise ValueError("columns must increase")

    def reading_word(self) -> tuple[int, ...]:
        """Rows concatenated starting from the bottom row."""
        word: list[int] = []
        for row in reversed(self.rows):
            word.extend(row)
        return tuple(word)


def standard_tableaux(shape: Partition) -> list[StandardTableau]:
    """All standard tableaux of the given shape, in row-major reading order;
    the count matches the hook length formula.  Bounded to d <= 10."""
    if shape.d > 10:
        raise ValueError("tableau enumeration bounded to d <= 10")
    parts = shape.parts
    nrows = len(parts)
    rows: list[list[int]] = [[] for _ in range(nrows)]
    out: list[StandardTableau] = []

    def place(v: int):
        if v > shape.d:
            out.append(StandardTableau(shape, tuple(tuple(r) for r in rows)))
            return
        for r in range(nrows):
            c = len(rows[r])
            if c >= parts[r]:
                continue
            if r > 0 and len(rows[r - 1]) <= c:
                continue
            rows[r].append(v)
            place(v + 1)
            rows[r].pop()

    place(1)
    out.sort(key=lambda T: tuple(v for row in T.rows for v in row))
    return out


def reading_word_descents(T: StandardTableau) -> set[int]:
    """Indices i with i+1 strictly left of i in the reading word."""
    word = T.reading_word()
    pos = {v: i for i, v in enumerate(word)}
    return {i for i in range(1, T.shape.d) if pos[i + 1] < pos[i]}


# ---------------------------------------------------------------------------
# permutations and subgroups
# ---------------------------------------------------------------------------

Perm = tuple


def identity_perm(d: int) -> Perm:
    return tuple(range(d))


def compose(a: Perm, b: Perm) -> Perm:
    """(a * b)(i) = a(b(i))."""
    return tuple(a[b[i]] for i in range(len(a)))


def invert(a: Perm) -> Perm:
    out = [0] * len(a)
    for i, j in enumerate(a):
        out[j] = i
    return tuple(out)


def cycle_type(a: Perm) -> Partition:
    d = len(a)
    seen = [False] * d
    lens = []
    for i in range(d):
        if seen[i]:
            continue
        n = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = a[j]
            n += 1
        lens.append(n)
    lens.sort(reverse=True)
    return Partition(tuple(lens))


def sign(a: Perm) -> int:
    return (-1) ** (len(a) - len(cycle_type(a).parts))


def parse_perm(text: str, d: int) -> Perm:
    """Parse 1-based cycle notation like "(1 2)(3 4)"; "()" is the identity."""
    text = text.strip()
    images = list(range(d))
    for cyc in re.findall(r"\(([^()]*)\)", text):
        vals = [int(s) - 1 for s in re.findall(r"\d+", cyc)]
        if not vals:
            continue
        if any(not 0 <= v < d for v in vals) or len(set(vals)) != len(vals):
            raise ValueError("invalid cycle %r for degree %d" % (cyc, d))
        for i, v in enumerate(vals):
            images[v] = vals[(i + 1) % len(vals)]
    return tuple(images)


def perm_to_str(a: Perm) -> str:
    d = len(a)
    seen = [False] * d
    parts = []
    for i in range(d):
        if seen[i] or a[i] == i:
            seen[i] = True
            continue
        cyc = []
        j = i
        while not seen[j]:
            seen[j] = True
            cyc.append(j + 1)
            j = a[j]
        parts.append("(" + " ".join(str(v) for v in cyc) + ")")
    return "".join(parts) if parts else "()"


_CLOSURE_BOUND = 40320  # 8!


@dataclass(frozen=True)
class PermSubgroup:
    d: int
    generators: tuple[Perm, ...]
    elements: tuple[Perm, ...] = field(compare=False)
    name: str = field(default="", compare=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    def index(self) -> int:
        return factorial(self.d) // self.order

    def element_set(self) -> frozenset:
        return frozenset(self.elements)

    def class_counts(self) -> dict[Partition, int]:
        out: dict[Partition, int] = {}
        for g in self.elements:
            ct = cycle_type(g)
            out[ct] = out.get(ct, 0) + 1
        return out


def subgroup_from_generators(d: int, gens, name: str = "") -> PermSubgroup:
    """Closure of the generators in S_d by breadth-first enumeration; element
    order is deterministic (sorted tuples).  Bounded to d <= 8."""
    if d > 8:
        raise ValueError("subgroup enumeration bounded to d <= 8")
    gens = tuple(tuple(g) for g in gens)
    for g in gens:
        if sorted(g) != list(range(d)):
            raise ValueError("not a permutation of 0..%d: %r" % (d - 1, g))
    elems = {identity_perm(d)}
    frontier = [identity_perm(d)]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = compose(g, a)
                if b not in elems:
                    if len(elems) >= _CLOSURE_BOUND:
                        raise ValueError("closure exceeds size bound")
                    elems.add(b)
                    nxt.append(b)
        frontier = nxt
    return PermSubgroup(d, gens, tuple(sorted(elems)), name)


def count_in_class(h: PermSubgroup, mu: Partition) -> int:
    if mu.d != h.d:
        raise ValueError("cycle type size differs from degree")
    return h.class_counts().get(mu, 0)


def p_of_subgroup(h: PermSubgroup) -> int:
    """(d-2)! #(transpositions outside H) / |H|, asserted integral."""
    d = h.d
    outside = class_size(transposition_class(d)) - count_in_class(
        h, transposition_class(d)
    )
    val = Fraction(factorial(d - 2) * outside, h.order)
    if val.denominator != 1:
        raise ArithmeticError("non-integral p(H); enumeration bug")
    return int(val)


def induced_trivial_multiplicities(h: PermSubgroup) -> dict[Partition, int]:
    """Multiplicity of each irreducible in the permutation module on S_d/H:
    mult(lam) = (1/|H|) sum over H of chi_lam, via class counts."""
    if h.d > 8:
        raise ValueError("bounded to d <= 8")
    counts = h.class_counts()
    out: dict[Partition, int] = {}
    for lam in partitions_of(h.d):
        acc = 0
        for mu, n in counts.items():
            acc += n * character(lam, mu)
        val = Fraction(acc, h.order)
        if val.denominator != 1:
            raise ArithmeticError("non-integral multiplicity; enumeration bug")
        if val:
            out[lam] = int(val)
    return out


def gassmann_equivalent(h1: PermSubgroup, h2: PermSubgroup) -> bool:
    """Same number of elements in every conjugacy class of the ambient S_d."""
    if h1.d != h2.d:
        raise ValueError("ambient degrees differ")
    return h1.class_counts() == h2.class_counts()


def are_conjugate(h1: PermSubgroup, h2: PermSubgroup) -> bool:
    """Exhaustive conjugacy test in S_d (d <= 6 is intended)."""
    if h1.d != h2.d:
        raise ValueError("ambient degrees differ")
    if h1.order != h2.order:
        return False
    s1, s2 = h1.element_set(), h2.element_set()
    full = subgroup_from_generators(
        h1.d, [transposition(h1.d, 0, 1), cycle(h1.d, tuple(range(h1.d)))]
    )
    for g in full.elements:
        gi = invert(g)
        if all(compose(g, compose(a, gi)) in s2 for a in s1):
            return True
    return False


# -- standard constructions -------------------------------------------------


def transposition(d: int, i: int, j: int) -> Perm:
    img = list(range(d))
    img[i], img[j] = img[j], img[i]
    return tuple(img)


def cycle(d: int, support: tuple[int, ...]) -> Perm:
    img = list(range(d))
    for k, v in enumerate(support):
        img[v] = support[(k + 1) % len(support)]
    return tuple(img)


def symmetric_group(d: int) -> PermSubgroup:
    if d == 1:
        return subgroup_from_generators(1, [], "S1")
    gens = [transposition(d, 0, 1)]
    if d > 2:
        gens.append(cycle(d, tuple(range(d))))
    return subgroup_from_generators(d, gens, "S%d" % d)


def alternating_group(d: int) -> PermSubgroup:
    gens = [cycle(d, (i, i + 1, i + 2)) for i in range(d - 2)]
    return subgroup_from_generators(d, gens, "A%d" % d)


def young_subgroup(d: int, blocks: tuple[int, ...], name: str = "") -> PermSubgroup:
    """Direct product of symmetric groups on consecutive blocks of sizes
    `blocks` (summing to at most d; leftover points are fixed)."""
    gens = []
    start = 0
    for size in blocks:
        for i in range(size - 1):
            gens.append(transposition(d, start + i, start + i + 1))
        start += size
    return subgroup_from_generators(d, gens, name or "S_%s" % (blocks,))


def point_stabilizer(d: int) -> PermSubgroup:
    """S_{d-1} fixing the last point."""
    gens = [transposition(d, i, i + 1) for i in range(d - 2)]
    return subgroup_from_generators(d, gens, "S%d" % (d - 1))


def alternating_point_stabilizer(d: int) -> PermSubgroup:
    """A_{d-1} on the first d-1 points, fixing the last."""
    gens = [cycle(d, (i, i + 1, i + 2)) for i in range(d - 3)]
    return subgroup_from_generators(d, gens, "A%d" % (d - 1))


def pair_sum_subgroup(d: int) -> PermSubgroup:
    """S_2 x S_{d-2} on {1,2} and {3..d}."""
    gens = [transposition(d, 0, 1)] + [
        transposition(d, i, i + 1) for i in range(2, d - 1)
    ]
    return subgroup_from_generators(d, gens, "S2xS%d" % (d - 2))


def dihedral_quartic(d: int = 4) -> PermSubgroup:
    """The order-8 dihedral subgroup of S_4 generated by (1 2) and (1 3 2 4)."""
    if d != 4:
        raise ValueError("dihedral catalog subgroup lives in S_4")
    return subgroup_from_generators(
        4, [parse_perm("(1 2)", 4), parse_perm("(1 3 2 4)", 4)], "D4"
    )


def affine_quintic(d: int = 5) -> PermSubgroup:
    """AGL_1(F_5) inside S_5: order 20."""
    if d != 5:
        raise ValueError("affine catalog subgroup lives in S_5")
    return subgroup_from_generators(
        5, [parse_perm("(1 2 3 4 5)", 5), parse_perm("(1 2 4 3)", 5)], "AGL1F5"
    )


def exotic_sextic(d: int = 6) -> PermSubgroup:
    """The transitive copy of S_5 inside S_6 (order 120, no transpositions)."""
    if d != 6:
        raise ValueError("exotic catalog subgroup lives in S_6")
    return subgroup_from_generators(
        6, [parse_perm("(1 2 3 4)", 6), parse_perm("(1 5 6 2)", 6)], "S5'"
    )


def gassmann_pair_s6() -> tuple[PermSubgroup, PermSubgroup]:
    """The classical non-conjugate Gassmann-equivalent pair of order-4
    subgroups of S_6."""
    h1 = subgroup_from_generators(
        6, [parse_perm("(1 2)(3 4)", 6), parse_perm("(1 3)(2 4)", 6)], "V4a"
    )
    h2 = subgroup_from_generators(
        6, [parse_perm("(1 2)(3 4)", 6), parse_perm("(1 2)(5 6)", 6)], "V4b"
    )
    return h1, h2


CATALOG_TAGS = (
    "point-stabilizer",
    "alternating",
    "alternating-point-stabilizer",
    "pair-sum",
    "quartic-dihedral",
    "cayley-sextic",
    "exotic-sextic",
)


def catalog_subgroup(d: int, tag: str) -> PermSubgroup:
    """Resolve a catalog tag to an explicit subgroup of S_d."""
    if tag == "point-stabilizer":
        return point_stabilizer(d)
    if tag == "alternating":
        return alternating_group(d)
    if tag == "alternating-point-stabilizer":
        return alternating_point_stabilizer(d)
    if tag == "pair-sum":
        if d < 4:
            raise ValueError("pair-sum needs d >= 4")
        return pair_sum_subgroup(d)
    if tag == "quartic-dihedral":
        return dihedral_quartic(d)
    if tag == "cayley-sextic":
        return affine_quintic(d)
    if tag == "exotic-sextic":
        return exotic_sextic(d)
    raise ValueError("unknown catalog tag %r" % tag)
