"""Closed-form predictions: profiles of hooks, volumes, duals, resolvent
genus and profile assembly, syzygy-shift sums and intervals, Maroni-type
bounds, and the tableau recipe for curves on Hirzebruch surfaces.

These are the oracles the computational pipeline is measured against; they
are pure functions of (d, g, partition or subgroup, profile).  Bounds are
exact Fractions, never floored.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb

from .symrep import (
    Partition,
    PermSubgroup,
    induced_trivial_multiplicities,
    p_of_partition,
    p_of_subgroup,
    reading_word_descents,
    specht_dim,
    standard_tableaux,
)

PROVENANCES = ("measured", "predicted", "derived-by-subtraction")


@dataclass(frozen=True)
class ScrollarProfile:
    """Sorted multiset of non-negative integers with a provenance label."""

    values: tuple[int, ...]
    provenance: str = "predicted"

    def __post_init__(self):
        if self.provenance not in PROVENANCES:
            raise ValueError("bad provenance %r" % self.provenance)
        if any(v < 0 for v in self.values):
            raise ValueError("profile entries must be >= 0")
        if tuple(sorted(self.values)) != self.values:
            object.__setattr__(self, "values", tuple(sorted(self.values)))

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def total(self) -> int:
        return sum(self.values)

    def same_values(self, other: "ScrollarProfile") -> bool:
        return self.values == other.values

    def union(self, other: "ScrollarProfile", provenance=None) -> "ScrollarProfile":
        return ScrollarProfile(
            tuple(sorted(self.values + other.values)),
            provenance or self.provenance,
        )

    def subtract(self, other: "ScrollarProfile") -> "ScrollarProfile":
        """Multiset difference; raises if `other` is not contained in self."""
        c = Counter(self.values)
        c.subtract(Counter(other.values))
        if any(v < 0 for v in c.values()):
            raise ArithmeticError(
                "block %s is not contained in profile %s"
                % (list(other.values), list(self.values))
            )
        return ScrollarProfile(
            tuple(sorted(c.elements())), "derived-by-subtraction"
        )

    def to_json(self, lam: Partition | None = None) -> dict:
        out = {"profile": list(self.values), "provenance": self.provenance,
               "volume": self.total()}
        if lam is not None:
            out["lambda"] = list(lam.parts)
        return out

    def __str__(self):
        return "{%s}" % ", ".join(str(v) for v in self.values)


@dataclass(frozen=True)
class CoverSummary:
    d: int
    g: int
    e: ScrollarProfile

    def __post_init__(self):
        if self.d < 2 or self.g < 0:
            raise ValueError("need d >= 2 and g >= 0")
        if len(self.e) != self.d - 1:
            raise ValueError("profile must have d-1 entries")
        if self.e.total() != self.g + self.d - 1:
            raise ValueError("profile sum violates g + d - 1")
        if max(self.e) * self.d > 2 * self.g + 2 * self.d - 2:
            raise ValueError("largest invariant violates the Maroni bound")


def hook_profile(e: ScrollarProfile, i: int) -> ScrollarProfile:
    """Profile of the hook with i boxes below the first row: all i-element
    subset sums of e; size C(d-1, i)."""
    d = len(e) + 1
    if not 0 <= i <= d - 1:
        raise ValueError("i out of range")
    sums = tuple(sorted(sum(s) for s in combinations(e.values, i)))
    return ScrollarProfile(sums, "predicted")


def volume(lam: Partition, g: int, d: int) -> int:
    """Predicted sum of the profile attached to lam: p(lam) (g + d - 1)."""
    if g < 0 or d < 2 or lam.d != d:
        raise ValueError("bad (lambda, g, d)")
    return p_of_partition(lam) * (g + d - 1)


def dual_profile(profile: ScrollarProfile, g: int, d: int) -> ScrollarProfile:
    """Entrywise g + d - 1 - e, re-sorted; involutive."""
    cap = g + d - 1
    if profile.values and profile.values[-1] > cap:
        raise ValueError("entry exceeds g + d - 1")
    return ScrollarProfile(
        tuple(sorted(cap - v for v in profile.values)), profile.provenance
    )


def ramification_pattern_of_resolvent(h: PermSubgroup) -> Partition:
    """Pattern (2^p(H), 1^(index - 2 p(H))) above each branch point of a
    simply branched cover."""
    ph = p_of_subgroup(h)
    ones = h.index() - 2 * ph
    if ones < 0:
        raise ArithmeticError("impossible pattern")
    return Partition((2,) * ph + (1,) * ones if ph else (1,) * ones)


def resolvent_genus(h: PermSubgroup, g: int, d: int) -> int:
    """p(H)(g + d - 1) + 1 - [S_d : H] for a proper subgroup H, assuming
    simple branching."""
    if h.d != d:
        raise ValueError("subgroup degree mismatch")
    index = h.index()
    if index == 1:
        raise ValueError("H = S_d gives the trivial cover")
    return p_of_subgroup(h) * (g + d - 1) + 1 - index


def resolvent_profile(
    h: PermSubgroup, table: dict[Partition, ScrollarProfile]
) -> ScrollarProfile:
    """Union over non-trivial constituents of Ind_H 1 of the per-partition
    profiles, with multiplicities; the trivial partition contributes nothing."""
    mults = induced_trivial_multiplicities(h)
    values: list[int] = []
    trivial = Partition((h.d,))
    for lam, m in sorted(mults.items()):
        if lam == trivial:
            continue
        if lam not in table:
            raise KeyError("profile table is missing %s" % lam)
        block = table[lam]
        if len(block) != specht_dim(lam):
            raise ValueError(
                "block for %s has size %d, expected %d"
                % (lam, len(block), specht_dim(lam))
            )
        values.extend(list(block.values) * m)
    return ScrollarProfile(tuple(sorted(values)), "predicted")


def schreyer_sum(d: int, i: int, g: int) -> int:
    """Sum of the step-i syzygy shifts: (d-2-i) C(d-2, i-1) (g+d-1)."""
    if not 1 <= i <= d - 3:
        raise ValueError("i out of range")
    return (d - 2 - i) * comb(d - 2, i - 1) * (g + d - 1)


def maroni_partition_bound(lam: Partition, g: int, d: int) -> Fraction:
    """Upper bound (d^2 - sum d_i^2) / (d (d-1)) * (g + d - 1) for every
    profile entry of lam."""
    if lam.d != d:
        raise ValueError("partition size mismatch")
    num = d * d - sum(a * a for a in lam.parts)
    return Fraction(num, d * (d - 1)) * (g + d - 1)


def schreyer_interval(d: int, i: int, g: int) -> tuple[Fraction, Fraction]:
    """Exact rational interval containing every step-i shift."""
    if not 1 <= i <= d - 3:
        raise ValueError("i out of range")
    lo = Fraction(i * (i + 1) + 2, d * (d - 1)) * (g + d - 1)
    hi = Fraction((i + 1) * (2 * d - i - 2) - 2, d * (d - 1)) * (g + d - 1)
    return lo, hi


def generic_upper_bound(lam: Partition, g: int, d: int) -> Fraction:
    """For a general cover: every entry of the lam-profile is at most
    i g/(d-1) + 2i, with i the number of boxes outside the first row."""
    if lam.d != d:
        raise ValueError("partition size mismatch")
    i = d - lam.parts[0]
    return Fraction(i * g, d - 1) + 2 * i


def hirzebruch_base_profile(c: int, d: int, e: int) -> ScrollarProfile:
    """e_i = c + i e for a bidegree-(c,d) curve on the surface of invariant e."""
    return ScrollarProfile(tuple(c + i * e for i in range(1, d)), "predicted")


def hirzebruch_genus(c: int, d: int, e: int) -> int:
    """(d-1)(c + d e/2 - 1), asserted integral."""
    val = (d - 1) * (Fraction(d * e, 2) + c - 1)
    if val.denominator != 1:
        raise ArithmeticError("non-integral genus")
    return int(val)


def hirzebruch_profile(c: int, d: int, e: int, lam: Partition) -> ScrollarProfile:
    """Tableau recipe: one entry per standard tableau T of shape lam, equal to
    the sum of e_i = c + i e over the reading-word descent set of T."""
    if c < 0 or e < 0 or d < 2 or lam.d != d:
        raise ValueError("bad (c, d, e, lambda)")
    base = hirzebruch_base_profile(c, d, e).values
    vals = []
    for T in standard_tableaux(lam):
        vals.append(sum(base[i - 1] for i in reading_word_descents(T)))
    return ScrollarProfile(tuple(sorted(vals)), "predicted")


def hirzebruch_proven_partitions(d: int) -> set[Partition]:
    """Partitions for which the tableau recipe is a theorem rather than a
    conjecture: hooks, (d-2,2), and its dual (2,2,1^(d-4))."""
    out = {lam for lam in _all_partitions(d) if lam.is_hook()}
    if d >= 4:
        out.add(Partition((d - 2, 2)))
        out.add(Partition((d - 2, 2)).dual())
    return out


def _all_partitions(d: int):
    from .symrep import partitions_of

    return partitions_of(d)
