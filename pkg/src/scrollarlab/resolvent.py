"""Resolvent covers: explicit plane models for the quotient of the Galois
closure by a subgroup H of S_d, via closed-form constructions (point
stabilizer, discriminant square root, pair-sum resultant, quartic cubic
resolvent) or generically through the splitting algebra; measurement of their
scrollar profiles; and isolation of per-partition blocks by multiset
subtraction.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import factorial

import numpy as np

from .exactalg import (
    UniPoly,
    XPoly,
    charpoly_interpolated,
    is_square_poly,
    lagrange_interpolate,
    xpoly_discriminant,
    xpoly_separable,
    xpoly_sqrt,
)
from .exactalg.linalg import resultant_modp
from .funfield import (
    CoverModel,
    ModelError,
    cover_data,
    ramification_report,
    reduced_basis,
    validate_cover,
)
from .predict import (
    ScrollarProfile,
    dual_profile,
    resolvent_genus,
)
from .splitalg import (
    ScalarSplittingAlgebra,
    SplittingAlgebra,
    krylov_minpoly_apply,
    theta_apply,
    xpoly_nth_root,
)
from .symrep import (
    Partition,
    PermSubgroup,
    catalog_subgroup,
    specht_dim,
)


class BranchingDiscrepancy(ArithmeticError):
    """Measured resolvent data disagree with the simple-branching prediction."""

    def __init__(self, message, predicted=None, measured=None):
        super().__init__(message)
        self.predicted = predicted
        self.measured = measured


class NonSeparatingInvariant(ArithmeticError):
    """No tried weight vector separated the cosets of H."""


@dataclass(frozen=True)
class ResolventModel:
    base: CoverModel  # the input degree-d cover
    subgroup_name: str
    index: int
    poly: XPoly  # monic in y, F_p[t] coefficients
    cover: CoverModel  # the same polynomial as a validated cover in x

    def degree(self) -> int:
        return self.index


def _as_cover(base: CoverModel, name: str, index: int, gy: XPoly) -> ResolventModel:
    fx = XPoly(base.p, gy.coeffs, "x")
    cover = validate_cover(base.p, fx, assert_irreducible=True)
    return ResolventModel(base, name, index, gy, cover)


# ---------------------------------------------------------------------------
# catalog constructions
# ---------------------------------------------------------------------------


def pair_sum_polynomial(model: CoverModel) -> XPoly:
    """Squarefree cofactor of Res_x(f(x), f(y-x)): monic of degree d(d-1)/2
    in y, vanishing exactly at the pairwise root sums."""
    f = model.f
    p, d = model.p, model.d
    big_d = max(f.max_coeff_degree(), 0)
    deg_y = d * d
    deg_t = 2 * d * big_d
    if deg_t + 1 > p or deg_y + 1 > p:
        raise ArithmeticError("modulus too small for the resultant grid")
    ts = list(range(deg_t + 1))
    ys = list(range(deg_y + 1))
    vals = np.zeros((len(ts), len(ys)), dtype=np.int64)
    for ti, t0 in enumerate(ts):
        ft = f.specialize_aux(t0)
        for yi, y0 in enumerate(ys):
            gt = ft.compose(UniPoly(p, [y0, p - 1], ft.var))
            vals[ti, yi] = resultant_modp(ft.c, gt.c, p)
    # interpolate along y for each t, then along t for each y-coefficient
    per_t = [lagrange_interpolate(p, ys, vals[ti], "y") for ti in range(len(ts))]
    coeffs = []
    for j in range(deg_y + 1):
        column = [per_t[ti].coeff(j) for ti in range(len(ts))]
        coeffs.append(lagrange_interpolate(p, ts, column, "t"))
    res = XPoly(p, coeffs, "y")
    # remove the diagonal factor prod_i (y - 2 x_i) = 2^d f(y/2)
    diag = XPoly(
        p,
        [f.coeff(i) * pow(2, d - i, p) for i in range(d + 1)],
        "y",
    )
    cofactor = res.exact_div_monic(diag)
    return xpoly_sqrt(cofactor)


def alternating_polynomial(model: CoverModel) -> XPoly:
    """y^2 - disc_x(f); requires the discriminant not to be a square."""
    disc = xpoly_discriminant(model.f)
    if is_square_poly(disc):
        raise ModelError("discriminant is a square in F_p(t); index-2 resolvent splits")
    p = model.p
    return XPoly(p, [-disc, UniPoly.zero(p, "t"), UniPoly.one(p, "t")], "y")


def quartic_cubic_resolvent(model: CoverModel) -> XPoly:
    """Classical cubic resolvent of a quartic, with roots the pair-products
    x1 x2 + x3 x4 and its two conjugates."""
    if model.d != 4:
        raise ValueError("cubic resolvent needs degree 4")
    p = model.p
    a = model.f.coeff(3)
    b = model.f.coeff(2)
    c = model.f.coeff(1)
    e = model.f.coeff(0)
    c0 = -(a * a * e - b * e * 4 + c * c)
    c1 = a * c - e * 4
    c2 = -b
    return XPoly(p, [c0, c1, c2, UniPoly.one(p, "t")], "y")


# ---------------------------------------------------------------------------
# generic construction through the splitting algebra
# ---------------------------------------------------------------------------


def default_weights(d: int) -> tuple[int, ...]:
    return tuple(range(d))


def resolvent_generic(
    model: CoverModel,
    h: PermSubgroup,
    weights=None,
    seed: int = 0,
    max_retries: int = 8,
) -> ResolventModel:
    """Plane model of the fixed field of H from the multiplication operator of
    the invariant Theta = sum_{h in H} prod_i x_{h(i)}^{w_i} on the splitting
    algebra.

    Small operators go through the full interpolated characteristic
    polynomial, whose |H|-th root is extracted exactly; larger ones extract
    the degree-[S_d:H] minimal polynomial per specialization point and
    interpolate its coefficients, verifying on extra points.  Weights that do
    not separate the cosets (inseparable result) trigger seeded retries.
    """
    d = model.d
    p = model.p
    if h.d != d:
        raise ValueError("subgroup degree mismatch")
    if factorial(d) > 720:
        raise ValueError("generic resolvents bounded to d <= 6")
    index = h.index()
    if index == 1:
        raise ValueError("H = S_d gives the trivial cover")
    rng = random.Random((seed, p, d, h.order, "resolvent"))
    disc_f = xpoly_discriminant(model.f)
    big_d = max(model.f.max_coeff_degree(), 0)
    dim = factorial(d)
    symbolic = None
    for attempt in range(max_retries + 1):
        if attempt == 0 and weights is not None:
            w = tuple(weights)
        elif attempt == 0:
            w = default_weights(d)
        else:
            w = tuple(rng.randrange(d) for _ in range(d))
        if sum(w) == 0:
            continue
        bound = index * sum(w) * max(model.m_inf, 1)
        try:
            if dim <= 32 and dim * sum(w) * big_d + 16 < p:
                if symbolic is None:
                    symbolic = SplittingAlgebra(model.f)
                gy = _resolvent_by_charpoly(symbolic, h, w)
            else:
                gy = _resolvent_by_minpoly(
                    model, h, w, disc_f, index, bound, seed
                )
        except ArithmeticError:
            continue
        if not xpoly_separable(gy):
            continue  # inseparable: the invariant does not separate cosets
        return _as_cover(model, h.name or "H", index, gy)
    raise NonSeparatingInvariant(
        "no separating invariant found for %s after %d retries"
        % (h.name or "H", max_retries)
    )


def _resolvent_by_charpoly(algebra: SplittingAlgebra, h: PermSubgroup, w) -> XPoly:
    """Full interpolated characteristic polynomial of multiplication by the
    invariant, which must be the |H|-th power of the resolvent polynomial."""
    terms = algebra.theta_exponents(h.elements, w)
    tensor = algebra.multiplication_tensor(terms)
    rows = algebra.matrix_rows(tensor)
    n = algebra.dim
    bound = n * max(tensor.shape[2] - 1, 0)
    coeffs = charpoly_interpolated(rows, bound)
    charpoly = XPoly(algebra.p, [c.as_poly() for c in coeffs], "y")
    return xpoly_nth_root(charpoly, h.order)


def _resolvent_by_minpoly(
    model: CoverModel, h: PermSubgroup, w, disc_f: UniPoly,
    index: int, bound: int, seed: int,
) -> XPoly:
    """Degree-[S_d:H] minimal polynomial of the invariant, interpolated from
    its specializations (the squarefree part of the characteristic polynomial
    computed pointwise), then verified on extra sample points."""
    p = model.p
    d = model.d
    need = bound + 1 + 8
    rng = random.Random((seed, p, index, "samples"))
    order = list(range(p))
    rng.shuffle(order)
    exps = [[0] * d for _ in range(h.order)]
    for idx, perm in enumerate(h.elements):
        for i, wi in enumerate(w):
            exps[idx][perm[i]] += wi
    xs, polys = [], []
    f_coeffs = model.f.coeffs
    for t0 in order:
        if disc_f(t0) == 0:
            continue
        scalars = [c(t0) for c in f_coeffs[:d]]
        algebra = ScalarSplittingAlgebra(p, scalars)
        mats = algebra.variable_matrices()
        start = np.zeros(algebra.dim, dtype=np.int64)
        start[algebra.index[algebra.one_mono()]] = 1
        mp = krylov_minpoly_apply(
            lambda v: theta_apply(mats, exps, v, p), start, p, index
        )
        if mp is None or len(mp) - 1 != index:
            continue  # coset values collide at this point
        xs.append(t0)
        polys.append(mp)
        if len(xs) == need:
            break
    else:
        raise ArithmeticError(
            "insufficient sample points in F_%d (need %d); enlarge p" % (p, need)
        )
    fit_x, fit_p = xs[: bound + 1], polys[: bound + 1]
    coeffs = []
    for k in range(index + 1):
        ys = [int(mp[k]) for mp in fit_p]
        coeffs.append(lagrange_interpolate(p, fit_x, ys, "t"))
    gy = XPoly(p, coeffs, "y")
    if not gy.is_monic() or gy.degree != index:
        raise ArithmeticError("interpolated resolvent is not monic of full degree")
    for t0, mp in zip(xs[bound + 1 :], polys[bound + 1 :]):
        got = gy.specialize_aux(t0)
        want = [int(c) for c in mp]
        have = [got.coeff(k) for k in range(index + 1)]
        if have != want:
            raise ArithmeticError("degree bound violated in resolvent interpolation")
    return gy


# ---------------------------------------------------------------------------
# catalog dispatch and profile measurement
# ---------------------------------------------------------------------------


def resolvent_catalog(model: CoverModel, tag: str) -> ResolventModel:
    d = model.d
    h = catalog_subgroup(d, tag)
    if tag == "point-stabilizer":
        gy = XPoly(model.p, model.f.coeffs, "y")
        return ResolventModel(model, h.name, d, gy, model)
    if tag == "alternating":
        return _as_cover(model, h.name, 2, alternating_polynomial(model))
    if tag == "pair-sum":
        return _as_cover(model, h.name, h.index(), pair_sum_polynomial(model))
    if tag == "quartic-dihedral":
        return _as_cover(model, h.name, 3, quartic_cubic_resolvent(model))
    if tag in ("cayley-sextic", "exotic-sextic", "alternating-point-stabilizer"):
        return resolvent_generic(model, h)
    raise ValueError("unknown catalog tag %r" % tag)


_SCROLLAR_CACHE: dict = {}


def resolvent_scrollars(model: CoverModel, h_or_tag, seed: int = 0):
    """(measured profile, measured genus) of the resolvent cover; on simply
    branched input a genus mismatch with the closed form raises a flagged
    BranchingDiscrepancy.  Results are cached per (model, subgroup, seed)."""
    cache_key = (
        model,
        h_or_tag if isinstance(h_or_tag, str) else ("H", h_or_tag.d, h_or_tag.generators),
        seed,
    )
    if cache_key in _SCROLLAR_CACHE:
        return _SCROLLAR_CACHE[cache_key]
    if isinstance(h_or_tag, str):
        rmodel = resolvent_catalog(model, h_or_tag)
        h = catalog_subgroup(model.d, h_or_tag)
    else:
        h = h_or_tag
        rmodel = resolvent_generic(model, h, seed=seed)
    red = reduced_basis(rmodel.cover)
    profile = red.profile()
    g_measured = red.genus
    base = ramification_report(model)
    if base.classification == "simple":
        g_base = reduced_basis(model).genus
        g_predicted = resolvent_genus(h, g_base, model.d)
        if g_predicted != g_measured:
            raise BranchingDiscrepancy(
                "resolvent genus %d differs from predicted %d"
                % (g_measured, g_predicted),
                predicted=g_predicted,
                measured=g_measured,
            )
    _SCROLLAR_CACHE[cache_key] = (profile, g_measured)
    return profile, g_measured


_DIRECT_STRATEGIES = {
    # partition pattern -> how to measure it directly
    "standard": "point-stabilizer",
    "sign": "alternating",
    "first-syzygy": "pair-sum",
}


def isolate_partition_profile(model: CoverModel, lam: Partition) -> ScrollarProfile:
    """Per-partition profile by measuring a resolvent whose induced character
    contains lam once and subtracting the already-known blocks.

    Resolution order: (d-1,1) from the cover itself; (1^d) from the
    discriminant double cover; (2,1^(d-2)) by duality; (d-2,2) from the
    pair-sum resolvent minus the cover block (for d = 4 from the dihedral
    cubic); (2,2,1) in degree 5 from the affine sextic resolvent; (2,2,2) in
    degree 6 from the exotic sextic resolvent; duals of those by duality."""
    d = model.d
    if lam.d != d:
        raise ValueError("partition size mismatch")
    red = reduced_basis(model)
    g = red.genus
    e_prof = red.profile()

    if lam == Partition((d,)):
        return ScrollarProfile((0,), "measured")
    if lam == Partition((d - 1, 1)):
        return e_prof
    if lam == Partition((1,) * d):
        prof, _ = resolvent_scrollars(model, "alternating")
        return prof
    if d >= 3 and lam == Partition((2,) + (1,) * (d - 2)):
        base = isolate_partition_profile(model, Partition((d - 1, 1)))
        return ScrollarProfile(
            dual_profile(base, g, d).values, "derived-by-subtraction"
        )
    if d >= 4 and lam == Partition((d - 2, 2)):
        if d == 4:
            prof, _ = resolvent_scrollars(model, "quartic-dihedral")
            block = prof
        else:
            prof, _ = resolvent_scrollars(model, "pair-sum")
            block = prof.subtract(e_prof)
        _check_block(block, lam)
        return block
    if d == 5 and lam == Partition((2, 2, 1)):
        prof, _ = resolvent_scrollars(model, "cayley-sextic")
        _check_block(prof, lam)
        return prof
    if d == 6 and lam == Partition((2, 2, 2)):
        prof, _ = resolvent_scrollars(model, "exotic-sextic")
        _check_block(prof, lam)
        return prof
    dual = lam.dual()
    if dual != lam and _directly_resolvable(d, dual):
        block = isolate_partition_profile(model, dual)
        return ScrollarProfile(
            dual_profile(block, g, d).values, "derived-by-subtraction"
        )
    raise ValueError("no resolution strategy for partition %s" % lam)


def _directly_resolvable(d: int, lam: Partition) -> bool:
    if lam in (Partition((d,)), Partition((d - 1, 1)), Partition((1,) * d)):
        return True
    if d >= 4 and lam == Partition((d - 2, 2)):
        return True
    if d == 5 and lam == Partition((2, 2, 1)):
        return True
    if d == 6 and lam == Partition((2, 2, 2)):
        return True
    return False


def _check_block(block: ScrollarProfile, lam: Partition):
    if len(block) != specht_dim(lam):
        raise ArithmeticError(
            "isolated block for %s has size %d, expected %d"
            % (lam, len(block), specht_dim(lam))
        )


def measured_partition_table(model: CoverModel, partitions) -> dict:
    """Profiles for the requested partitions, measured or derived."""
    return {lam: isolate_partition_profile(model, lam) for lam in partitions}


def resolvent_record(model: CoverModel, h_or_tag, seed: int = 0) -> dict:
    """JSON-ready comparison of a measured resolvent against predictions."""
    from .predict import resolvent_profile
    from .symrep import induced_trivial_multiplicities

    if isinstance(h_or_tag, str):
        h = catalog_subgroup(model.d, h_or_tag)
        name = h_or_tag
    else:
        h = h_or_tag
        name = h.name or "H"
    red = reduced_basis(model)
    g = red.genus
    profile, g_measured = resolvent_scrollars(model, h_or_tag, seed=seed)
    needed = [
        lam
        for lam in induced_trivial_multiplicities(h)
        if lam != Partition((model.d,))
    ]
    table = measured_partition_table(model, needed)
    predicted = resolvent_profile(h, table)
    return {
        "subgroup": name,
        "index": h.index(),
        "genus_predicted": resolvent_genus(h, g, model.d),
        "genus_measured": g_measured,
        "profile_predicted": list(predicted.values),
        "profile_measured": list(profile.values),
        "match": list(predicted.values) == list(profile.values),
    }
