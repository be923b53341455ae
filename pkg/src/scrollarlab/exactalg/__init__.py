"""Exact arithmetic tower: F_p, F_p[t], F_p(t), bivariate polynomials,
finite-field linear algebra, polynomial-matrix reduction and factorization."""

from .poly import (
    RationalFunction,
    UniPoly,
    XPoly,
    is_probable_prime,
    lagrange_interpolate,
    modinv,
    parse_unipoly,
    parse_xpoly,
    poly_to_str,
    xpoly_sqrt,
    xpoly_to_str,
)
from .factor import (
    GFExt,
    factorize,
    irreducible_polynomial,
    is_irreducible,
    is_square_poly,
    poly_sqrt,
    roots_in_extension,
    squarefree_decomposition,
)
from .linalg import (
    bareiss_det,
    charpoly_interpolated,
    polymat_solve,
    popov_normalize,
    ratmat_inverse,
    resultant_modp,
    row_module_basis,
    shifted_row_degree,
    weak_popov,
    xpoly_content,
    xpoly_discriminant,
    xpoly_gcd_main,
    xpoly_resultant,
    xpoly_separable,
)
from . import gflin

__all__ = [
    "GFExt",
    "RationalFunction",
    "UniPoly",
    "XPoly",
    "bareiss_det",
    "charpoly_interpolated",
    "factorize",
    "gflin",
    "irreducible_polynomial",
    "is_irreducible",
    "is_probable_prime",
    "is_square_poly",
    "lagrange_interpolate",
    "modinv",
    "parse_unipoly",
    "parse_xpoly",
    "poly_sqrt",
    "poly_to_str",
    "polymat_solve",
    "popov_normalize",
    "ratmat_inverse",
    "resultant_modp",
    "roots_in_extension",
    "row_module_basis",
    "shifted_row_degree",
    "squarefree_decomposition",
    "weak_popov",
    "xpoly_content",
    "xpoly_discriminant",
    "xpoly_gcd_main",
    "xpoly_separable",
    "xpoly_resultant",
    "xpoly_sqrt",
    "xpoly_to_str",
]
