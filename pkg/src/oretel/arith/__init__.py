"""Exact coefficient arithmetic: polynomials, rational functions, linear algebra."""

from .linalg import (
    independent_rows_mod,
    nullspace,
    nullspace_mod,
    rank_mod,
    rref_mod,
    solve_fraction_free,
)
from .modular import DEFAULT_PRIME, ModInt, PolyImage, evaluate_hom, mod_rational, random_point
from .poly import (
    change_ring,
    degree_in,
    depends_on,
    divides,
    factor_sort_key,
    exact_div,
    gcd_free_basis,
    integer_ring,
    modular_ring,
    monic_factors,
    mpoly_arith,
    mpoly_gcd,
    mpoly_lcm,
    normalize,
    poly_key,
    primitive_integer,
    rational_ring,
)
from .ratfunc import RatFunc, shift_poly

__all__ = [
    "DEFAULT_PRIME",
    "ModInt",
    "PolyImage",
    "RatFunc",
    "change_ring",
    "degree_in",
    "depends_on",
    "divides",
    "evaluate_hom",
    "exact_div",
    "factor_sort_key",
    "gcd_free_basis",
    "independent_rows_mod",
    "integer_ring",
    "mod_rational",
    "modular_ring",
    "monic_factors",
    "mpoly_arith",
    "mpoly_gcd",
    "mpoly_lcm",
    "normalize",
    "nullspace",
    "nullspace_mod",
    "poly_key",
    "primitive_integer",
    "random_point",
    "rank_mod",
    "rational_ring",
    "rref_mod",
    "shift_poly",
    "solve_fraction_free",
]
