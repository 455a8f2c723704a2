"""Creative telescoping with a rational ansatz for the delta parts."""

from .ansatz import (
    Ansatz,
    Block,
    build_polynomial_ansatz,
    build_rational_ansatz,
    guess_denominator,
)
from .exact import solve_exact
from .modular import (
    ModularSystem,
    Sketch,
    degree_search,
    hom_feasible,
    minimize_denominators,
    prune_zero_unknowns,
)
from .problem import SolverOptions, Telescoper, TelescopingProblem
from .search import find_creative_telescoping
from .verify import NumericReport, verify_numeric_shift, verify_symbolic

PrincipalSupport = tuple

__all__ = [
    "Ansatz",
    "Block",
    "ModularSystem",
    "NumericReport",
    "PrincipalSupport",
    "Sketch",
    "SolverOptions",
    "Telescoper",
    "TelescopingProblem",
    "build_polynomial_ansatz",
    "build_rational_ansatz",
    "degree_search",
    "find_creative_telescoping",
    "guess_denominator",
    "hom_feasible",
    "minimize_denominators",
    "prune_zero_unknowns",
    "solve_exact",
    "verify_numeric_shift",
    "verify_symbolic",
]
