"""oretel: creative telescoping in Ore algebras with a rational-denominator ansatz."""

__version__ = "0.1.0"

from .errors import *  # noqa: F401,F403
from .groebner import LeftGB, left_buchberger, normal_form
from .ore import AlgebraSpec, GeneratorSpec, OreOperator
from .telescope import SolverOptions, Telescoper, TelescopingProblem, find_creative_telescoping

__all__ = [
    "AlgebraSpec",
    "GeneratorSpec",
    "LeftGB",
    "OreOperator",
    "SolverOptions",
    "Telescoper",
    "TelescopingProblem",
    "find_creative_telescoping",
    "left_buchberger",
    "normal_form",
]
