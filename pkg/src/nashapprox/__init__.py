"""Nash (algebraic) approximation of holomorphic solutions of polynomial systems, at jet level."""

from .core import (
    AdmissionError,
    ApproxConfig,
    ApproxProblem,
    ApproxResult,
    NashFunction,
    PipelineError,
    approximate_into_variety,
    approximate_solution,
)
from .elim import VarietySpec, generic_fiber_count, optimal_polynomial, properness_check
from .gaussrat import GaussRat
from .jet import Jet, JetPoly, invert_unit
from .poly import MultiPoly, UniOverPoly, discriminant, parse_poly, resultant, squarefree_part
from .solvers import newton_solve, tougeron_correct
from .tsystem import build_T_system
from .verify import Report, convergence_table, verify_result
from .weierstrass import weierstrass_divide, weierstrass_prepare

__all__ = [
    "AdmissionError",
    "ApproxConfig",
    "ApproxProblem",
    "ApproxResult",
    "GaussRat",
    "Jet",
    "JetPoly",
    "MultiPoly",
    "NashFunction",
    "PipelineError",
    "Report",
    "UniOverPoly",
    "VarietySpec",
    "approximate_into_variety",
    "approximate_solution",
    "build_T_system",
    "convergence_table",
    "discriminant",
    "generic_fiber_count",
    "invert_unit",
    "newton_solve",
    "optimal_polynomial",
    "parse_poly",
    "properness_check",
    "resultant",
    "squarefree_part",
    "tougeron_correct",
    "verify_result",
    "weierstrass_divide",
    "weierstrass_prepare",
]
