"""Standard problems with closed-form series for their solution jets."""

from __future__ import annotations

from .elim import VarietySpec
from .jet import DEFAULT_PREC, DEFAULT_ZERO_TOL, Jet
from .poly import parse_poly
from .problemio import problem_document

__all__ = ["exp_jet", "cos_jet", "sin_jet", "sqrt1p_jet", "uv_problem", "circle_problem", "trivial_problem", "sqrt_problem", "descent_problem"]


def _series(coeff, order: int, prec: int = DEFAULT_PREC) -> Jet:
    return Jet.from_function(lambda e, ctx: coeff(e[0], ctx), 1, order, prec, DEFAULT_ZERO_TOL)


def exp_jet(order: int, sign: int = 1, prec: int = DEFAULT_PREC) -> Jet:
    return _series(lambda k, c: c.mpf(sign) ** k / c.factorial(k), order, prec)


def cos_jet(order: int, prec: int = DEFAULT_PREC) -> Jet:
    return _series(lambda k, c: 0 if k % 2 else c.mpf(-1) ** (k // 2) / c.factorial(k), order, prec)


def sin_jet(order: int, prec: int = DEFAULT_PREC) -> Jet:
    return _series(lambda k, c: 0 if k % 2 == 0 else c.mpf(-1) ** (k // 2) / c.factorial(k), order, prec)


def sqrt1p_jet(order: int, prec: int = DEFAULT_PREC) -> Jet:
    return _series(lambda k, c: c.binomial(c.mpf(1) / 2, k), order, prec)


def uv_problem(order: int = 8, prec: int = DEFAULT_PREC) -> dict:
    """``u v = 1`` with ``(u, v) = (e^x, e^-x)``."""
    return problem_document("theorem", ["x"], ["u", "v"], ["u*v - 1"], [exp_jet(order, 1, prec), exp_jet(order, -1, prec)])


def circle_problem(order: int = 8, prec: int = DEFAULT_PREC) -> dict:
    """``u^2 + v^2 = 1`` with ``(u, v) = (cos x, sin x)``."""
    return problem_document("theorem", ["x"], ["u", "v"], ["u^2 + v^2 - 1"], [cos_jet(order, prec), sin_jet(order, prec)])


def trivial_problem(order: int = 8, prec: int = DEFAULT_PREC) -> dict:
    """No equations: the approximations are Taylor polynomials."""
    return problem_document("theorem", ["x"], ["u"], [], [exp_jet(order, 1, prec)])


def sqrt_problem(order: int = 8, prec: int = DEFAULT_PREC) -> dict:
    """The hypersurface ``v^2 = 1 + y`` containing ``(x, sqrt(1 + x))``."""
    V = VarietySpec(("y", "v"), (parse_poly("v^2 - 1 - y", ["y", "v"]),), 1)
    return problem_document("variety", ["x"], [], V, [Jet.var(0, 1, order, prec), sqrt1p_jet(order, prec)])


def descent_problem(order: int = 8, prec: int = DEFAULT_PREC) -> dict:
    """``v^2 = y^2`` at the constant point 0, where the discriminant ``4 y^2`` vanishes."""
    V = VarietySpec(("y", "v"), (parse_poly("v^2 - y^2", ["y", "v"]),), 1)
    z = Jet.zero(1, order, prec)
    return problem_document("variety", ["x"], [], V, [z, z])
