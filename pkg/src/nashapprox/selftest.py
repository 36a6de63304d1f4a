"""Small bundled property suites runnable without pytest."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable

from .elim import VarietySpec, optimal_polynomial
from .groebner import MonomialOrder, eliminate, groebner_basis
from .jet import Jet, invert_unit
from .poly import MultiPoly, UniOverPoly, discriminant, divmod_in_var, parse_poly, resultant
from .solvers import TougeronConfig, tougeron_correct
from .weierstrass import weierstrass_divide, weierstrass_prepare

__all__ = ["SUITES", "run_selftest", "CheckResult"]


@dataclass
class CheckResult:
    suite: str
    name: str
    ok: bool
    detail: str = ""


def _exact_poly(fault: bool):
    names = ["x", "y"]
    f = parse_poly("x^3 - 2*x*y + y^2 - 1", names)
    g = parse_poly("x^2 + y", names)
    q, r = divmod_in_var(f, g, 0)
    yield "divmod reconstructs the dividend", q * g + r == f
    a, b, c = (MultiPoly.var(i, 4) for i in range(3))
    quad = UniOverPoly(3, [a, b, c])
    want = b * b - 4 * a * c
    if fault:
        want = want + 1
    yield "quadratic discriminant", discriminant(quad) == want
    p, q2 = MultiPoly.var(0, 3), MultiPoly.var(1, 3)
    cubic = UniOverPoly(2, [MultiPoly.const(1, 3), MultiPoly.zero(3), p, q2])
    yield "depressed cubic discriminant", discriminant(cubic) == -4 * p**3 - 27 * q2**2
    u = parse_poly("t^2 - 2", ["t"])
    v = parse_poly("t - 1", ["t"])
    yield "resultant of t^2-2 and t-1", resultant(u, v, 0) == -1


def _weierstrass(fault: bool):
    rng = random.Random(7)
    for trial in range(5):
        n, D = 2, 8
        coeffs = {(0, 2): 1 + rng.random()}
        for _ in range(6):
            e = (rng.randint(1, 3), rng.randint(0, 3))
            coeffs[e] = rng.uniform(-1, 1)
        u = Jet(n, D, coeffs)
        prep = weierstrass_prepare(u)
        back = prep.unit * prep.W.to_jet(D)
        err = float((back - u).with_order(prep.valid_order).max_abs())
        yield f"preparation identity #{trial}", err <= 1e-10
        f = Jet(n, D, {(rng.randint(0, 4), rng.randint(0, 4)): rng.uniform(-1, 1) for _ in range(8)})
        div = weierstrass_divide(f, prep.W, 2)
        rec = div.H * prep.W.to_jet(D) ** 2 + div.r.to_jet(D)
        err = float((rec - f).with_order(div.valid_order).max_abs())
        yield f"division identity #{trial}", err <= 1e-10 and div.r.degree < 2 * prep.d


def _tougeron(fault: bool):
    D = 8
    x = Jet.var(0, 1, D)
    one = Jet.const(1, 1, D)
    A = [one, Jet.zero(1, D), -(one + x)]
    alpha = one + x * 0.5
    dA = alpha * 2
    c = (alpha * alpha - one - x) * invert_unit(dA) ** 2
    res = tougeron_correct(A, alpha, c, TougeronConfig())
    yield "sqrt(1+x) correction residual", res.residual <= 1e-10
    yield "sqrt(1+x) sup bound", res.bound_ok
    b = res.b
    want = [1, 0.5, -0.125, 0.0625, -5 / 128]
    if fault:
        want[1] = 0.6
    yield "sqrt(1+x) coefficients", all(abs(complex(b[(k,)]) - w) < 1e-12 for k, w in enumerate(want))


def _elimination(fault: bool):
    names = ["t", "u", "v"]
    G = groebner_basis([parse_poly("u - t^2", names), parse_poly("v - t^3", names)], MonomialOrder.block((0,), (1, 2)))
    E = eliminate(G, [0])
    want = parse_poly("v^2 - u^3", names)
    yield "twisted cubic eliminant", len(E.generators) == 1 and E.generators[0] in (want, -want)
    V = VarietySpec(("y", "v"), (parse_poly("v^2 - y", ["y", "v"]),), 1)
    P = optimal_polynomial(V, [2])
    yield "optimal polynomial of 2v on v^2=y", P.to_multi() == parse_poly("z^2 - 4*y", ["y", "z"])


SUITES: dict[str, Callable] = {
    "exact-poly": _exact_poly,
    "weierstrass": _weierstrass,
    "tougeron": _tougeron,
    "elimination": _elimination,
}


def run_selftest(only: str | None = None, fault: bool = False) -> list[CheckResult]:
    if only is not None and only not in SUITES:
        raise KeyError(only)
    out = []
    for suite, fn in SUITES.items():
        if only is not None and suite != only:
            continue
        try:
            for name, ok in fn(fault):
                out.append(CheckResult(suite, name, bool(ok)))
        except Exception as exc:  # a crashing suite is a failed check, not a crash of the runner
            out.append(CheckResult(suite, "suite raised", False, f"{type(exc).__name__}: {exc}"))
    return out
