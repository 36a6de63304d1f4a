import numpy as np
import pytest

from nashapprox.jet import Jet, JetError, invert_unit
from nashapprox.poly import parse_poly
from nashapprox.problems import exp_jet, sqrt1p_jet
from nashapprox.solvers import (
    ContractionError,
    NewtonError,
    TougeronConfig,
    horner,
    newton_solve,
    polydisc_samples,
    select_square_subsystem,
    tougeron_correct,
)

D = 8


def sqrt_setup(alpha_coeffs):
    """A = z^2 - (1 + x) with a polynomial guess alpha and the matching c."""
    x = Jet.var(0, 1, D)
    one = Jet.const(1, 1, D)
    A = [one, Jet.zero(1, D), -(one + x)]
    alpha = Jet(1, D, {(k,): a for k, a in enumerate(alpha_coeffs)})
    dA = alpha * 2
    c = horner(A, alpha) * invert_unit(dA) ** 2
    return A, alpha, c


def test_sqrt_correction_coefficients():
    A, alpha, c = sqrt_setup([1, 0.5])
    res = tougeron_correct(A, alpha, c)
    want = [1, 0.5, -0.125, 0.0625, -5 / 128]
    assert all(abs(complex(res.b[(k,)]) - w) < 1e-12 for k, w in enumerate(want))
    assert float(res.b.max_diff(sqrt1p_jet(D))) < 1e-12
    assert res.residual <= 1e-10
    assert res.bound_ok


def test_exact_root_needs_no_correction():
    A, _, _ = sqrt_setup([1])
    exact = sqrt1p_jet(D)
    c = Jet.zero(1, D)
    res = tougeron_correct(A, exact, c)
    assert float(res.b.max_diff(exact)) == 0.0
    assert res.iterations == 1


def test_large_c_fails_to_contract():
    one = Jet.const(1, 1, D)
    A = [one, Jet.zero(1, D), -one * 101]
    alpha = one
    c = horner(A, alpha) * invert_unit(alpha * 2) ** 2  # c = -25
    with pytest.raises(ContractionError):
        tougeron_correct(A, alpha, c, TougeronConfig(max_iterations=50))


def test_hypothesis_is_checked():
    A, alpha, c = sqrt_setup([1, 0.5])
    with pytest.raises(JetError, match="hypothesis"):
        tougeron_correct(A, alpha, c * 2)


def test_polydisc_samples_inside_radius():
    pts = polydisc_samples(2, 0.5, 50, seed=3)
    assert pts.shape == (66, 2)
    assert np.all(np.abs(pts) <= 0.5 + 1e-12)


def test_newton_series_inversion():
    # y1 + y1^2 = x1, y2 = x2
    names = ["x1", "x2", "y1", "y2"]
    system = [parse_poly("y1 + y1^2 - x1", names), parse_poly("y2 - x2", names)]
    x1, x2 = Jet.var(0, 2, 6), Jet.var(1, 2, 6)
    y1, y2 = newton_solve(system, [x1, x2], [Jet.zero(2, 6), Jet.zero(2, 6)])
    want = Jet(2, 6, {(1, 0): 1, (2, 0): -1, (3, 0): 2, (4, 0): -5, (5, 0): 14, (6, 0): -42})
    assert float(y1.max_diff(want)) < 1e-25
    assert float(y2.max_diff(x2)) < 1e-25


def test_newton_reciprocal():
    system = [parse_poly("u*v - 1", ["u", "v"])]
    v = newton_solve(system, [exp_jet(D)], [Jet.const(1, 1, D)])[0]
    assert float(v.max_diff(exp_jet(D, -1))) < 1e-25


def test_newton_singular():
    system = [parse_poly("v^2 - u", ["u", "v"])]
    with pytest.raises(NewtonError):
        newton_solve(system, [Jet.var(0, 1, 4)], [Jet.zero(1, 4)])


def test_square_subsystem_selection():
    J = np.array([[1.0, 0.0], [2.0, 0.0], [0.0, 3.0]])
    rows = select_square_subsystem(J)
    assert len(rows) == 2 and 2 in rows
