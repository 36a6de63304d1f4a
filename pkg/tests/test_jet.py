import json
import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from nashapprox.jet import Jet, JetError, JetPoly, context, eval_poly, invert_unit, rationalize
from nashapprox.poly import parse_poly
from nashapprox.problems import exp_jet


def test_exp_times_exp_minus_is_one():
    D = 12
    prod = exp_jet(D, 1) * exp_jet(D, -1)
    assert float(prod.max_diff(Jet.const(1, 1, D))) <= 1e-15


def test_product_truncates_at_order():
    x = Jet.var(0, 1, 1)
    assert (x * x).is_zero()
    y = Jet.var(0, 2, 3)
    assert (y**4).is_zero()
    assert (y**3)[(3, 0)] == 1


def test_coefficients_above_order_are_dropped():
    j = Jet(2, 2, {(1, 1): 3, (2, 1): 5})
    assert j.coeffs.keys() == {(1, 1)}


def test_invert_geometric_series():
    D = 7
    one_minus_x = Jet(1, D, {(0,): 1, (1,): -1})
    inv = invert_unit(one_minus_x)
    assert all(abs(inv[(k,)] - 1) < 1e-30 for k in range(D + 1))


def test_invert_non_unit_raises():
    with pytest.raises(JetError):
        invert_unit(Jet.var(0, 1, 5))


@st.composite
def unit_jets(draw):
    n = draw(st.integers(1, 3))
    D = draw(st.integers(0, 6))
    coeffs = {}
    for _ in range(draw(st.integers(0, 8))):
        e = tuple(draw(st.integers(0, D)) for _ in range(n))
        coeffs[e] = complex(draw(st.floats(-2, 2)), draw(st.floats(-2, 2)))
    c0 = draw(st.floats(0.5, 3)) * draw(st.sampled_from([1, -1, 1j]))
    coeffs[(0,) * n] = c0
    return Jet(n, D, coeffs)


@settings(max_examples=200, deadline=None)
@given(unit_jets())
def test_invert_unit_property(u):
    one = Jet.const(1, u.nvars, u.order)
    assert float((u * invert_unit(u)).max_diff(one)) <= 1e-12


def test_diff_and_eval():
    D = 6
    e = exp_jet(D)
    assert float(e.diff(0).max_diff(e.with_order(D - 1))) <= 1e-30
    x = Jet.var(0, 2, 4)
    y = Jet.var(1, 2, 4)
    p = parse_poly("a^2 - 3*a*b + 1", ["a", "b"])
    want = x * x - 3 * x * y + 1
    assert eval_poly(p, [x, y]) == want


def test_linear_change():
    x, y = Jet.var(0, 2, 3), Jet.var(1, 2, 3)
    u = x * y
    # u(Mx) with row i giving the image of variable i
    changed = u.linear_change([[1, 1], [0, 1]])
    assert changed == (x + y) * y


def test_point_evaluation():
    e = exp_jet(20)
    assert abs(complex(e([0.5])) - math.exp(0.5)) < 1e-15


def test_json_round_trip():
    j = Jet(2, 3, {(0, 0): Fraction(1, 3), (1, 2): -2.5 + 1j, (0, 1): "0.125"})
    back = Jet.from_json(json.loads(json.dumps(j.to_json())))
    assert back.nvars == 2 and back.order == 3
    assert float(back.max_diff(j)) < 1e-35


def test_json_malformed():
    with pytest.raises(JetError):
        Jet.from_json({"nvars": 1})


def test_rationalize_keeps_sign():
    ctx = context(128)
    assert rationalize(ctx.mpf(-1) / 3, 128) == Fraction(-1, 3)
    assert rationalize(ctx.mpf("-0.5"), 128) == Fraction(-1, 2)
    assert rationalize(ctx.mpf(0), 128) == 0
    with pytest.raises(JetError):
        rationalize(mpmath.mpf("inf"), 128)


def test_to_poly_negative_coefficients():
    j = Jet(1, 3, {(0,): -1, (2,): Fraction(-1, 2)})
    assert j.to_poly() == parse_poly("-1 - 1/2*x^2", ["x"])


def test_jetpoly_embedding():
    one = Jet.const(1, 1, 4)
    x1 = Jet.var(0, 1, 4)
    W = JetPoly(1, [one, Jet.zero(1, 4), -x1])  # x2^2 - x1
    assert W.is_weierstrass()
    assert W.to_jet() == Jet(2, 4, {(0, 2): 1, (1, 0): -1})
    assert not JetPoly(1, [one, one]).is_weierstrass()


def test_mismatched_rings():
    with pytest.raises(JetError):
        Jet.var(0, 1, 3) + Jet.var(0, 2, 3)
