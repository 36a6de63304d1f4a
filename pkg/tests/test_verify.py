import copy
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from nashapprox.core import ApproxConfig, NashFunction
from nashapprox.gaussrat import GaussRat
from nashapprox.jet import Jet
from nashapprox.poly import MultiPoly, UniOverPoly, parse_poly
from nashapprox.problemio import parse_problem, run_problem
from nashapprox.problems import circle_problem, sin_jet, uv_problem
from nashapprox.verify import branch_defect, lift_branch, monotone_non_increasing, verify_result

CFG = ApproxConfig()
NUS = (1, 2, 3, 4, 5, 6)


@pytest.fixture(scope="module")
def uv():
    return run_problem(parse_problem(uv_problem(8), CFG), NUS, CFG)


def test_monotone():
    assert monotone_non_increasing([3, 2, 2, 1e-20, 0])
    assert not monotone_non_increasing([1, 2])
    assert monotone_non_increasing([])


@given(st.lists(st.floats(0, 1e3), max_size=8))
def test_sorted_descending_is_monotone(values):
    assert monotone_non_increasing(sorted(values, reverse=True))


def test_clean_result_passes(uv):
    report = verify_result(uv, CFG)
    assert report.passed, report.render_text()
    assert len(report.rows) == len(NUS)
    doc = report.to_json()
    assert "timings" not in doc and doc["passed"] is True
    assert "timings" in report.to_json(include_timings=True)


def perturbed(result, nu, delta):
    bad = copy.copy(result)
    bad.functions = dict(result.functions)
    f = bad.functions[nu][0]
    e = (0,) * f.branch_jet.nvars
    jet = f.branch_jet + Jet(f.branch_jet.nvars, f.branch_jet.order, {e: delta})
    bad.functions[nu] = (NashFunction(f.annihilator, jet, f.valid_order),) + tuple(bad.functions[nu][1:])
    return bad


def test_perturbed_branch_fails(uv):
    report = verify_result(perturbed(uv, 3, 1e-3), CFG)
    assert not report.passed
    assert not report.checks["generator_residuals"]
    assert not report.checks["annihilator_residuals"]


def test_degree_jump_fails(uv):
    bad = copy.copy(uv)
    bad.functions = dict(uv.functions)
    f = bad.functions[2][0]
    sq = f.annihilator.to_multi() * f.annihilator.to_multi()
    bad.functions[2] = (NashFunction(UniOverPoly.from_multi(sq, 1), f.branch_jet, f.valid_order),) + bad.functions[2][1:]
    report = verify_result(bad, CFG)
    assert not report.checks["degree_stability"]


def test_text_rendering():
    cfg = CFG
    res = run_problem(parse_problem(circle_problem(8), cfg), (1, 2), cfg)
    text = verify_result(res, cfg).render_text()
    assert "PASS  generator_residuals" in text
    assert text.splitlines()[0].split()[0] == "nu"


@pytest.fixture(scope="module")
def circle():
    return run_problem(parse_problem(circle_problem(8), CFG), NUS, CFG)


def test_lift_extends_sine_branch(circle):
    f = circle.functions[6][1]
    lifted = lift_branch(f, 15, 1e-20)
    # the nu=6 output is a different function from sin, but agrees with its own jet
    assert float((lifted.with_order(8) - f.branch_jet).max_abs()) < 1e-25
    assert lifted.order == 15
    assert float((lifted - sin_jet(15)).truncate(6).max_abs()) < 1e-9


def test_top_coefficient_of_critical_branch_is_checked(circle):
    f = circle.functions[2][1]
    j = f.branch_jet
    bad = NashFunction(f.annihilator, j + Jet(1, j.order, {(8,): 1e-3}), f.valid_order)
    assert bad.residual() <= 1e-9  # invisible to the plain residual
    assert branch_defect(bad, 1e-20) == pytest.approx(1e-3)


def test_high_annihilator_term_is_checked(circle):
    f = circle.functions[6][1]
    A = f.annihilator.to_multi()
    top = max((e for e in A.terms if e[1] == 0), key=lambda e: e[0])
    assert top[0] > 8
    B = A + MultiPoly(2, {top: GaussRat(Fraction(1, 1000))})
    bad = perturbed_fn(circle, 6, 1, NashFunction(UniOverPoly.from_multi(B, 1), f.branch_jet, f.valid_order))
    report = verify_result(bad, CFG)
    assert report.checks["annihilator_residuals"] and not report.checks["lifted_generator_residuals"]


def perturbed_fn(result, nu, k, fn):
    bad = copy.copy(result)
    bad.functions = dict(result.functions)
    funcs = list(bad.functions[nu])
    funcs[k] = fn
    bad.functions[nu] = tuple(funcs)
    return bad


def test_checks_skip_several_source_variables():
    x1 = Jet.var(0, 2, 4)
    A = UniOverPoly.from_multi(parse_poly("z - x1", ["x1", "x2", "z"]), 2)
    assert branch_defect(NashFunction(A, x1, 4), 1e-20) is None

