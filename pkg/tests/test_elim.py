import pytest

from nashapprox.elim import (
    ElimError,
    VarietySpec,
    generic_fiber_count,
    optimal_polynomial,
    properness_check,
    zero_dim_radical,
)
from nashapprox.groebner import MonomialOrder, eliminate, groebner_basis, ideal_dimension, reduce_mod
from nashapprox.poly import MultiPoly, parse_poly

YV = ["y", "v"]


def V(gens, names=YV, m=1):
    return VarietySpec(tuple(names), tuple(parse_poly(g, list(names)) for g in gens), m)


def test_twisted_cubic_elimination():
    names = ["t", "u", "v"]
    G = groebner_basis([parse_poly("u - t^2", names), parse_poly("v - t^3", names)], MonomialOrder.block((0,), (1, 2)))
    E = eliminate(G, [0])
    want = parse_poly("v^2 - u^3", names)
    assert len(E.generators) == 1 and E.generators[0] in (want, -want)


def test_unit_ideal():
    G = groebner_basis([parse_poly("y", YV), parse_poly("y - 1", YV)])
    assert G.is_unit()


def test_eliminating_a_graph_gives_zero_ideal():
    G = groebner_basis([parse_poly("v - y", YV)], MonomialOrder.block((1,), (0,)))
    assert eliminate(G, [1]).generators == ()


def test_reduce_mod():
    G = groebner_basis([parse_poly("v^2 - y", YV)], MonomialOrder.lex((1, 0)))
    assert reduce_mod(G, parse_poly("v^4", YV)) == parse_poly("y^2", YV)


def test_dimension():
    assert ideal_dimension(groebner_basis([parse_poly("v^2 - y", YV)])) == 1
    assert ideal_dimension(groebner_basis([parse_poly("v", YV), parse_poly("y", YV)])) == 0


@pytest.mark.parametrize("gens, L, want", [(["v^2 - y"], [1], "z^2 - y"), (["v - y"], [1], "z - y"), (["v^2 - y"], [2], "z^2 - 4*y")])
def test_optimal_polynomials(gens, L, want):
    P = optimal_polynomial(V(gens), L)
    assert P.to_multi() == parse_poly(want, ["y", "z"])


def test_optimal_polynomial_two_fiber_vars():
    names = ["y", "v", "w"]
    P = optimal_polynomial(V(["v^2 - y", "w - v"], names), [1, 1])
    assert P.to_multi() == parse_poly("z^2 - 4*y", ["y", "z"])


def test_properness():
    assert properness_check(V(["v^2 - y"]))
    assert properness_check(V(["v^3 + y*v - 1"]))
    cert = properness_check(V(["y*v - 1"]))
    assert not cert and cert.failing_var == 1
    assert properness_check(V([], ["y"], 1))


def test_optimal_polynomial_needs_properness():
    with pytest.raises(ElimError):
        optimal_polynomial(V(["y*v - 1"]), [1])


@pytest.mark.parametrize("gens, names, want", [(["v^2 - y"], YV, 2), (["v - y"], YV, 1), (["u^2 + v^2 - 1"], ["u", "v"], 2)])
def test_fiber_counts(gens, names, want):
    assert generic_fiber_count(V(gens, names)) == want


def test_fiber_count_ignores_multiplicity():
    assert generic_fiber_count(V(["(v - y)^2"])) == 1


def test_zero_dim_radical():
    names = ["v"]
    R = zero_dim_radical([parse_poly("v^2", names)])
    assert R is not None and list(R.generators) == [parse_poly("v", names)]
    assert zero_dim_radical([parse_poly("v*y", YV)]) is None


def test_variety_json_round_trip():
    spec = V(["v^2 - y"])
    assert VarietySpec.from_json(spec.to_json()) == spec
    with pytest.raises(ElimError):
        VarietySpec.from_json({"base_vars": ["y"], "declared_dim": 2})
    with pytest.raises(ElimError):
        VarietySpec(("y",), (MultiPoly.var(0, 2),), 1)
