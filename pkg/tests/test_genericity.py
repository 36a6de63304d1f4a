import pytest

from nashapprox.elim import VarietySpec, generic_fiber_count, optimal_polynomial
from nashapprox.genericity import (
    ChangeRecord,
    GenericityError,
    apply_change_to_variety,
    choose_linear_form,
    find_proper_position,
    find_regular_direction,
)
from nashapprox.jet import Jet, JetError
from nashapprox.poly import parse_poly
from nashapprox.weierstrass import xn_regular_order

YV = ["y", "v"]


def V(gens, names=YV, m=1):
    return VarietySpec(tuple(names), tuple(parse_poly(g, list(names)) for g in gens), m)


def test_hyperbola_needs_a_shear():
    rec, W = find_proper_position(V(["y*v - 1"]))
    assert rec.matrix == ((1, 1), (0, 1))
    assert W.generators[0] == parse_poly("v^2 + y*v - 1", YV)
    assert rec.attempts > 1


def test_already_proper_keeps_identity():
    rec, W = find_proper_position(V(["v^2 - y"]))
    assert rec.is_identity and rec.attempts == 1
    assert W.generators == V(["v^2 - y"]).generators


def test_fixed_rows_stay_identity():
    names = ["y1", "y2", "v"]
    rec, W = find_proper_position(V(["y2*v - 1"], names, m=2), fixed=(0,))
    assert rec.matrix[0] == (1, 0, 0) and not rec.is_identity


def test_pinned_hyperbola_cannot_be_made_proper():
    # only v may move, and y*(c v) = 1 is never finite over the y-line
    with pytest.raises(GenericityError):
        find_proper_position(V(["y*v - 1"]), fixed=(0,), max_tries=10)


def test_zero_ideal_exhausts_attempts():
    with pytest.raises(GenericityError) as info:
        find_proper_position(V([], YV, 0), max_tries=5)
    assert len(info.value.failures) == 5


def test_seeded_search_is_deterministic():
    spec = V(["y*v - 1"])
    assert find_proper_position(spec, seed=3)[0] == find_proper_position(spec, seed=3)[0]


def test_change_round_trip_on_values():
    rec = ChangeRecord.make([[2, 1], [1, 1]], "ambient", 0, 1)
    assert rec.old_coordinates(rec.new_coordinates([5, 7])) == [5, 7]


def test_apply_change():
    W = apply_change_to_variety(V(["y*v - 1"]), [[1, 1], [0, 1]])
    assert W.generators[0] == parse_poly("(y+v)*v - 1", YV)


@pytest.mark.parametrize("gens, names, want", [(["u^2 + v^2 - 1"], ["u", "v"], [1]), (["v^2 - y"], YV, [1])])
def test_linear_form(gens, names, want):
    assert choose_linear_form(V(gens, names)) == want


def test_linear_form_separates_two_fiber_variables():
    names = ["y", "v", "w"]
    spec = V(["v^2 - y", "w^2 - y"], names)
    L = choose_linear_form(spec)
    # w = +-v, so a coordinate projection only sees two of the four points
    assert L not in ([1, 0], [0, 1])
    assert optimal_polynomial(spec, L).degree == generic_fiber_count(spec) == 4


def test_regular_direction():
    u = Jet(2, 6, {(1, 1): 1})
    rec, v, d = find_regular_direction(u)
    assert d == 2 and rec.matrix == ((1, 1), (0, 1))
    assert xn_regular_order(v) == 2


def test_regular_direction_identity_when_regular():
    u = Jet(2, 6, {(0, 1): 1, (3, 0): 1})
    rec, v, d = find_regular_direction(u)
    assert rec.is_identity and d == 1


def test_regular_direction_of_zero():
    with pytest.raises(JetError):
        find_regular_direction(Jet.zero(2, 4))
