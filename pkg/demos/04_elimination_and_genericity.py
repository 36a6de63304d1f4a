"""Projections, optimal polynomials and certified generic choices.

Each randomized choice (coordinate change, linear form) is accepted only
with a certificate: a Noether-position basis for properness, and the generic
fiber count for a separating linear form.
"""

from nashapprox.elim import VarietySpec, generic_fiber_count, optimal_polynomial, properness_check
from nashapprox.genericity import find_proper_position, form_separates
from nashapprox.groebner import MonomialOrder, eliminate, groebner_basis
from nashapprox.poly import parse_poly

names = ["t", "u", "v"]
G = groebner_basis([parse_poly("u - t^2", names), parse_poly("v - t^3", names)], MonomialOrder.block((0,), (1, 2)))
print("image of t -> (t^2, t^3):", [g.to_text(names) for g in eliminate(G, [0]).generators])

yv = ["y", "v"]
hyper = VarietySpec(tuple(yv), (parse_poly("y*v - 1", yv),), 1)
print("\nyv = 1 proper over the y-line?", bool(properness_check(hyper)))
rec, W = find_proper_position(hyper)
print("after the change", rec.matrix, ":", W.generators[0].to_text(yv), "proper:", bool(properness_check(W)))
print("optimal polynomial of v:", optimal_polynomial(W, [1]).to_multi().to_text(["y", "z"]))

names = ["y", "v1", "v2"]
V = VarietySpec(tuple(names), (parse_poly("v1^2 - y", names), parse_poly("v2 - v1", names)), 1)
count = generic_fiber_count(V)
print(f"\n{{v1^2 = y, v2 = v1}} has {count} points over a generic y")
for L in ([1, -1], [1, 0]):
    ok, deg = form_separates(V, L, count)
    print(f"  L = {L}: deg P_L = {deg} -> {'accepted' if ok else 'rejected'}")
