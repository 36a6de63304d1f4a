"""End to end: algebraic approximations of e^x on the hyperbola uv = 1.

For each nu the output is a pair of algebraic functions (u_nu, v_nu) with
u_nu v_nu = 1 exactly, each given by a unitary annihilator over C[x] and the
jet of the chosen branch.  They approach (e^x, e^-x) as nu grows.
"""

from nashapprox.core import ApproxConfig, approximate_solution
from nashapprox.poly import parse_poly
from nashapprox.problems import exp_jet
from nashapprox.verify import verify_result

D = 8
cfg = ApproxConfig()
Q = [parse_poly("u*v - 1", ["x", "u", "v"])]
res = approximate_solution(Q, ["x"], ["u", "v"], [exp_jet(D), exp_jet(D, -1)], range(1, 7), cfg)

for nu in res.nu_list:
    u, v = res.functions[nu]
    err = float((u.branch_jet - exp_jet(D)).max_abs())
    print(f"nu={nu}: u annihilated by {u.annihilator.to_multi().to_text(['x', 'z'])}")
    print(f"      |u - e^x| = {err:.2e}")

print()
print(verify_result(res, cfg).render_text())
