"""Truncated power series and Weierstrass preparation/division.

A jet is a power series cut at a fixed total degree, with coefficients held
at a chosen binary precision.
"""

from nashapprox.jet import Jet, invert_unit
from nashapprox.problems import exp_jet
from nashapprox.weierstrass import weierstrass_divide, weierstrass_prepare

D = 8
e, e_inv = exp_jet(D), exp_jet(D, -1)
print("max |e^x e^-x - 1| =", float((e * e_inv - 1).max_abs()))
print("1/(1 - x) =", invert_unit(Jet(1, D, {(0,): 1, (1,): -1})))

# u = (1 + x1 + x2) (x2^2 - x1): regular of order 2 in x2
x1, x2 = Jet.var(0, 2, D), Jet.var(1, 2, D)
u = (1 + x1 + x2) * (x2 * x2 - x1)
prep = weierstrass_prepare(u)
print(f"\nu is x2-regular of order {prep.d}; W =")
for k, c in zip(range(prep.d, -1, -1), prep.W.coeffs):
    print(f"  x2^{k}: {c}")
err = (prep.unit * prep.W.to_jet(D) - u).with_order(prep.valid_order).max_abs()
print("preparation residual:", float(err))

f = Jet.from_function(lambda ex, ctx: ctx.mpf(1) / (1 + sum(ex)), 2, D)
div = weierstrass_divide(f, prep.W, 2)
rec = div.H * prep.W.to_jet(D) ** 2 + div.r.to_jet(D)
print(f"division by W^2: deg_x2 r = {div.r.degree} < {2 * prep.d}, residual {float((rec - f).with_order(div.valid_order).max_abs()):.1e}")
