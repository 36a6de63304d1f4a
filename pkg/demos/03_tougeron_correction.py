"""Turning an approximate root into an exact one.

For A(z) = z^2 - (1 + x) the guess alpha = 1 + x/2 is off by O(x^2).  With
c = A(alpha) / A'(alpha)^2 the correction returns the exact root
sqrt(1 + x) and certifies sup |b - alpha| <= 2 sup |c A'(alpha)| on the
polydisc of radius 1/2.
"""

from nashapprox.jet import Jet, invert_unit
from nashapprox.problems import sqrt1p_jet
from nashapprox.solvers import TougeronConfig, horner, tougeron_correct

D = 8
one, x = Jet.const(1, 1, D), Jet.var(0, 1, D)
A = [one, Jet.zero(1, D), -(one + x)]
alpha = one + x * 0.5
c = horner(A, alpha) * invert_unit(alpha * 2) ** 2

res = tougeron_correct(A, alpha, c, TougeronConfig(radius=0.5, samples=100))
print("corrected root:", res.b)
print("distance to sqrt(1+x):", float(res.b.max_diff(sqrt1p_jet(D))))
print(f"iterations {res.iterations}, residual {res.residual:.1e}")
print(f"sup|b - alpha| = {res.bound_lhs:.4f} <= 2 sup|c A'(alpha)| = {res.bound_rhs:.4f}: {res.bound_ok}")
