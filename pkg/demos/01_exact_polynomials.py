"""Exact polynomial kernel: Gaussian-rational coefficients, resultants, discriminants.

Everything here is exact; no floating point appears.
"""

from nashapprox.poly import UniOverPoly, discriminant, divmod_in_var, parse_poly, resultant, squarefree_part, substitute_linear

names = ["x", "z"]
f = parse_poly("z^3 - 2*x*z + (1+i)", names)
g = parse_poly("z^2 - x", names)

q, r = divmod_in_var(f, g, 1)
print("divide", f.to_text(names), "by", g.to_text(names))
print("  quotient ", q.to_text(names))
print("  remainder", r.to_text(names))
assert q * g + r == f

# z^2 - x and z share a root exactly where x = 0
print("res_z(z^2 - x, z) =", resultant(g, parse_poly("z", names), 1).to_text(names))

pqz = ["p", "q", "z"]
cubic = UniOverPoly.from_multi(parse_poly("z^3 + p*z + q", pqz), 2)
print("disc(z^3 + p z + q) =", discriminant(cubic).to_text(pqz))

doubled = UniOverPoly.from_multi(parse_poly("(z - x)^2 * (z + 1)", names), 1)
print("squarefree part of (z - x)^2 (z + 1):", squarefree_part(doubled).to_multi().to_text(names))

# old coordinates in terms of new ones: x = x' + z', z = z'
print("x*z after the shear:", substitute_linear(parse_poly("x*z", names), [[1, 1], [0, 1]]).to_text(names))
