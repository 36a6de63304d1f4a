"""Weierstrass preparation and division for jets in the last variable ``x_n``.

Both operations use the classical formal iteration: write the divisor as
``g = p(g) + x_n^k q(g)`` with ``q(g)`` a unit and ``p(g)`` of ``x_n``-degree
below ``k``; every pass raises the ``x'``-adic order of the remainder, so a
jet of order ``D`` is exhausted after at most ``D + 1`` passes.  Dividing out
``x_n^k`` costs ``k`` orders, which is reported as ``valid_order``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .jet import Jet, JetError, JetPoly, invert_unit

__all__ = [
    "xn_regular_order",
    "weierstrass_prepare",
    "weierstrass_divide",
    "Preparation",
    "Division",
]


def xn_regular_order(u: Jet) -> int:
    """Smallest ``k`` with a nonzero ``x_n^k`` coefficient on the ``x_n``-axis."""
    n = u.nvars
    if n == 0:
        raise JetError("jet has no variables")
    axis = [e[-1] for e in u.coeffs if not any(e[:-1])]
    if not axis:
        raise JetError("jet is not x_n-regular: it vanishes on the x_n-axis to its order")
    return min(axis)


def _split(g: Jet, k: int) -> tuple[Jet, Jet]:
    """``g = low + x_n^k * high`` with ``deg_{x_n} low < k``."""
    low, high = {}, {}
    for e, c in g.coeffs.items():
        if e[-1] < k:
            low[e] = c
        else:
            high[e[:-1] + (e[-1] - k,)] = c
    return g._like(low), g._like(high)


def _divide_regular(f: Jet, g: Jet, k: int, max_passes: int | None = None) -> tuple[Jet, Jet]:
    """Quotient and remainder of ``f`` by ``g`` regular of order ``k`` in ``x_n``."""
    p_g, q_g = _split(g, k)
    e = invert_unit(q_g)
    quotient = f._like({})
    remainder = f._like({})
    r = f
    passes = 0
    limit = max_passes if max_passes is not None else f.order + 2
    while not r.is_zero():
        if passes > limit:
            raise JetError("Weierstrass division did not terminate")
        low, high = _split(r, k)
        remainder = remainder + low
        if high.is_zero():
            break
        t = high * e
        quotient = quotient + t
        r = -(t * p_g)
        passes += 1
    return quotient, remainder


def _to_jetpoly(r: Jet, degree_bound: int, leading_one: bool) -> JetPoly:
    """Coefficients of ``r`` in ``x_n`` (degree < degree_bound), highest first."""
    m = r.nvars - 1
    parts = [dict() for _ in range(degree_bound)]
    for e, c in r.coeffs.items():
        parts[e[-1]][e[:-1]] = c
    coeffs = [Jet(m, r.order, parts[k], r.prec, r.zero_tol) for k in range(degree_bound - 1, -1, -1)]
    if leading_one:
        coeffs.insert(0, Jet.const(1, m, r.order, r.prec, r.zero_tol))
    elif not coeffs:
        coeffs = [Jet.zero(m, r.order, r.prec, r.zero_tol)]
    return JetPoly(r.nvars - 1, coeffs)


@dataclass
class Preparation:
    """``u = unit * W`` with ``W`` a Weierstrass polynomial of degree ``d``."""

    unit: Jet
    W: JetPoly
    d: int
    valid_order: int

    def __iter__(self):
        return iter((self.unit, self.W))


@dataclass
class Division:
    """``f = H * W^power + r`` with ``deg_{x_n} r < power * d``."""

    H: Jet
    r: JetPoly
    valid_order: int

    def __iter__(self):
        return iter((self.H, self.r))


def weierstrass_prepare(u: Jet) -> Preparation:
    d = xn_regular_order(u)
    if d > u.order:
        raise JetError("regular order exceeds the jet order")
    n = u.nvars
    if d == 0:
        one = Jet.const(1, n - 1, u.order, u.prec, u.zero_tol)
        return Preparation(u, JetPoly(n - 1, [one]), 0, u.order)
    xnd = Jet(n, u.order, {(0,) * (n - 1) + (d,): 1}, u.prec, u.zero_tol)
    q, r = _divide_regular(xnd, u, d)
    # x_n^d - r = q * u, so W = x_n^d - r and unit = 1/q
    W = _to_jetpoly(-r, d, leading_one=True)
    unit = invert_unit(q.with_order(u.order - d)).with_order(u.order)
    return Preparation(unit, W, d, u.order - d)


def weierstrass_divide(f: Jet, W: JetPoly, power: int = 1) -> Division:
    d = W.degree
    k = power * d
    if power < 0:
        raise JetError("power must be non-negative")
    if f.nvars != W.nvars:
        raise JetError("dividend and divisor live in different rings")
    if k > f.order:
        raise JetError("power * deg(W) exceeds the jet order")
    if not W.is_weierstrass():
        raise JetError("divisor is not a Weierstrass polynomial")
    if k == 0:
        zero = Jet.zero(f.nvars - 1, f.order, f.prec, f.zero_tol)
        return Division(f, JetPoly(f.nvars - 1, [zero]), f.order)
    g = W.to_jet(f.order) ** power
    q, r = _divide_regular(f, g, k)
    return Division(q, _to_jetpoly(r, k, leading_one=False), f.order - k)
