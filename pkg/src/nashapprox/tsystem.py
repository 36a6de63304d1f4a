"""Coefficient equations forced on a Weierstrass division of a point of ``{P_L = 0}``.

Write ``C = x_n^d + a_1 x_n^(d-1) + ... + a_d`` and, for each base coordinate
and for the extra coordinate, remainders ``w_j = sum_k b_{j,k} x_n^(2d-1-k)``
and ``w~ = sum_k c_k x_n^(2d-1-k)``.  Then, in the ring with the auxiliary
quotient variables ``S_j`` and ``S~``::

    P_L(C^2 S + w, C^2 S~ + w~)  = Wt * C^2 + sum_{k=1}^{2d} x_n^(2d-k) T_k
    dP_L/dz(C^2 S + w, C^2 S~ + w~) = Wb * C + sum_{k=1}^{d}  x_n^(d-k) T_{2d+k}

where every ``T_k`` involves only the ``a, b, c`` variables.  If a holomorphic
point satisfies ``P_L = 0`` and ``dP_L/dz`` is ``W`` times a unit, its division
data solve ``T_1 = ... = T_{3d} = 0``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .jet import Jet, eval_poly
from .poly import MultiPoly, PolyError, UniOverPoly, divmod_in_var

__all__ = ["TSystem", "build_T_system"]


@dataclass(frozen=True)
class TSystem:
    d: int
    m: int
    symbols: tuple[str, ...]
    T: tuple[MultiPoly, ...]
    Wtilde: MultiPoly
    Wbar: MultiPoly
    lhs_value: MultiPoly
    lhs_derivative: MultiPoly

    # variable layout: x_n | a_1..a_d | b_{1,*} .. b_{m,*} | c_* | S_1..S_m | S~
    @property
    def nvars(self) -> int:
        return len(self.symbols)

    @property
    def a_index(self) -> list[int]:
        return list(range(1, 1 + self.d))

    def b_index(self, j: int) -> list[int]:
        start = 1 + self.d + 2 * self.d * j
        return list(range(start, start + 2 * self.d))

    @property
    def c_index(self) -> list[int]:
        start = 1 + self.d + 2 * self.d * self.m
        return list(range(start, start + 2 * self.d))

    @property
    def S_index(self) -> list[int]:
        start = 1 + 3 * self.d + 2 * self.d * self.m
        return list(range(start, start + self.m))

    @property
    def St_index(self) -> int:
        return self.nvars - 1

    @property
    def coefficient_index(self) -> list[int]:
        """Positions of the unknowns ``g = (a, b_1, .., b_m, c)`` of the system."""
        return list(range(1, 1 + 3 * self.d + 2 * self.d * self.m))

    @property
    def coefficient_names(self) -> list[str]:
        return [self.symbols[i] for i in self.coefficient_index]

    @cached_property
    def equations(self) -> tuple[MultiPoly, ...]:
        """``T_k`` as polynomials in the coefficient unknowns only."""
        return tuple(t.drop_vars(self.coefficient_index) for t in self.T)

    def C(self) -> MultiPoly:
        x = MultiPoly.var(0, self.nvars)
        acc = x ** self.d
        for k, i in enumerate(self.a_index, start=1):
            acc = acc + MultiPoly.var(i, self.nvars) * x ** (self.d - k)
        return acc

    def remainder_poly(self, idx: Sequence[int]) -> MultiPoly:
        x = MultiPoly.var(0, self.nvars)
        top = len(idx) - 1
        acc = MultiPoly.zero(self.nvars)
        for k, i in enumerate(idx):
            acc = acc + MultiPoly.var(i, self.nvars) * x ** (top - k)
        return acc

    def identity_defects(self) -> tuple[MultiPoly, MultiPoly]:
        """Exact differences of both sides of the two defining identities (both zero)."""
        x = MultiPoly.var(0, self.nvars)
        C = self.C()
        two_d = 2 * self.d
        rhs1 = self.Wtilde * C * C
        for k in range(1, two_d + 1):
            rhs1 = rhs1 + x ** (two_d - k) * self.T[k - 1]
        rhs2 = self.Wbar * C
        for k in range(1, self.d + 1):
            rhs2 = rhs2 + x ** (self.d - k) * self.T[two_d + k - 1]
        return self.lhs_value - rhs1, self.lhs_derivative - rhs2

    def residuals(self, g: Sequence[Jet]) -> list[float]:
        """Max coefficient of each ``T_k`` evaluated on coefficient jets ``g``."""
        return [float(eval_poly(t, list(g)).max_abs()) for t in self.equations]


def _names(d: int, m: int) -> tuple[str, ...]:
    names = ["xn"]
    names += [f"a{k}" for k in range(1, d + 1)]
    for j in range(1, m + 1):
        names += [f"b{j}_{k}" for k in range(2 * d)]
    names += [f"c{k}" for k in range(2 * d)]
    names += [f"S{j}" for j in range(1, m + 1)]
    names.append("St")
    return tuple(names)


def _coefficients_in_x(r: MultiPoly, top: int) -> list[MultiPoly]:
    """Coefficients of ``x_n^top, .., x_n^0`` (variable 0)."""
    parts = r.coeffs_in(0)
    return [parts.get(k, MultiPoly.zero(r.nvars)) for k in range(top, -1, -1)]


def build_T_system(P_L: UniOverPoly, m: int, d: int) -> TSystem:
    """Symbolic division data for ``P_L`` in variables ``(y_1..y_m, z)``."""
    if d < 1:
        raise PolyError("the coefficient system needs d >= 1")
    if P_L.nvars != m + 1 or P_L.var_index != m:
        raise PolyError("P_L must live in (y_1..y_m, z) with z last")
    if not P_L.is_unitary():
        raise PolyError("P_L must be unitary in z")
    names = _names(d, m)
    shell = TSystem(d, m, names, (), MultiPoly.zero(len(names)), MultiPoly.zero(len(names)),
                    MultiPoly.zero(len(names)), MultiPoly.zero(len(names)))
    N = shell.nvars
    C = shell.C()
    C2 = C * C
    subs = []
    for j in range(m):
        S = MultiPoly.var(shell.S_index[j], N)
        subs.append(C2 * S + shell.remainder_poly(shell.b_index(j)))
    subs.append(C2 * MultiPoly.var(shell.St_index, N) + shell.remainder_poly(shell.c_index))

    P = P_L.to_multi()
    value = P.compose(subs)
    deriv = P.diff(m).compose(subs)
    Wt, r1 = divmod_in_var(value, C2, 0)
    Wb, r2 = divmod_in_var(deriv, C, 0)
    T = _coefficients_in_x(r1, 2 * d - 1) + _coefficients_in_x(r2, d - 1)
    allowed = set(shell.coefficient_index)
    for t in T:
        if not t.variables() <= allowed:
            raise PolyError("coefficient equation involves a quotient variable")
    return TSystem(d, m, names, tuple(T), Wt, Wb, value, deriv)
