"""Projections of varieties: properness certificates, optimal polynomials, fiber counts."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .gaussrat import GaussRat
from .groebner import IdealBasis, MonomialOrder, eliminate, groebner_basis, ideal_dimension, standard_monomials
from .poly import MultiPoly, PolyError, UniOverPoly, parse_poly, squarefree_part

__all__ = [
    "VarietySpec",
    "ElimError",
    "ProperCertificate",
    "properness_check",
    "optimal_polynomial",
    "generic_fiber_count",
    "linear_form_poly",
    "zero_dim_radical",
]


class ElimError(PolyError):
    """Failures of elimination-based constructions."""


@dataclass(frozen=True)
class VarietySpec:
    """Ideal generators over ambient variables ``names`` split as base (first ``declared_dim``) and fiber."""

    names: tuple[str, ...]
    generators: tuple[MultiPoly, ...]
    declared_dim: int

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        object.__setattr__(self, "generators", tuple(g for g in self.generators if g))
        if not 0 <= self.declared_dim <= len(self.names):
            raise ElimError("declared_dim must lie between 0 and the number of variables")
        for g in self.generators:
            if g.nvars != len(self.names):
                raise ElimError("generator ring does not match the ambient variables")

    @property
    def m(self) -> int:
        return self.declared_dim

    @property
    def s(self) -> int:
        return len(self.names) - self.declared_dim

    @property
    def nvars(self) -> int:
        return len(self.names)

    @property
    def base_vars(self) -> tuple[str, ...]:
        return self.names[: self.m]

    @property
    def fiber_vars(self) -> tuple[str, ...]:
        return self.names[self.m :]

    def with_dim(self, m: int) -> "VarietySpec":
        return VarietySpec(self.names, self.generators, m)

    def with_generators(self, gens: Sequence[MultiPoly]) -> "VarietySpec":
        return VarietySpec(self.names, tuple(gens), self.m)

    def to_json(self) -> dict:
        return {
            "base_vars": list(self.base_vars),
            "fiber_vars": list(self.fiber_vars),
            "declared_dim": self.m,
            "generators": [g.to_text(self.names) for g in self.generators],
        }

    @classmethod
    def from_json(cls, data: dict) -> "VarietySpec":
        try:
            base = list(data["base_vars"])
            fiber = list(data.get("fiber_vars", []))
            m = int(data.get("declared_dim", len(base)))
            gens_text = list(data.get("generators", []))
        except (KeyError, TypeError, ValueError) as exc:
            raise ElimError(f"malformed VarietySpec JSON: {exc}") from exc
        if m != len(base):
            raise ElimError("declared_dim must equal the number of base variables")
        names = base + fiber
        return cls(tuple(names), tuple(parse_poly(t, names) for t in gens_text), m)


@dataclass
class ProperCertificate:
    certified: bool
    witnesses: list[MultiPoly] = field(default_factory=list)
    failing_var: int | None = None
    basis: IdealBasis | None = None

    def __bool__(self):
        return self.certified


def _noether_order(V: VarietySpec) -> MonomialOrder:
    """Lex on the fiber variables (last one highest), then grevlex on the base."""
    fibers = [(i,) for i in range(V.nvars - 1, V.m - 1, -1)]
    return MonomialOrder.block(*fibers, tuple(range(V.m)))


def properness_check(V: VarietySpec) -> ProperCertificate:
    """Certify that projection onto the base variables is proper (finite).

    For each fiber variable ``v_j`` the Groebner basis must hold an element
    monic in ``v_j`` whose coefficients involve only base variables and
    ``v_1..v_{j-1}``.
    """
    if V.s == 0:
        return ProperCertificate(True)
    if not V.generators:
        return ProperCertificate(False, failing_var=V.m)
    G = groebner_basis(V.generators, _noether_order(V))
    if G.is_unit():
        return ProperCertificate(True, [MultiPoly.const(1, V.nvars)], basis=G)
    witnesses = []
    for j in range(V.m, V.nvars):
        allowed = set(range(j + 1))
        found = None
        for g in G.generators:
            if g.variables() <= allowed and g.degree(j) > 0 and g.leading_coeff_in(j).is_constant():
                found = g
                break
        if found is None:
            return ProperCertificate(False, witnesses, failing_var=j, basis=G)
        witnesses.append(found)
    return ProperCertificate(True, witnesses, basis=G)


def linear_form_poly(L: Sequence, V: VarietySpec, nvars: int | None = None) -> MultiPoly:
    """``sum L_k v_k`` over the fiber variables, in a ring of ``nvars`` (default ambient) variables."""
    n = V.nvars if nvars is None else nvars
    if len(L) != V.s:
        raise ElimError("linear form length must equal the number of fiber variables")
    terms = {}
    for k, c in enumerate(L):
        e = [0] * n
        e[V.m + k] = 1
        terms[tuple(e)] = Fraction(c) if not isinstance(c, GaussRat) else c
    return MultiPoly(n, terms)


def optimal_polynomial(V: VarietySpec, L: Sequence, check_proper: bool = True) -> UniOverPoly:
    """Unitary squarefree ``P_L(y, z)`` describing the image of ``(y, v) -> (y, L(v))``.

    The result lives in variables ``(y_1..y_m, z)`` with ``z`` last.
    """
    if check_proper and not properness_check(V):
        raise ElimError("projection is not certified proper")
    n = V.nvars
    # ring: base (0..m-1), fiber (m..n-1), z (n)
    N = n + 1
    emb = list(range(n))
    gens = [g.remap(emb, N) for g in V.generators]
    gens.append(MultiPoly.var(n, N) - linear_form_poly(L, V, N))
    order = MonomialOrder.block(tuple(range(V.m, n)), (n,), tuple(range(V.m)))
    G = groebner_basis(gens, order)
    E = eliminate(G, range(V.m, n))
    best = None
    for g in E.generators:
        lm = max(g.terms, key=order.key)
        if lm[n] and not any(lm[:n]):
            if best is None or lm[n] < best.degree(n):
                best = g
    if best is None:
        raise ElimError("no monic eliminant in z found")
    keep = list(range(V.m)) + [n]
    p = best.drop_vars(keep)
    return squarefree_part(UniOverPoly.from_multi(p, V.m))


def _specialize(V: VarietySpec, point: Sequence[int]) -> list[MultiPoly]:
    s, m = V.s, V.m
    subs = [MultiPoly.const(p, s) for p in point] + [MultiPoly.var(k, s) for k in range(s)]
    return [g.compose(subs) for g in V.generators]


def zero_dim_radical(gens: Sequence[MultiPoly]) -> IdealBasis | None:
    """Reduced basis of the radical of a zero-dimensional ideal, or None if not zero-dimensional.

    Adds the squarefree part of each univariate eliminant (valid in characteristic 0).
    """
    gens = [g for g in gens if g]
    if not gens:
        return None
    s = gens[0].nvars
    G = groebner_basis(gens, MonomialOrder.grevlex())
    if G.is_unit() or ideal_dimension(G) != 0:
        return None
    extra = []
    for j in range(s):
        prio = [k for k in range(s) if k != j] + [j]
        Gj = groebner_basis(list(G.generators), MonomialOrder.lex(prio))
        uni = [g for g in Gj.generators if g.variables() <= {j}]
        if not uni:
            return None
        p = min(uni, key=lambda g: g.degree(j))
        extra.append(squarefree_part(UniOverPoly.from_multi(p, j)).to_multi())
    return groebner_basis(list(G.generators) + extra, MonomialOrder.grevlex())


def _distinct_points(gens: list[MultiPoly], s: int) -> int | None:
    """Number of distinct solutions of a zero-dimensional system, or None if degenerate."""
    R = zero_dim_radical(gens)
    if R is None:
        return None
    return len(standard_monomials(R))


def generic_fiber_count(V: VarietySpec, seed: int = 0, bound: int = 997, max_tries: int = 32, samples: int = 3) -> int:
    """Cardinality of the fiber over a generic base point, counted exactly.

    The base variables are specialized to random integers in ``[-bound, bound]``;
    degenerate specializations are skipped.  The fiber count drops only on a
    proper algebraic subset, so the maximum over ``samples`` valid points is
    returned.
    """
    if V.s == 0:
        return 1
    rng = random.Random(seed)
    counts = []
    for _ in range(max_tries):
        point = [rng.randint(-bound, bound) for _ in range(V.m)]
        c = _distinct_points(_specialize(V, point), V.s)
        if c is not None:
            counts.append(c)
            if len(counts) >= samples:
                break
    if not counts:
        raise ElimError("fiber count: all specializations degenerate")
    return max(counts)


