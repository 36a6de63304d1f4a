"""Buchberger's algorithm over Q(i) with sugar selection and the Gebauer-Moeller criteria."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .gaussrat import GaussRat
from .poly import MultiPoly, PolyError

__all__ = [
    "MonomialOrder",
    "IdealBasis",
    "groebner_basis",
    "reduce_mod",
    "eliminate",
    "ideal_dimension",
    "standard_monomials",
]


def _grevlex(e):
    return (sum(e), tuple(-k for k in reversed(e)))


@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order tag.

    ``kind`` is ``"lex"``, ``"grlex"``, ``"grevlex"`` or ``"block"``.  For
    ``lex`` the variables are compared in ``priority`` order (default: index
    order).  A block order compares the listed variable blocks one after
    another with grevlex inside each block; the first block is the one
    eliminated.
    """

    kind: str = "grevlex"
    blocks: tuple[tuple[int, ...], ...] = ()
    priority: tuple[int, ...] = ()

    @classmethod
    def lex(cls, priority: Sequence[int] = ()):
        return cls("lex", (), tuple(priority))

    @classmethod
    def grlex(cls):
        return cls("grlex")

    @classmethod
    def grevlex(cls):
        return cls("grevlex")

    @classmethod
    def block(cls, *blocks: Sequence[int]):
        return cls("block", tuple(tuple(b) for b in blocks))

    def key(self, e):
        if self.kind == "lex":
            return tuple(e[i] for i in self.priority) if self.priority else e
        if self.kind == "grlex":
            return (sum(e), e)
        if self.kind == "grevlex":
            return _grevlex(e)
        if self.kind == "block":
            return tuple(_grevlex(tuple(e[i] for i in b)) for b in self.blocks)
        raise ValueError(f"unknown monomial order {self.kind!r}")

    def to_json(self) -> dict:
        return {"kind": self.kind, "blocks": [list(b) for b in self.blocks], "priority": list(self.priority)}


@dataclass(frozen=True)
class IdealBasis:
    generators: tuple[MultiPoly, ...]
    order: MonomialOrder
    reduced: bool = False
    nvars: int = 0

    def leading_monomials(self) -> list[tuple]:
        return [max(g.terms, key=self.order.key) for g in self.generators]

    def is_unit(self) -> bool:
        return any(g.is_constant() and g for g in self.generators)


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _disjoint(a, b):
    return all(not (x and y) for x, y in zip(a, b))


class _Poly:
    """Working polynomial with cached leading data."""

    __slots__ = ("terms", "lm", "lc", "sugar")

    def __init__(self, terms: dict, key, sugar: int):
        self.terms = terms
        self.lm = max(terms, key=key)
        self.lc = terms[self.lm]
        self.sugar = sugar


def _sub_mul(p: dict, c: GaussRat, shift, g: dict):
    """In place ``p -= c * x^shift * g``."""
    for e, v in g.items():
        e2 = tuple(a + b for a, b in zip(e, shift))
        s = p.get(e2)
        t = c * v
        if s is None:
            p[e2] = -t
        else:
            s = s - t
            if s:
                p[e2] = s
            else:
                del p[e2]


def _normal_form(terms: dict, basis: Sequence[_Poly], key) -> dict:
    p = dict(terms)
    rem = {}
    while p:
        lt = max(p, key=key)
        c = p[lt]
        for g in basis:
            if _divides(g.lm, lt):
                shift = tuple(a - b for a, b in zip(lt, g.lm))
                _sub_mul(p, c / g.lc, shift, g.terms)
                break
        else:
            rem[lt] = c
            del p[lt]
    return rem


def _spoly(f: _Poly, g: _Poly) -> tuple[dict, int]:
    l = _lcm(f.lm, g.lm)
    sf = tuple(a - b for a, b in zip(l, f.lm))
    sg = tuple(a - b for a, b in zip(l, g.lm))
    p = {}
    finv, ginv = f.lc.inverse(), g.lc.inverse()
    for e, v in f.terms.items():
        p[tuple(a + b for a, b in zip(e, sf))] = v * finv
    _sub_mul(p, ginv, sg, g.terms)
    deg = sum(l)
    sugar = max(f.sugar + deg - sum(f.lm), g.sugar + deg - sum(g.lm))
    return p, sugar


def groebner_basis(gens: Sequence[MultiPoly], order: MonomialOrder = MonomialOrder()) -> IdealBasis:
    """Reduced Groebner basis (leading coefficients 1, sorted by leading monomial, descending)."""
    gens = list(gens)
    if not gens:
        raise PolyError("empty generator list")
    nvars = gens[0].nvars
    key = order.key
    polys: list[_Poly] = []
    for g in gens:
        if g.nvars != nvars:
            raise PolyError("generators live in different rings")
        if g:
            polys.append(_Poly(dict(g.terms), key, g.total_degree()))
    if not polys:
        return IdealBasis((), order, True, nvars)

    f: list[_Poly] = []
    G: list[int] = []
    B: list[tuple[int, int]] = []

    def update(G, B, ih):
        h = f[ih]
        C = [(ih, ig) for ig in G]
        D = []
        while C:
            ih_, ig1 = C.pop()
            g1 = f[ig1]
            lcm1 = _lcm(h.lm, g1.lm)
            keep = _disjoint(h.lm, g1.lm)
            if not keep:
                keep = not any(_divides(_lcm(h.lm, f[ig2].lm), lcm1) for _, ig2 in C) and not any(
                    _divides(_lcm(h.lm, f[ig2].lm), lcm1) for _, ig2 in D
                )
            if keep:
                D.append((ih_, ig1))
        E = [(a, b) for a, b in D if not _disjoint(f[a].lm, f[b].lm)]
        B_new = []
        for ig1, ig2 in B:
            l12 = _lcm(f[ig1].lm, f[ig2].lm)
            if (
                not _divides(h.lm, l12)
                or _lcm(f[ig1].lm, h.lm) == l12
                or _lcm(h.lm, f[ig2].lm) == l12
            ):
                B_new.append((ig1, ig2))
        B_new.extend(E)
        G_new = [ig for ig in G if not _divides(h.lm, f[ig].lm)]
        G_new.append(ih)
        return G_new, B_new

    # inter-reduce the input first; keeps the run deterministic and small
    polys.sort(key=lambda p: key(p.lm))
    for p in polys:
        terms = _normal_form(p.terms, [f[i] for i in G], key)
        if not terms:
            continue
        f.append(_Poly(terms, key, p.sugar))
        G, B = update(G, B, len(f) - 1)

    while B:
        def pair_key(pair):
            a, b = pair
            l = _lcm(f[a].lm, f[b].lm)
            sug = max(f[a].sugar + sum(l) - sum(f[a].lm), f[b].sugar + sum(l) - sum(f[b].lm))
            return (sug, key(l), a, b)

        B.sort(key=pair_key)
        a, b = B.pop(0)
        s, sugar = _spoly(f[a], f[b])
        h = _normal_form(s, [f[i] for i in G], key)
        if h:
            f.append(_Poly(h, key, sugar))
            G, B = update(G, B, len(f) - 1)

    # reduced basis
    basis = [f[i] for i in G]
    basis = [g for g in basis if not any(o is not g and _divides(o.lm, g.lm) for o in basis)]
    out = []
    for g in basis:
        others = [o for o in basis if o is not g]
        tail = {e: c for e, c in g.terms.items() if e != g.lm}
        red = _normal_form(tail, others, key)
        red[g.lm] = g.lc
        inv = g.lc.inverse()
        out.append(MultiPoly(nvars, {e: c * inv for e, c in red.items()}))
    out.sort(key=lambda p: key(max(p.terms, key=key)), reverse=True)
    return IdealBasis(tuple(out), order, True, nvars)


def reduce_mod(basis: IdealBasis, f: MultiPoly) -> MultiPoly:
    """Normal form of ``f``; zero exactly when ``f`` lies in the ideal."""
    key = basis.order.key
    polys = [_Poly(dict(g.terms), key, 0) for g in basis.generators]
    return MultiPoly(f.nvars, _normal_form(f.terms, polys, key))


def eliminate(basis: IdealBasis, drop: Sequence[int]) -> IdealBasis:
    """Generators of the elimination ideal (those free of the ``drop`` variables)."""
    drop = set(drop)
    if not drop:
        return basis
    order = basis.order
    ok = False
    if order.kind == "block":
        acc: set[int] = set()
        for b in order.blocks:
            acc |= set(b)
            if acc == drop:
                ok = True
                break
            if not acc <= drop:
                break
    elif order.kind == "lex":
        prio = list(order.priority) if order.priority else list(range(basis.nvars))
        ok = set(prio[: len(drop)]) == drop
    if not ok:
        raise PolyError("monomial order does not eliminate exactly the dropped variables")
    kept = tuple(g for g in basis.generators if not (g.variables() & drop))
    return IdealBasis(kept, order, basis.reduced, basis.nvars)


def ideal_dimension(basis: IdealBasis) -> int:
    """Krull dimension from the leading monomials (largest independent variable set)."""
    if basis.is_unit():
        return -1
    n = basis.nvars
    supports = [frozenset(i for i, k in enumerate(m) if k) for m in basis.leading_monomials()]
    for size in range(n, -1, -1):
        for S in combinations(range(n), size):
            s = set(S)
            if not any(sup <= s for sup in supports):
                return size
    return 0


def standard_monomials(basis: IdealBasis, limit: int = 100000) -> list[tuple]:
    """Monomials outside the leading ideal of a zero-dimensional ideal."""
    n = basis.nvars
    lms = basis.leading_monomials()
    if basis.is_unit():
        return []
    bounds = []
    for i in range(n):
        pure = [m[i] for m in lms if m[i] and all(k == 0 for j, k in enumerate(m) if j != i)]
        if not pure:
            raise PolyError("ideal is not zero-dimensional")
        bounds.append(min(pure))
    out = []

    def rec(prefix):
        if len(out) > limit:
            raise PolyError("too many standard monomials")
        if len(prefix) == n:
            out.append(tuple(prefix))
            return
        for k in range(bounds[len(prefix)]):
            cand = prefix + [k]
            partial = tuple(cand) + (0,) * (n - len(cand))
            if any(_divides(m, partial) for m in lms):
                break
            rec(cand)

    rec([])
    return [m for m in out if not any(_divides(l, m) for l in lms)]
