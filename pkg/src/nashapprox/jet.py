"""Truncated multivariate power series ("jets") with multiprecision complex coefficients.

A :class:`Jet` keeps every coefficient of total degree ``<= order``.
Coefficients are :mod:`mpmath` complex numbers at a per-value precision;
moduli below ``zero_tol`` are dropped on construction.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Mapping, Sequence

from mpmath.ctx_mp import MPContext

from .gaussrat import GaussRat
from .poly import MultiPoly

__all__ = [
    "Jet",
    "JetPoly",
    "JetError",
    "context",
    "eval_poly",
    "invert_unit",
    "rationalize",
    "DEFAULT_PREC",
    "DEFAULT_ZERO_TOL",
]

DEFAULT_PREC = 128
DEFAULT_ZERO_TOL = 1e-30


class JetError(ValueError):
    """Shape mismatches and violated preconditions on jets."""


@lru_cache(maxsize=None)
def context(prec: int) -> MPContext:
    """A private mpmath context at ``prec`` bits (never the global ``mp``)."""
    ctx = MPContext()
    ctx.prec = prec
    return ctx


def _exps_upto(nvars: int, order: int):
    """All exponent tuples of total degree <= order, graded then lex."""
    exps = [e for e in product(range(order + 1), repeat=nvars) if sum(e) <= order]
    return sorted(exps, key=lambda e: (sum(e), tuple(-k for k in e)))


class Jet:
    """Immutable truncated power series in ``nvars`` variables to total degree ``order``."""

    __slots__ = ("nvars", "order", "coeffs", "prec", "zero_tol")

    def __init__(
        self,
        nvars: int,
        order: int,
        coeffs: Mapping[tuple, object] | None = None,
        prec: int = DEFAULT_PREC,
        zero_tol: float = DEFAULT_ZERO_TOL,
    ):
        if order < 0:
            raise JetError("order must be non-negative")
        self.nvars = nvars
        self.order = order
        self.prec = prec
        self.zero_tol = zero_tol
        ctx = context(prec)
        clean = {}
        for e, c in (coeffs or {}).items():
            e = tuple(e)
            if len(e) != nvars or any(k < 0 for k in e):
                raise JetError(f"bad exponent {e}")
            if sum(e) > order:
                continue
            c = _to_mpc(ctx, c)
            if abs(c) >= zero_tol:
                clean[e] = c
        self.coeffs = clean

    @classmethod
    def _raw(cls, nvars, order, coeffs, prec, zero_tol):
        obj = object.__new__(cls)
        obj.nvars, obj.order, obj.coeffs = nvars, order, coeffs
        obj.prec, obj.zero_tol = prec, zero_tol
        return obj

    def _like(self, coeffs, order=None):
        return Jet._raw(self.nvars, self.order if order is None else order, coeffs, self.prec, self.zero_tol)

    @property
    def ctx(self) -> MPContext:
        return context(self.prec)

    # -- constructors -------------------------------------------------------
    @classmethod
    def zero(cls, nvars, order, prec=DEFAULT_PREC, zero_tol=DEFAULT_ZERO_TOL):
        return cls._raw(nvars, order, {}, prec, zero_tol)

    @classmethod
    def const(cls, c, nvars, order, prec=DEFAULT_PREC, zero_tol=DEFAULT_ZERO_TOL):
        return cls(nvars, order, {(0,) * nvars: c}, prec, zero_tol)

    @classmethod
    def var(cls, i, nvars, order, prec=DEFAULT_PREC, zero_tol=DEFAULT_ZERO_TOL):
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, order, {tuple(e): 1}, prec, zero_tol)

    @classmethod
    def from_poly(cls, p: MultiPoly, order, prec=DEFAULT_PREC, zero_tol=DEFAULT_ZERO_TOL):
        return cls(p.nvars, order, dict(p.terms), prec, zero_tol)

    @classmethod
    def from_function(cls, fn, nvars, order, prec=DEFAULT_PREC, zero_tol=DEFAULT_ZERO_TOL):
        """Build from ``fn(exponent_tuple, ctx) -> coefficient``."""
        ctx = context(prec)
        return cls(nvars, order, {e: fn(e, ctx) for e in _exps_upto(nvars, order)}, prec, zero_tol)

    # -- queries ------------------------------------------------------------
    def __getitem__(self, e) -> object:
        return self.coeffs.get(tuple(e), self.ctx.mpc(0))

    def constant(self):
        return self[(0,) * self.nvars]

    def is_zero(self) -> bool:
        return not self.coeffs

    def max_abs(self):
        """Largest coefficient modulus (the max-coefficient norm)."""
        return max((abs(c) for c in self.coeffs.values()), default=self.ctx.mpf(0))

    def valuation(self) -> int:
        """Lowest total degree with a nonzero coefficient (``order + 1`` if zero)."""
        return min((sum(e) for e in self.coeffs), default=self.order + 1)

    def weighted_norm(self, radius: float):
        """``sum |a_e| r^|e|``: an upper bound for the sup norm on the polydisc of radius ``r``."""
        r = self.ctx.mpf(radius)
        return sum((abs(c) * r ** sum(e) for e, c in self.coeffs.items()), self.ctx.mpf(0))

    def __call__(self, point: Sequence):
        """Evaluate the jet, as a polynomial, at a numeric point."""
        ctx = self.ctx
        pt = [ctx.mpc(p) for p in point]
        acc = ctx.mpc(0)
        for e, c in self.coeffs.items():
            t = c
            for p, k in zip(pt, e):
                if k:
                    t *= p**k
            acc += t
        return acc

    # -- shape management ---------------------------------------------------
    def _check(self, other: "Jet"):
        if self.nvars != other.nvars or self.order != other.order:
            raise JetError(
                f"jet shape mismatch: ({self.nvars}, {self.order}) vs ({other.nvars}, {other.order})"
            )

    def _coerce(self, other):
        if isinstance(other, Jet):
            self._check(other)
            return other
        try:
            return Jet.const(other, self.nvars, self.order, self.prec, self.zero_tol)
        except TypeError:
            return NotImplemented

    def truncate(self, degree: int) -> "Jet":
        """Drop all terms of total degree above ``degree`` (keeps ``order``)."""
        return self._like({e: c for e, c in self.coeffs.items() if sum(e) <= degree})

    def with_order(self, order: int) -> "Jet":
        """Same series viewed at a different truncation order (lowering discards terms)."""
        return self._like({e: c for e, c in self.coeffs.items() if sum(e) <= order}, order)

    def embed(self, index_map: Sequence[int], nvars: int) -> "Jet":
        out = {}
        for e, c in self.coeffs.items():
            e2 = [0] * nvars
            for i, k in enumerate(e):
                e2[index_map[i]] += k
            out[tuple(e2)] = c
        return Jet._raw(nvars, self.order, out, self.prec, self.zero_tol)

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.coeffs)
        tol = self.zero_tol
        for e, c in other.coeffs.items():
            s = out.get(e)
            s = c if s is None else s + c
            if abs(s) >= tol:
                out[e] = s
            else:
                out.pop(e, None)
        return self._like(out)

    __radd__ = __add__

    def __neg__(self):
        return self._like({e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if not isinstance(other, Jet):
            try:
                c = _to_mpc(self.ctx, other)
            except TypeError:
                return NotImplemented
            tol = self.zero_tol
            return self._like({e: v * c for e, v in self.coeffs.items() if abs(v * c) >= tol})
        self._check(other)
        order = self.order
        out: dict = {}
        items2 = [(e, sum(e), c) for e, c in other.coeffs.items()]
        for e1, c1 in self.coeffs.items():
            d1 = sum(e1)
            for e2, d2, c2 in items2:
                if d1 + d2 > order:
                    continue
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e)
                out[e] = c1 * c2 if s is None else s + c1 * c2
        tol = self.zero_tol
        return self._like({e: c for e, c in out.items() if abs(c) >= tol})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise JetError("only non-negative integer powers")
        result = Jet.const(1, self.nvars, self.order, self.prec, self.zero_tol)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __truediv__(self, other):
        if isinstance(other, Jet):
            return self * invert_unit(other)
        return self * (1 / _to_mpc(self.ctx, other))

    def diff(self, var: int) -> "Jet":
        """Formal partial derivative; the result is valid to ``order - 1``."""
        out = {}
        for e, c in self.coeffs.items():
            k = e[var]
            if k:
                e2 = list(e)
                e2[var] = k - 1
                out[tuple(e2)] = c * k
        return self._like(out, max(self.order - 1, 0))

    def linear_change(self, M) -> "Jet":
        """``u(M x)``: variable i becomes ``sum_j M[i][j] x_j`` (a linear map keeps the order)."""
        n = self.nvars
        if len(M) != n or any(len(row) != n for row in M):
            raise JetError("change matrix must be nvars x nvars")
        lin = []
        for row in M:
            lin.append(Jet(n, self.order, {tuple(int(i == j) for i in range(n)): c for j, c in enumerate(row) if c}, self.prec, self.zero_tol))
        cache: dict = {}

        def power(i, k):
            if (i, k) not in cache:
                cache[(i, k)] = lin[i] if k == 1 else power(i, k - 1) * lin[i]
            return cache[(i, k)]

        acc = self._like({})
        for e, c in self.coeffs.items():
            t = None
            for i, k in enumerate(e):
                if k:
                    t = power(i, k) if t is None else t * power(i, k)
            acc = acc + (self._like({(0,) * n: c}) if t is None else t * c)
        return acc

    def max_diff(self, other: "Jet"):
        """Max coefficient modulus of ``self - other``."""
        return (self - other).max_abs()

    # -- conversions --------------------------------------------------------
    def to_poly(self) -> MultiPoly:
        """Exact rational polynomial reproducing the coefficients to working precision."""
        return MultiPoly(
            self.nvars,
            {e: GaussRat(rationalize(c.real, self.prec), rationalize(c.imag, self.prec)) for e, c in self.coeffs.items()},
        )

    def to_json(self) -> dict:
        digits = int(self.prec * math.log10(2)) + 3
        ctx = self.ctx
        terms = []
        for e in sorted(self.coeffs, key=lambda e: (sum(e), tuple(-k for k in e))):
            c = self.coeffs[e]
            terms.append(
                {
                    "exp": list(e),
                    "re": ctx.nstr(c.real, digits, min_fixed=-1, max_fixed=-1),
                    "im": ctx.nstr(c.imag, digits, min_fixed=-1, max_fixed=-1),
                }
            )
        return {"nvars": self.nvars, "order": self.order, "terms": terms}

    @classmethod
    def from_json(cls, data: dict, prec=DEFAULT_PREC, zero_tol=DEFAULT_ZERO_TOL) -> "Jet":
        ctx = context(prec)
        try:
            nvars, order = int(data["nvars"]), int(data["order"])
            coeffs = {}
            for t in data.get("terms", []):
                e = tuple(int(k) for k in t["exp"])
                c = ctx.mpc(ctx.mpf(str(t.get("re", "0"))), ctx.mpf(str(t.get("im", "0"))))
                coeffs[e] = coeffs.get(e, 0) + c
        except (KeyError, TypeError, ValueError) as exc:
            raise JetError(f"malformed jet JSON: {exc}") from exc
        return cls(nvars, order, coeffs, prec, zero_tol)

    def __eq__(self, other):
        if not isinstance(other, Jet):
            return NotImplemented
        return self.nvars == other.nvars and self.order == other.order and self.coeffs == other.coeffs

    __hash__ = None

    def __repr__(self):
        shown = ", ".join(
            f"{list(e)}: {self.ctx.nstr(c, 8)}"
            for e, c in sorted(self.coeffs.items(), key=lambda t: (sum(t[0]), t[0]))[:12]
        )
        more = " ..." if len(self.coeffs) > 12 else ""
        return f"Jet(nvars={self.nvars}, order={self.order}, {{{shown}{more}}})"


def _to_mpc(ctx, c):
    if isinstance(c, GaussRat):
        return ctx.mpc(_frac_mpf(ctx, c.re), _frac_mpf(ctx, c.im))
    if isinstance(c, Fraction):
        return ctx.mpc(_frac_mpf(ctx, c))
    if isinstance(c, (int, float, complex)):
        return ctx.mpc(c)
    if hasattr(c, "_mpc_") or hasattr(c, "_mpf_"):
        return ctx.mpc(c)
    if isinstance(c, str):
        return ctx.mpc(ctx.mpf(c))
    raise TypeError(f"cannot use {c!r} as a jet coefficient")


def _frac_mpf(ctx, q: Fraction):
    if q.denominator == 1:
        return ctx.mpf(q.numerator)
    return ctx.mpf(q.numerator) / q.denominator


def rationalize(x, prec: int) -> Fraction:
    """Exact rational for an mpf, preferring a short fraction when one agrees to ``prec - 8`` bits."""
    if not x:
        return Fraction(0)
    sign, man, exp, _ = x._mpf_
    if not man:
        raise JetError("cannot rationalize a non-finite value")
    exact = Fraction(-int(man) if sign else int(man)) * (Fraction(2) ** exp)
    if not exact:
        return exact
    short = exact.limit_denominator(10**12)
    if abs(short - exact) <= abs(exact) * Fraction(1, 2 ** (prec - 8)):
        return short
    return exact


def invert_unit(u: Jet, tol: float = 1e-12) -> Jet:
    """Multiplicative inverse of a unit jet via the geometric series of ``1 - u/u(0)``."""
    c0 = u.constant()
    if abs(c0) <= tol:
        raise JetError("jet is not a unit: constant term below tolerance")
    inv0 = 1 / c0
    w = u * inv0 - 1
    # w has no constant term, so (-w)^k vanishes for k > order
    acc = Jet.const(1, u.nvars, u.order, u.prec, u.zero_tol)
    term = acc
    for _ in range(u.order):
        term = term * (-w)
        if term.is_zero():
            break
        acc = acc + term
    return acc * inv0


def eval_poly(p: MultiPoly, args: Sequence[Jet]) -> Jet:
    """Substitute jets for the variables of an exact polynomial."""
    if len(args) != p.nvars:
        raise JetError(f"polynomial has {p.nvars} variables but {len(args)} jets were given")
    if not args:
        raise JetError("need at least one jet to fix the shape")
    ref = args[0]
    for a in args[1:]:
        ref._check(a)
    cache: dict = {}

    def power(i, k):
        key = (i, k)
        if key not in cache:
            cache[key] = args[i] if k == 1 else power(i, k - 1) * args[i]
        return cache[key]

    acc = Jet.zero(ref.nvars, ref.order, ref.prec, ref.zero_tol)
    for e, c in p.terms.items():
        t = None
        for i, k in enumerate(e):
            if k:
                t = power(i, k) if t is None else t * power(i, k)
        if t is None:
            acc = acc + Jet.const(c, ref.nvars, ref.order, ref.prec, ref.zero_tol)
        else:
            acc = acc + t * c
    return acc


class JetPoly:
    """Polynomial in the distinguished variable ``x_n`` with jet coefficients in ``x'``.

    ``coeffs`` is highest degree first; all coefficient jets share
    ``nvars - 1`` variables and one order.  ``var_index`` is the position of
    ``x_n`` in the full variable list (by convention the last one).
    """

    __slots__ = ("var_index", "coeffs")

    def __init__(self, var_index: int, coeffs: Sequence[Jet]):
        coeffs = list(coeffs)
        if not coeffs:
            raise JetError("JetPoly needs at least one coefficient")
        for c in coeffs[1:]:
            coeffs[0]._check(c)
        self.var_index = var_index
        self.coeffs = coeffs

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def nvars(self) -> int:
        return self.coeffs[0].nvars + 1

    def is_weierstrass(self, tol: float = 1e-12) -> bool:
        lead = self.coeffs[0]
        if lead.max_diff(Jet.const(1, lead.nvars, lead.order, lead.prec, lead.zero_tol)) > tol:
            return False
        return all(abs(c.constant()) <= tol for c in self.coeffs[1:])

    def to_jet(self, order: int | None = None) -> Jet:
        """Embed as a jet in all ``nvars`` variables (x_n inserted at ``var_index``)."""
        ref = self.coeffs[0]
        n = ref.nvars + 1
        order = ref.order if order is None else order
        idx = [k if k < self.var_index else k + 1 for k in range(ref.nvars)]
        out: dict = {}
        d = self.degree
        for pos, c in enumerate(self.coeffs):
            k = d - pos
            for e, v in c.coeffs.items():
                e2 = [0] * n
                for i, a in enumerate(e):
                    e2[idx[i]] = a
                e2[self.var_index] = k
                e2 = tuple(e2)
                if sum(e2) <= order:
                    out[e2] = out.get(e2, 0) + v
        return Jet(n, order, out, ref.prec, ref.zero_tol)

    def __repr__(self):
        return f"JetPoly(var={self.var_index}, degree={self.degree})"
