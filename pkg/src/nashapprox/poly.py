"""Sparse multivariate polynomials over the Gaussian rationals.

A :class:`MultiPoly` is a map from exponent tuples to nonzero
:class:`~nashapprox.gaussrat.GaussRat` coefficients.  Everything here is
exact; these routines double as oracles for the numerical layers.
"""

from __future__ import annotations

import ast
from fractions import Fraction
from typing import Mapping, Sequence

from .gaussrat import ONE, ZERO, GaussRat, as_gauss, format_gauss

__all__ = [
    "MultiPoly",
    "UniOverPoly",
    "PolyError",
    "divmod_in_var",
    "exact_div",
    "resultant",
    "discriminant",
    "poly_gcd",
    "squarefree_part",
    "substitute_linear",
    "parse_poly",
    "rational_inverse",
]


class PolyError(ValueError):
    """Raised on precondition violations in exact polynomial arithmetic."""


def _grlex_key(e):
    return (sum(e), e)


class MultiPoly:
    """Immutable sparse polynomial in ``nvars`` variables."""

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[tuple, object] | None = None):
        self.nvars = nvars
        clean = {}
        if terms:
            for e, c in terms.items():
                e = tuple(e)
                if len(e) != nvars or any(k < 0 for k in e):
                    raise PolyError(f"bad exponent {e} for {nvars} variables")
                c = as_gauss(c)
                if c is NotImplemented:
                    raise TypeError(f"unsupported coefficient {c!r}")
                if c:
                    clean[e] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, nvars, terms):
        obj = object.__new__(cls)
        obj.nvars = nvars
        obj.terms = terms
        obj._hash = None
        return obj

    # -- constructors -------------------------------------------------------
    @classmethod
    def zero(cls, nvars):
        return cls._raw(nvars, {})

    @classmethod
    def const(cls, c, nvars):
        c = as_gauss(c)
        return cls._raw(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def var(cls, i, nvars):
        if not 0 <= i < nvars:
            raise PolyError(f"variable index {i} out of range")
        e = [0] * nvars
        e[i] = 1
        return cls._raw(nvars, {tuple(e): ONE})

    @classmethod
    def monomial(cls, exp, coeff=1):
        exp = tuple(exp)
        return cls(len(exp), {exp: coeff})

    # -- basic queries ------------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_term(self) -> GaussRat:
        return self.terms.get((0,) * self.nvars, ZERO)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def degree(self, var: int) -> int:
        """Degree in one variable; ``-1`` for the zero polynomial."""
        return max((e[var] for e in self.terms), default=-1)

    def variables(self) -> set[int]:
        return {i for e in self.terms for i, k in enumerate(e) if k}

    def sorted_terms(self):
        """Terms in descending graded-lex order (the canonical order)."""
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    # -- ring operations ----------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            if other.nvars != self.nvars:
                raise PolyError(f"variable count mismatch: {self.nvars} vs {other.nvars}")
            return other
        c = as_gauss(other)
        if c is NotImplemented:
            return NotImplemented
        return MultiPoly.const(c, self.nvars)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e)
            if s is None:
                out[e] = c
            else:
                s = s + c
                if s:
                    out[e] = s
                else:
                    del out[e]
        return MultiPoly._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self.nvars, {e: -c for e, c in self.terms.items()})

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
        if not isinstance(other, MultiPoly):
            c = as_gauss(other)
            if c is NotImplemented:
                return NotImplemented
            if not c:
                return MultiPoly.zero(self.nvars)
            return MultiPoly._raw(self.nvars, {e: v * c for e, v in self.terms.items()})
        other = self._coerce(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e)
                out[e] = c1 * c2 if s is None else s + c1 * c2
        return MultiPoly._raw(self.nvars, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise PolyError("only non-negative integer powers")
        result = MultiPoly.const(1, self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c) -> "MultiPoly":
        return self * as_gauss(c)

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.nvars == other.nvars and self.terms == other.terms
        c = as_gauss(other)
        if c is NotImplemented:
            return NotImplemented
        return self.terms == ({(0,) * self.nvars: c} if c else {})

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    # -- calculus and substitution -----------------------------------------
    def diff(self, var: int) -> "MultiPoly":
        out = {}
        for e, c in self.terms.items():
            k = e[var]
            if k:
                e2 = list(e)
                e2[var] = k - 1
                out[tuple(e2)] = c * k
        return MultiPoly._raw(self.nvars, out)

    def coeffs_in(self, var: int) -> dict[int, "MultiPoly"]:
        """Split by powers of ``var``; coefficients keep ``nvars`` but omit ``var``."""
        out: dict[int, dict] = {}
        for e, c in self.terms.items():
            k = e[var]
            e2 = list(e)
            e2[var] = 0
            out.setdefault(k, {})[tuple(e2)] = c
        return {k: MultiPoly._raw(self.nvars, t) for k, t in out.items()}

    def leading_coeff_in(self, var: int) -> "MultiPoly":
        d = self.degree(var)
        if d < 0:
            return MultiPoly.zero(self.nvars)
        return self.coeffs_in(var)[d]

    def is_monic_in(self, var: int) -> bool:
        return self.leading_coeff_in(var) == 1

    def compose(self, subs: Sequence["MultiPoly"]) -> "MultiPoly":
        """Substitute ``subs[i]`` for variable ``i``; result lives in ``subs``' ring."""
        if len(subs) != self.nvars:
            raise PolyError("need one substitution per variable")
        if not subs:
            return MultiPoly._raw(0, dict(self.terms))
        target = subs[0].nvars
        cache: dict[tuple[int, int], MultiPoly] = {}

        def power(i, k):
            key = (i, k)
            if key not in cache:
                cache[key] = subs[i] ** k
            return cache[key]

        acc = MultiPoly.zero(target)
        for e, c in self.terms.items():
            t = MultiPoly.const(c, target)
            for i, k in enumerate(e):
                if k:
                    t = t * power(i, k)
            acc = acc + t
        return acc

    def substitute(self, var: int, value: "MultiPoly") -> "MultiPoly":
        subs = [MultiPoly.var(i, self.nvars) for i in range(self.nvars)]
        subs[var] = value
        return self.compose(subs)

    def evaluate(self, point: Sequence) -> GaussRat:
        point = [as_gauss(p) for p in point]
        acc = ZERO
        for e, c in self.terms.items():
            t = c
            for p, k in zip(point, e):
                if k:
                    t = t * p**k
            acc = acc + t
        return acc

    def remap(self, index_map: Sequence[int], nvars: int) -> "MultiPoly":
        """Embed into a ring of ``nvars`` variables sending variable i to ``index_map[i]``."""
        out = {}
        for e, c in self.terms.items():
            e2 = [0] * nvars
            for i, k in enumerate(e):
                if k:
                    e2[index_map[i]] += k
            out[tuple(e2)] = c
        return MultiPoly._raw(nvars, out)

    def drop_vars(self, keep: Sequence[int]) -> "MultiPoly":
        """Restrict to the variables ``keep``; the others must not occur."""
        out = {}
        keep_set = set(keep)
        for e, c in self.terms.items():
            if any(k and i not in keep_set for i, k in enumerate(e)):
                raise PolyError("dropped variable occurs in polynomial")
            out[tuple(e[i] for i in keep)] = c
        return MultiPoly._raw(len(keep), out)

    def map_coeffs(self, fn) -> "MultiPoly":
        return MultiPoly(self.nvars, {e: fn(c) for e, c in self.terms.items()})

    def is_real(self) -> bool:
        return all(c.is_real() for c in self.terms.values())

    # -- text ---------------------------------------------------------------
    def to_text(self, names: Sequence[str] | None = None) -> str:
        if names is None:
            names = [f"x{i}" for i in range(self.nvars)]
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                names[i] if k == 1 else f"{names[i]}^{k}" for i, k in enumerate(e) if k
            )
            ctext = format_gauss(c)
            if c.im and c.re:
                ctext = f"({ctext})"
            if not mono:
                parts.append(ctext)
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{ctext}*{mono}")
        text = parts[0]
        for p in parts[1:]:
            text += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return text

    def __repr__(self):
        return f"MultiPoly({self.nvars}, {self.to_text()!r})"

    __str__ = to_text


# ---------------------------------------------------------------------------
# Univariate view


class UniOverPoly:
    """A polynomial viewed in one distinguished variable.

    ``coeffs`` lists the coefficients (highest degree first) as MultiPolys in
    the same ring that do not involve ``var_index``.
    """

    __slots__ = ("var_index", "coeffs", "nvars")

    def __init__(self, var_index: int, coeffs: Sequence[MultiPoly]):
        coeffs = list(coeffs)
        while coeffs and not coeffs[0]:
            coeffs.pop(0)
        if not coeffs:
            raise PolyError("zero polynomial has no univariate view")
        self.nvars = coeffs[0].nvars
        for c in coeffs:
            if c.degree(var_index) > 0:
                raise PolyError("coefficient involves the distinguished variable")
        self.var_index = var_index
        self.coeffs = coeffs

    @classmethod
    def from_multi(cls, p: MultiPoly, var: int) -> "UniOverPoly":
        parts = p.coeffs_in(var)
        d = p.degree(var)
        return cls(var, [parts.get(k, MultiPoly.zero(p.nvars)) for k in range(d, -1, -1)])

    def to_multi(self) -> MultiPoly:
        z = MultiPoly.var(self.var_index, self.nvars)
        acc = MultiPoly.zero(self.nvars)
        for c in self.coeffs:
            acc = acc * z + c
        return acc

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> MultiPoly:
        return self.coeffs[0]

    def is_unitary(self) -> bool:
        return self.lc == 1

    def __eq__(self, other):
        return (
            isinstance(other, UniOverPoly)
            and self.var_index == other.var_index
            and self.coeffs == other.coeffs
        )

    def __repr__(self):
        return f"UniOverPoly(var={self.var_index}, {self.to_multi().to_text()!r})"


# ---------------------------------------------------------------------------
# Division


def divmod_in_var(f: MultiPoly, g: MultiPoly, var: int) -> tuple[MultiPoly, MultiPoly]:
    """Division with remainder by a divisor monic in ``var``."""
    if not 0 <= var < f.nvars:
        raise PolyError(f"variable index {var} out of range")
    if f.nvars != g.nvars:
        raise PolyError("variable count mismatch")
    dg = g.degree(var)
    if dg < 0 or not g.is_monic_in(var):
        raise PolyError("divisor is not monic in the division variable")
    n = f.nvars
    q = MultiPoly.zero(n)
    r = f
    while r.degree(var) >= dg:
        k = r.degree(var) - dg
        lead = r.coeffs_in(var)[r.degree(var)]
        e = [0] * n
        e[var] = k
        t = lead * MultiPoly.monomial(e)
        q = q + t
        r = r - t * g
    return q, r


def _lex_lead(p: MultiPoly):
    e = max(p.terms)
    return e, p.terms[e]


def exact_div(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    """Quotient ``f / g``; raises :class:`PolyError` unless the division is exact."""
    if not g:
        raise ZeroDivisionError("division by zero polynomial")
    if f.nvars != g.nvars:
        raise PolyError("variable count mismatch")
    if g.is_constant():
        return f * g.constant_term().inverse()
    ge, gc = _lex_lead(g)
    ginv = gc.inverse()
    q: dict = {}
    r = f
    while r:
        re_, rc = _lex_lead(r)
        diff = tuple(a - b for a, b in zip(re_, ge))
        if any(k < 0 for k in diff):
            raise PolyError("division is not exact")
        c = rc * ginv
        q[diff] = c
        r = r - MultiPoly._raw(f.nvars, {diff: c}) * g
    return MultiPoly._raw(f.nvars, q)


# ---------------------------------------------------------------------------
# Resultants


def _bareiss_det(mat: list[list[MultiPoly]], nvars: int) -> MultiPoly:
    n = len(mat)
    if n == 0:
        return MultiPoly.const(1, nvars)
    m = [row[:] for row in mat]
    sign = 1
    prev = MultiPoly.const(1, nvars)
    for k in range(n - 1):
        if not m[k][k]:
            swap = next((i for i in range(k + 1, n) if m[i][k]), None)
            if swap is None:
                return MultiPoly.zero(nvars)
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        piv = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * piv - m[i][k] * m[k][j]
                m[i][j] = exact_div(num, prev) if num else num
            m[i][k] = MultiPoly.zero(nvars)
        prev = piv
    det = m[n - 1][n - 1]
    return det if sign > 0 else -det


def sylvester_matrix(f: MultiPoly, g: MultiPoly, var: int) -> list[list[MultiPoly]]:
    fu = UniOverPoly.from_multi(f, var).coeffs
    gu = UniOverPoly.from_multi(g, var).coeffs
    m, n = len(fu) - 1, len(gu) - 1
    size = m + n
    zero = MultiPoly.zero(f.nvars)
    rows = []
    for i in range(n):
        rows.append([zero] * i + fu + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + gu + [zero] * (size - n - 1 - i))
    return rows


def resultant(f: MultiPoly, g: MultiPoly, var: int) -> MultiPoly:
    """Sylvester resultant of ``f`` and ``g`` with respect to ``var``."""
    if f.nvars != g.nvars:
        raise PolyError("variable count mismatch")
    if not 0 <= var < f.nvars:
        raise PolyError(f"variable index {var} out of range")
    if not f or not g:
        return MultiPoly.zero(f.nvars)
    df, dg = f.degree(var), g.degree(var)
    if df + dg == 0:
        raise PolyError("both inputs are constant in the resultant variable")
    if df == 0:
        return f**dg
    if dg == 0:
        return g**df
    return _bareiss_det(sylvester_matrix(f, g, var), f.nvars)


def discriminant(f: UniOverPoly) -> MultiPoly:
    """``(-1)^(d(d-1)/2) * res(f, f') / lc(f)``."""
    d = f.degree
    if d < 1:
        raise PolyError("discriminant needs degree >= 1")
    p = f.to_multi()
    if d == 1:
        return MultiPoly.const(1, p.nvars)
    r = exact_div(resultant(p, p.diff(f.var_index), f.var_index), f.lc)
    return -r if (d * (d - 1) // 2) % 2 else r


# ---------------------------------------------------------------------------
# GCD and squarefree parts


def _prem(a: MultiPoly, b: MultiPoly, var: int) -> MultiPoly:
    """Pseudo-remainder ``lc(b)^(da-db+1) * a mod b``."""
    da, db = a.degree(var), b.degree(var)
    lb = b.leading_coeff_in(var)
    r = a
    steps = 0
    n = a.nvars
    while r and r.degree(var) >= db:
        dr = r.degree(var)
        e = [0] * n
        e[var] = dr - db
        r = r * lb - r.leading_coeff_in(var) * MultiPoly.monomial(e) * b
        steps += 1
    extra = da - db + 1 - steps
    return r * lb**extra if extra > 0 else r


def _normalize(p: MultiPoly) -> MultiPoly:
    """Scale so the grlex-leading coefficient is 1."""
    if not p:
        return p
    lead = p.sorted_terms()[0][1]
    return p * lead.inverse()


def _content(p: MultiPoly, var: int) -> MultiPoly:
    g = MultiPoly.zero(p.nvars)
    for c in p.coeffs_in(var).values():
        g = poly_gcd(g, c)
        if g.is_constant():
            return MultiPoly.const(1, p.nvars)
    return g


def poly_gcd(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    """Multivariate gcd by recursive subresultant PRS, normalized to leading coefficient 1."""
    if not f:
        return _normalize(g)
    if not g:
        return _normalize(f)
    vs = f.variables() | g.variables()
    if not vs or f.is_constant() or g.is_constant():
        return MultiPoly.const(1, f.nvars)
    var = max(vs)
    if f.degree(var) < g.degree(var):
        f, g = g, f
    if g.degree(var) == 0:
        return poly_gcd(_content(f, var), g)
    cf, cg = _content(f, var), _content(g, var)
    a, b = exact_div(f, cf), exact_div(g, cg)
    c = poly_gcd(cf, cg)
    one = MultiPoly.const(1, f.nvars)
    gg, h = one, one
    while True:
        delta = a.degree(var) - b.degree(var)
        r = _prem(a, b, var)
        if not r:
            break
        if r.degree(var) == 0:
            return _normalize(c)
        a, b = b, exact_div(r, gg * h**delta)
        gg = a.leading_coeff_in(var)
        h = exact_div(gg**delta, h ** (delta - 1)) if delta else h
    b = exact_div(b, _content(b, var))
    return _normalize(b * c)


def squarefree_part(f: UniOverPoly) -> UniOverPoly:
    """``f / gcd(f, f')``, made unitary when its leading coefficient is constant."""
    p = f.to_multi()
    if not p:
        raise PolyError("squarefree part of zero")
    g = poly_gcd(p, p.diff(f.var_index))
    q = exact_div(p, g)
    lc = q.leading_coeff_in(f.var_index)
    q = q * lc.constant_term().inverse() if lc.is_constant() else _normalize(q)
    return UniOverPoly.from_multi(q, f.var_index)


# ---------------------------------------------------------------------------
# Linear substitutions


def _frac_matrix(m) -> list[list[Fraction]]:
    return [[Fraction(x) for x in row] for row in m]


def rational_inverse(m) -> list[list[Fraction]]:
    """Exact inverse by Gauss-Jordan over Q; raises :class:`PolyError` if singular."""
    a = _frac_matrix(m)
    n = len(a)
    if any(len(row) != n for row in a):
        raise PolyError("matrix must be square")
    inv = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            raise PolyError("singular matrix")
        a[col], a[piv] = a[piv], a[col]
        inv[col], inv[piv] = inv[piv], inv[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        inv[col] = [x / p for x in inv[col]]
        for r in range(n):
            if r != col and a[r][col]:
                fct = a[r][col]
                a[r] = [x - fct * y for x, y in zip(a[r], a[col])]
                inv[r] = [x - fct * y for x, y in zip(inv[r], inv[col])]
    return inv


def substitute_linear(f: MultiPoly, m) -> MultiPoly:
    """``f(M x)``: variable i is replaced by ``sum_j M[i][j] x_j``."""
    a = _frac_matrix(m)
    if len(a) != f.nvars:
        raise PolyError("matrix size must equal the number of variables")
    rational_inverse(a)
    n = f.nvars
    subs = []
    for row in a:
        subs.append(MultiPoly(n, {tuple(int(i == j) for i in range(n)): c for j, c in enumerate(row) if c}))
    return f.compose(subs)


# ---------------------------------------------------------------------------
# Parsing


_BINOPS = {ast.Add, ast.Sub, ast.Mult, ast.Div, ast.Pow}


def parse_poly(text: str, names: Sequence[str]) -> MultiPoly:
    """Parse polynomial text such as ``"(1/2+i)*x^2 - 3*y + 1"``.

    ``i`` is the imaginary unit and cannot be a variable name.
    """
    names = list(names)
    if "i" in names:
        raise PolyError("'i' is reserved for the imaginary unit")
    n = len(names)
    index = {name: k for k, name in enumerate(names)}
    try:
        tree = ast.parse(text.replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise PolyError(f"cannot parse polynomial {text!r}") from exc

    def walk(node) -> MultiPoly:
        if isinstance(node, ast.Expression):
            return walk(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return MultiPoly.const(node.value, n)
        if isinstance(node, ast.Name):
            if node.id == "i":
                return MultiPoly.const(GaussRat(0, 1), n)
            if node.id not in index:
                raise PolyError(f"unknown variable {node.id!r}")
            return MultiPoly.var(index[node.id], n)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = walk(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            left = walk(node.left)
            if isinstance(node.op, ast.Pow):
                exp = walk(node.right)
                if not exp.is_constant() or not exp.constant_term().is_real():
                    raise PolyError("exponent must be a constant integer")
                k = exp.constant_term().re
                if k.denominator != 1 or k < 0:
                    raise PolyError("exponent must be a non-negative integer")
                return left ** int(k)
            right = walk(node.right)
            if isinstance(node.op, ast.Add):
                return left + right
            if isinstance(node.op, ast.Sub):
                return left - right
            if isinstance(node.op, ast.Mult):
                return left * right
            if not right.is_constant() or not right:
                raise PolyError("division only by nonzero constants")
            return left * right.constant_term().inverse()
        raise PolyError(f"unsupported syntax in {text!r}")

    return walk(tree)
