from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from nashapprox.gaussrat import GaussRat, I
from nashapprox.poly import (
    MultiPoly,
    PolyError,
    UniOverPoly,
    discriminant,
    divmod_in_var,
    exact_div,
    parse_poly,
    poly_gcd,
    rational_inverse,
    resultant,
    squarefree_part,
    substitute_linear,
    sylvester_matrix,
)

XZ = ["x", "z"]


def P(text, names=XZ):
    return parse_poly(text, names)


# ---------------------------------------------------------------- strategies

small = st.integers(-4, 4)


@st.composite
def polys(draw, nvars=2, max_deg=3, max_terms=5):
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        e = tuple(draw(st.integers(0, max_deg)) for _ in range(nvars))
        terms[e] = GaussRat(Fraction(draw(small), draw(st.integers(1, 3))), Fraction(draw(st.integers(-1, 1))))
    return MultiPoly(nvars, terms)


@st.composite
def monic_in_last(draw, nvars=2, deg=None):
    d = draw(st.integers(1, 3)) if deg is None else deg
    body = draw(polys(nvars, max_deg=2))
    # cut the body below degree d in the last variable
    body = MultiPoly(nvars, {e: c for e, c in body.terms.items() if e[-1] < d})
    e = [0] * nvars
    e[-1] = d
    return MultiPoly.monomial(tuple(e)) + body


# ---------------------------------------------------------------- arithmetic


def test_arith_examples():
    assert P("x+z") * P("x-z") == P("x^2-z^2")
    p = P("3*x*z - 1/2")
    assert p * 1 == p
    assert P("z^2-x") + P("x") == P("z^2")


@settings(max_examples=60, deadline=None)
@given(polys(), polys(), polys())
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == MultiPoly.zero(2)


@settings(max_examples=60, deadline=None)
@given(polys())
def test_text_round_trip(p):
    assert parse_poly(p.to_text(XZ), XZ) == p


def test_canonical_text():
    assert P("x + z^2 - x").to_text(XZ) == "z^2"
    assert P("(1+2*i)*x*z").to_text(XZ) == "(1+2*i)*x*z"
    assert str(GaussRat(Fraction(1, 2), Fraction(-3))) in ("1/2-3*i",)
    assert I * I == GaussRat(-1)


def test_parse_errors():
    with pytest.raises(PolyError):
        parse_poly("x^-1", XZ)
    with pytest.raises(PolyError):
        parse_poly("w + 1", XZ)
    with pytest.raises(PolyError):
        parse_poly("x/z", XZ)


# ---------------------------------------------------------------- division


@pytest.mark.parametrize(
    "f, g, q, r",
    [("z^3", "z^2-x", "z", "x*z"), ("z^2-x", "z^2-x", "1", "0"), ("z^2", "z-x", "z+x", "x^2")],
)
def test_divmod_examples(f, g, q, r):
    assert divmod_in_var(P(f), P(g), 1) == (P(q), P(r))


@settings(max_examples=60, deadline=None)
@given(polys(), monic_in_last())
def test_divmod_reconstructs(f, g):
    q, r = divmod_in_var(f, g, 1)
    assert q * g + r == f
    assert r.degree(1) < g.degree(1)


def test_divmod_needs_monic():
    with pytest.raises(PolyError):
        divmod_in_var(P("z^2"), P("x*z+1"), 1)


def test_exact_div():
    assert exact_div(P("x^2*z - z^3"), P("x-z")) == P("x*z+z^2")
    with pytest.raises(PolyError):
        exact_div(P("x+1"), P("z"))


# ---------------------------------------------------------------- resultants


@pytest.mark.parametrize("f, g, want", [("z^2-x", "z", "-x"), ("(z-x)*(z-1)", "z-x", "0")])
def test_resultant_examples(f, g, want):
    assert resultant(P(f), P(g), 1) == P(want)


def test_resultant_of_linear_factors():
    names = ["a", "b", "z"]
    assert resultant(parse_poly("z-a", names), parse_poly("z-b", names), 2) == parse_poly("a-b", names)


def laplace_det(m):
    """Cofactor expansion along the first row (the brute-force oracle)."""
    n = len(m)
    if n == 0:
        return MultiPoly.const(1, 2)
    if n == 1:
        return m[0][0]
    total = MultiPoly.zero(m[0][0].nvars)
    for j in range(n):
        if not m[0][j]:
            continue
        minor = [row[:j] + row[j + 1 :] for row in m[1:]]
        term = m[0][j] * laplace_det(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


@settings(max_examples=25, deadline=None)
@given(polys(max_deg=3, max_terms=4), polys(max_deg=3, max_terms=4))
def test_resultant_matches_sylvester_expansion(f, g):
    if f.degree(1) < 1 or g.degree(1) < 1:
        return
    assert resultant(f, g, 1) == laplace_det(sylvester_matrix(f, g, 1))


@settings(max_examples=25, deadline=None)
@given(monic_in_last(), monic_in_last(), monic_in_last())
def test_resultant_multiplicative(f, g, h):
    assert resultant(f, g * h, 1) == resultant(f, g, 1) * resultant(f, h, 1)


def test_discriminant_examples():
    assert discriminant(UniOverPoly.from_multi(P("z^2-x"), 1)) == P("4*x")
    assert discriminant(UniOverPoly.from_multi(P("z^2"), 1)) == P("0")
    names = ["p", "q", "z"]
    cubic = UniOverPoly.from_multi(parse_poly("z^3+p*z+q", names), 2)
    assert discriminant(cubic) == parse_poly("-4*p^3-27*q^2", names)
    quad = UniOverPoly.from_multi(parse_poly("a*z^2+b*z+c", ["a", "b", "c", "z"]), 3)
    assert discriminant(quad) == parse_poly("b^2-4*a*c", ["a", "b", "c", "z"])


# ---------------------------------------------------------------- gcd and squarefree


def test_squarefree_examples():
    def sf(t):
        return squarefree_part(UniOverPoly.from_multi(P(t), 1)).to_multi()

    assert sf("(z-x)^2*(z+1)") == P("(z-x)*(z+1)")
    assert sf("z^2-x") == P("z^2-x")
    assert sf("z^2") == P("z")


def test_gcd():
    g = poly_gcd(P("(z-x)*(z+1)^2"), P("(z+1)*(z-2)"))
    assert exact_div(g, P("z+1")).is_constant()


# ---------------------------------------------------------------- linear substitution


def test_substitute_linear_examples():
    xy = ["x", "y"]
    assert substitute_linear(parse_poly("x*y", xy), [[1, 1], [0, 1]]) == parse_poly("(x+y)*y", xy)
    f = P("x^3 - 2*z")
    assert substitute_linear(f, [[1, 0], [0, 1]]) == f
    assert substitute_linear(P("z^2-x"), [[1, 1], [0, 1]]) == P("z^2-x-z")


@settings(max_examples=40, deadline=None)
@given(polys(), st.lists(st.integers(-3, 3), min_size=4, max_size=4))
def test_substitute_linear_round_trip(f, entries):
    M = [entries[:2], entries[2:]]
    if M[0][0] * M[1][1] - M[0][1] * M[1][0] == 0:
        return
    assert substitute_linear(substitute_linear(f, M), rational_inverse(M)) == f


def test_singular_matrix_rejected():
    with pytest.raises(PolyError):
        rational_inverse([[1, 2], [2, 4]])
