"""Exact Gaussian rationals: complex numbers with rational real and imaginary parts."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

__all__ = ["GaussRat", "as_gauss"]


class GaussRat:
    """An element ``re + im*i`` of Q(i) with exact :class:`Fraction` parts.

    Instances are immutable and hashable; equality is exact.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", re if type(re) is Fraction else Fraction(re))
        object.__setattr__(self, "im", im if type(im) is Fraction else Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussRat is immutable")

    @classmethod
    def _raw(cls, re: Fraction, im: Fraction) -> "GaussRat":
        obj = object.__new__(cls)
        object.__setattr__(obj, "re", re)
        object.__setattr__(obj, "im", im)
        return obj

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        other = as_gauss(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussRat._raw(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = as_gauss(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussRat._raw(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = as_gauss(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __neg__(self):
        return GaussRat._raw(-self.re, -self.im)

    def __mul__(self, other):
        other = as_gauss(other)
        if other is NotImplemented:
            return NotImplemented
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b and not d:
            return GaussRat._raw(a * c, b)
        return GaussRat._raw(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def conjugate(self) -> "GaussRat":
        return GaussRat._raw(self.re, -self.im)

    def norm(self) -> Fraction:
        """Squared modulus ``re**2 + im**2``."""
        return self.re * self.re + self.im * self.im

    def inverse(self) -> "GaussRat":
        if not self:
            raise ZeroDivisionError("GaussRat division by zero")
        if not self.im:
            return GaussRat._raw(1 / self.re, self.im)
        n = self.norm()
        return GaussRat._raw(self.re / n, -self.im / n)

    def __truediv__(self, other):
        other = as_gauss(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = as_gauss(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result, base = ONE, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- comparisons and conversions ----------------------------------------
    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        other = as_gauss(other)
        if other is NotImplemented:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def is_real(self) -> bool:
        return not self.im

    def __repr__(self):
        return f"GaussRat({self})"

    def __str__(self):
        return format_gauss(self)


def _frac_text(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_gauss(c: GaussRat) -> str:
    """Canonical text ``a/b+c/d*i``; pure real or pure imaginary parts are shortened."""
    if not c.im:
        return _frac_text(c.re)
    im = "i" if c.im == 1 else "-i" if c.im == -1 else f"{_frac_text(c.im)}*i"
    if not c.re:
        return im
    sep = "" if im.startswith("-") else "+"
    return f"{_frac_text(c.re)}{sep}{im}"


def as_gauss(x) -> GaussRat:
    """Coerce ints, Fractions and GaussRats; ``NotImplemented`` for anything else."""
    if type(x) is GaussRat:
        return x
    if isinstance(x, (int, Rational)):
        return GaussRat._raw(Fraction(x), Fraction(0))
    if isinstance(x, complex):
        return GaussRat(Fraction(x.real), Fraction(x.imag))
    return NotImplemented


ZERO = GaussRat(0)
ONE = GaussRat(1)
I = GaussRat(0, 1)
