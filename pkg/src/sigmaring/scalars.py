"""Exact scalar arithmetic: rationals and Gaussian rationals.

Rational values use gmpy2.mpq when available (noticeably faster once
numerators of iterated logarithmic derivatives grow large) and fall back to
fractions.Fraction.  Both types normalise on construction, so gcd(|num|, den)
is 1, den > 0 and zero is 0/1; values are immutable and hashable.

GaussRational adjoins i = sqrt(-1) to the rationals.  It is only needed by
the local normal-form computation, where the first coordinate change mixes
real and imaginary parts.
"""

from __future__ import annotations

try:
    from gmpy2 import mpq as Rational
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    from fractions import Fraction as Rational

ZERO = Rational(0)
ONE = Rational(1)


def rat(num, den=1):
    """Exact rational from integers (or anything Rational accepts)."""
    return Rational(num, den)


def format_rational(c) -> str:
    """Canonical text for a rational: "7", "-2/3"."""
    return str(c)


class GaussRational:
    """a + b*i with exact rational a, b.

    Field operations only; conjugation is an involution and the norm
    re**2 + im**2 vanishes exactly when the value is zero.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Rational(re))
        object.__setattr__(self, "im", Rational(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussRational is immutable")

    @staticmethod
    def _coerce(x):
        if isinstance(x, GaussRational):
            return x
        if isinstance(x, (int, type(ZERO))):
            return GaussRational(x)
        return NotImplemented

    def conj(self) -> "GaussRational":
        return GaussRational(self.re, -self.im)

    def norm(self):
        return self.re * self.re + self.im * self.im

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __neg__(self):
        return GaussRational(-self.re, -self.im)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        n = other.norm()
        if not n:
            raise ZeroDivisionError("division by zero GaussRational")
        return GaussRational(
            (self.re * other.re + self.im * other.im) / n,
            (self.im * other.re - self.re * other.im) / n,
        )

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __str__(self):
        if not self.im:
            return str(self.re)
        im = f"{self.im}i" if abs(self.im) != 1 else ("i" if self.im > 0 else "-i")
        if not self.re:
            return im
        sign = "+" if self.im > 0 else ""
        return f"({self.re}{sign}{im})"

    def __repr__(self):
        return f"GaussRational({self.re!r}, {self.im!r})"


I = GaussRational(0, 1)


def gauss(re, im=0) -> GaussRational:
    return GaussRational(re, im)
