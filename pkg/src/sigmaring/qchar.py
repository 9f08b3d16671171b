"""Truncated q-series and the graded character of the degenerate sigma ring.

A QSeries holds exact rational coefficients c[0..N]; all arithmetic is exact
modulo q^{N+1}.  The character is computed two independent ways:

* character_series - the closed product formula
      (1 - q) * prod_{i=1..7} (1 - q^{2i})
      / (prod_{i=1..3} (1 - q^{2i}) * prod_{i=1..4} (1 - q^{2i})
         * prod_{i=0..3} (1 - q^{2i+1}))
* family_count_series - the generating function counting the graded basis
  families directly:
      -q - q^3 - q^5
      + (1 + q^12 + q^14 + q^16 + q^18) / ((1-q)(1-q^3)(1-q^5))
      + (q^8 + q^10 + q^12) / ((1-q)(1-q^3))

Coefficients are kept rational throughout; integrality is asserted only at
the final comparison so a silent arithmetic slip surfaces as a test failure.
"""

from __future__ import annotations

from math import comb

from .scalars import Rational


class QSeries:
    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs, order: int):
        if order < 0:
            raise ValueError("truncation order must be nonnegative")
        c = [Rational(x) for x in coeffs[: order + 1]]
        c.extend(Rational(0) for _ in range(order + 1 - len(c)))
        object.__setattr__(self, "coeffs", c)
        object.__setattr__(self, "order", order)

    def __setattr__(self, name, value):
        raise AttributeError("QSeries is immutable")

    @classmethod
    def zero(cls, order: int) -> "QSeries":
        return cls([], order)

    @classmethod
    def one(cls, order: int) -> "QSeries":
        return cls([1], order)

    @classmethod
    def monomial(cls, c, n: int, order: int) -> "QSeries":
        coeffs = [0] * (n + 1)
        if n <= order:
            coeffs[n] = c
        return cls(coeffs, order)

    @classmethod
    def one_minus_qn(cls, n: int, order: int) -> "QSeries":
        coeffs = [0] * (min(n, order) + 1)
        coeffs[0] = 1
        if n <= order:
            coeffs[n] = -1
        return cls(coeffs, order)

    def __getitem__(self, n: int):
        return self.coeffs[n]

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def _binop(self, other, f):
        if self.order != other.order:
            raise ValueError("truncation order mismatch")
        return QSeries([f(a, b) for a, b in zip(self.coeffs, other.coeffs)], self.order)

    def __add__(self, other):
        return self._binop(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._binop(other, lambda a, b: a - b)

    def __neg__(self):
        return QSeries([-a for a in self.coeffs], self.order)

    def __mul__(self, other):
        if self.order != other.order:
            raise ValueError("truncation order mismatch")
        n = self.order
        out = [Rational(0)] * (n + 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j in range(n + 1 - i):
                b = other.coeffs[j]
                if b:
                    out[i + j] += a * b
        return QSeries(out, n)

    def __truediv__(self, other):
        """Division; the divisor must have a unit (nonzero) constant term."""
        if self.order != other.order:
            raise ValueError("truncation order mismatch")
        d0 = other.coeffs[0]
        if not d0:
            raise ZeroDivisionError("series division needs a unit constant term")
        n = self.order
        out = [Rational(0)] * (n + 1)
        for k in range(n + 1):
            acc = self.coeffs[k]
            for j in range(1, k + 1):
                dj = other.coeffs[j]
                if dj:
                    acc -= dj * out[k - j]
            out[k] = acc / d0
        return QSeries(out, n)

    def integer_coefficients(self) -> list:
        """Coefficients as ints; raises if any coefficient is non-integral."""
        out = []
        for c in self.coeffs:
            if c.denominator != 1:
                raise ValueError(f"non-integer coefficient {c}")
            out.append(int(c))
        return out

    def __str__(self):
        frags = [f"{c}*q^{n}" for n, c in enumerate(self.coeffs) if c]
        return " + ".join(frags) if frags else "0"


def _product(factors, order: int) -> QSeries:
    out = QSeries.one(order)
    for f in factors:
        out = out * f
    return out


def character_series(order: int) -> QSeries:
    """Graded character of the degenerate sigma ring, truncated at q^order."""
    num = _product(
        [QSeries.one_minus_qn(1, order)]
        + [QSeries.one_minus_qn(2 * i, order) for i in range(1, 8)],
        order,
    )
    den = _product(
        [QSeries.one_minus_qn(2 * i, order) for i in range(1, 4)]
        + [QSeries.one_minus_qn(2 * i, order) for i in range(1, 5)]
        + [QSeries.one_minus_qn(2 * i + 1, order) for i in range(0, 4)],
        order,
    )
    return num / den


def family_count_series(order: int) -> QSeries:
    """Same character, counted family by family from the graded basis lists."""
    head = (
        QSeries.monomial(-1, 1, order)
        + QSeries.monomial(-1, 3, order)
        + QSeries.monomial(-1, 5, order)
    )
    num1 = QSeries.one(order)
    for n in (12, 14, 16, 18):
        num1 = num1 + QSeries.monomial(1, n, order)
    den1 = _product([QSeries.one_minus_qn(i, order) for i in (1, 3, 5)], order)
    num2 = QSeries.zero(order)
    for n in (8, 10, 12):
        num2 = num2 + QSeries.monomial(1, n, order)
    den2 = _product([QSeries.one_minus_qn(i, order) for i in (1, 3)], order)
    return head + num1 / den1 + num2 / den2


def hrep(n: int, r: int) -> int:
    """Multisets of size r from n symbols: binomial(n + r - 1, r)."""
    if r < 0:
        raise ValueError("r must be nonnegative")
    if n < 1:
        if r == 0 and n == 0:
            return 1
        raise ValueError("n must be positive")
    return comb(n + r - 1, r)


def gr_dimension_identity(n: int) -> bool:
    """Exact check of the counting identity
    3H_{n+1} + 3H_{n-1} + 3*2H_{n-2} + 3*3H_{n-2} + 3H_{n-3} == (n+1)^3 - n^3
    for n >= 4."""
    if n < 4:
        raise ValueError("identity is stated for n >= 4")
    lhs = (
        hrep(3, n + 1)
        + hrep(3, n - 1)
        + 3 * hrep(2, n - 2)
        + 3 * hrep(3, n - 2)
        + hrep(3, n - 3)
    )
    return lhs == (n + 1) ** 3 - n**3


def coefficient_table(qs: QSeries) -> list:
    """Rows (n, coefficient-as-int) for report emission."""
    return list(enumerate(qs.integer_coefficients()))
