"""Formal normal form of an A1 double point: sigma -> z1^2 + z2^2 + z3^2.

Work happens in TruncSeries3, trivariate power series over the Gaussian
rationals truncated at a total degree N.  For input written in the ring
variables u1, u2, u3 the fixed linear change

    u1 = x1 + i x2,   u2 = i x3,   u3 = x1 - i x2

turns the quadratic part u1 u3 - u2^2 into x1^2 + x2^2 + x3^2; input already
written in x1, x2, x3 (or a raw series) is taken as-is.  The construction
then groups the tail, rescales and completes the square:

    p = x1^2 (1 + G1) + x2^2 (1 + G2) + x3^2 (1 + G3) + C x1 x2 x3
    X_i = x_i sqrt(1 + G_i),  G = 1 / (sqrt(1+G1) sqrt(1+G2) sqrt(1+G3))
    z1 = X1 + (C G / 2) X2 X3
    z2 = X2 sqrt(1 - (C G)^2 X3^2 / 4)
    z3 = X3

after which p == z1^2 + z2^2 + z3^2 modulo degree N + 1.  Each tail monomial
is assigned to the G_i of the lowest index with exponent >= 2; only the bare
x1 x2 x3 monomial feeds the C channel, but C is carried as a series so the
square-completion works for arbitrary perturbed inputs.
"""

from __future__ import annotations

from dataclasses import dataclass

from .poly import MultiPoly
from .scalars import GaussRational, I, Rational

X_VARS = ("x1", "x2", "x3")
U_VARS = ("u1", "u2", "u3")


class DegenerateQuadraticPart(ValueError):
    """The quadratic part has rank below 3, so no A1 normal form exists."""


class TruncSeries3:
    """Power series in three variables modulo total degree > order."""

    __slots__ = ("terms", "order")

    def __init__(self, terms, order: int):
        if order < 0:
            raise ValueError("truncation order must be nonnegative")
        cleaned = {}
        for e, c in terms.items():
            if sum(e) <= order and c:
                cleaned[e] = c if isinstance(c, GaussRational) else GaussRational(c)
        object.__setattr__(self, "terms", cleaned)
        object.__setattr__(self, "order", order)

    def __setattr__(self, name, value):
        raise AttributeError("TruncSeries3 is immutable")

    @classmethod
    def zero(cls, order: int) -> "TruncSeries3":
        return cls({}, order)

    @classmethod
    def const(cls, c, order: int) -> "TruncSeries3":
        return cls({(0, 0, 0): GaussRational(c)}, order)

    @classmethod
    def variable(cls, i: int, order: int) -> "TruncSeries3":
        e = [0, 0, 0]
        e[i - 1] = 1
        return cls({tuple(e): GaussRational(1)}, order)

    @classmethod
    def from_poly(cls, p: MultiPoly, order: int) -> "TruncSeries3":
        if len(p.vars) != 3:
            raise ValueError("series need a three-variable polynomial")
        return cls(dict(p.terms), order)

    def constant_term(self) -> GaussRational:
        return self.terms.get((0, 0, 0), GaussRational(0))

    def homogeneous_part(self, d: int) -> dict:
        return {e: c for e, c in self.terms.items() if sum(e) == d}

    def min_degree(self) -> int:
        return min((sum(e) for e in self.terms), default=self.order + 1)

    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other: "TruncSeries3"):
        if self.order != other.order:
            raise ValueError("truncation order mismatch")

    def __add__(self, other):
        self._check(other)
        acc = dict(self.terms)
        for e, c in other.terms.items():
            acc[e] = acc.get(e, GaussRational(0)) + c
        return TruncSeries3(acc, self.order)

    def __sub__(self, other):
        self._check(other)
        acc = dict(self.terms)
        for e, c in other.terms.items():
            acc[e] = acc.get(e, GaussRational(0)) - c
        return TruncSeries3(acc, self.order)

    def __neg__(self):
        return TruncSeries3({e: -c for e, c in self.terms.items()}, self.order)

    def __mul__(self, other):
        if isinstance(other, GaussRational):
            return self.scale(other)
        self._check(other)
        n = self.order
        acc: dict = {}
        for e1, c1 in self.terms.items():
            d1 = sum(e1)
            for e2, c2 in other.terms.items():
                if d1 + sum(e2) > n:
                    continue
                e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2])
                acc[e] = acc.get(e, GaussRational(0)) + c1 * c2
        return TruncSeries3(acc, n)

    def scale(self, c) -> "TruncSeries3":
        c = c if isinstance(c, GaussRational) else GaussRational(c)
        return TruncSeries3({e: c * v for e, v in self.terms.items()}, self.order)

    def __eq__(self, other):
        if not isinstance(other, TruncSeries3):
            return NotImplemented
        return self.order == other.order and self.terms == other.terms

    def __str__(self):
        if not self.terms:
            return "0"
        frags = []
        for e in sorted(self.terms, key=lambda e: (sum(e), e)):
            c = self.terms[e]
            powers = " ".join(f"{v}^{a}" for v, a in zip(X_VARS, e) if a)
            frags.append(f"{c} * {powers}" if powers else str(c))
        return " + ".join(frags)


def series_sqrt(s: TruncSeries3) -> TruncSeries3:
    """Square root of a series with constant term 1, degree by degree."""
    if s.constant_term() != GaussRational(1):
        raise ValueError("series square root needs constant term 1")
    n = s.order
    half = GaussRational(Rational(1, 2))
    root: dict = {(0, 0, 0): GaussRational(1)}
    by_degree: dict = {}
    for e, c in s.terms.items():
        by_degree.setdefault(sum(e), {})[e] = c
    level: dict = {0: {(0, 0, 0): GaussRational(1)}}
    for d in range(1, n + 1):
        # 2 * r_d = s_d - sum_{a+b=d, 0<a,b<d} r_a r_b
        acc = dict(by_degree.get(d, {}))
        for a in range(1, d):
            ra = level.get(a)
            rb = level.get(d - a)
            if not ra or not rb:
                continue
            for e1, c1 in ra.items():
                for e2, c2 in rb.items():
                    e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2])
                    acc[e] = acc.get(e, GaussRational(0)) - c1 * c2
        part = {e: half * c for e, c in acc.items() if c}
        if part:
            level[d] = part
            root.update(part)
    return TruncSeries3(root, n)


def series_inverse(s: TruncSeries3) -> TruncSeries3:
    """Multiplicative inverse of a series with unit constant term."""
    c0 = s.constant_term()
    if not c0:
        raise ValueError("series inverse needs a unit constant term")
    n = s.order
    inv0 = GaussRational(1) / c0
    by_degree: dict = {}
    for e, c in s.terms.items():
        d = sum(e)
        if d:
            by_degree.setdefault(d, {})[e] = c
    level: dict = {0: {(0, 0, 0): inv0}}
    out: dict = {(0, 0, 0): inv0}
    for d in range(1, n + 1):
        acc: dict = {}
        for a in range(1, d + 1):
            sa = by_degree.get(a)
            rb = level.get(d - a)
            if not sa or not rb:
                continue
            for e1, c1 in sa.items():
                for e2, c2 in rb.items():
                    e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2])
                    acc[e] = acc.get(e, GaussRational(0)) + c1 * c2
        part = {e: -inv0 * c for e, c in acc.items() if c}
        if part:
            level[d] = part
            out.update(part)
    return TruncSeries3(out, n)


@dataclass(frozen=True)
class CoordinateChange:
    z1: TruncSeries3
    z2: TruncSeries3
    z3: TruncSeries3
    residual: TruncSeries3

    def z(self) -> tuple:
        return (self.z1, self.z2, self.z3)


_LINEAR_CHANGE = None


def _linear_change_bindings():
    # u1 = x1 + i x2, u2 = i x3, u3 = x1 - i x2 over the Gaussian rationals
    global _LINEAR_CHANGE
    if _LINEAR_CHANGE is None:
        x1 = MultiPoly.variable(X_VARS, "x1").map_coefficients(GaussRational)
        x2 = MultiPoly.variable(X_VARS, "x2").map_coefficients(GaussRational)
        x3 = MultiPoly.variable(X_VARS, "x3").map_coefficients(GaussRational)
        _LINEAR_CHANGE = {
            "u1": x1 + x2.scale(I),
            "u2": x3.scale(I),
            "u3": x1 - x2.scale(I),
        }
    return _LINEAR_CHANGE


def _to_series(p, order: int) -> TruncSeries3:
    if isinstance(p, TruncSeries3):
        if p.order == order:
            return p
        return TruncSeries3(p.terms, order)
    if isinstance(p, MultiPoly):
        if p.vars == U_VARS:
            p = p.map_coefficients(GaussRational).substitute(
                _linear_change_bindings(), X_VARS
            )
        elif p.vars != X_VARS:
            raise ValueError(f"unsupported alphabet {p.vars}")
        return TruncSeries3.from_poly(p, order)
    raise TypeError("input must be a MultiPoly or TruncSeries3")


def _quadratic_rank(quad: dict) -> int:
    # symmetric Gram matrix of the quadratic form, rank over the field
    gram = [[GaussRational(0)] * 3 for _ in range(3)]
    half = GaussRational(Rational(1, 2))
    for e, c in quad.items():
        idx = [i for i, a in enumerate(e) for _ in range(a)]
        i, j = idx[0], idx[1]
        if i == j:
            gram[i][i] = gram[i][i] + c
        else:
            gram[i][j] = gram[i][j] + half * c
            gram[j][i] = gram[j][i] + half * c
    rank = 0
    rows = [row[:] for row in gram]
    for col in range(3):
        piv = next((r for r in range(rank, 3) if rows[r][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        pr = rows[rank]
        for r in range(rank + 1, 3):
            if rows[r][col]:
                f = rows[r][col] / pr[col]
                rows[r] = [a - f * b for a, b in zip(rows[r], pr)]
        rank += 1
    return rank


def group_tail(s: TruncSeries3):
    """Split degree >= 3 terms into G1, G2, G3 and the x1 x2 x3 channel.

    Each monomial goes to the G_i of the lowest index with exponent >= 2;
    only the bare (1, 1, 1) monomial remains for the channel series.  The
    grouping is exact: x1^2 G1 + x2^2 G2 + x3^2 G3 + x1 x2 x3 C re-sums to
    the tail.
    """
    n = s.order
    g = [dict(), dict(), dict()]
    channel: dict = {}
    for e, c in s.terms.items():
        if sum(e) < 3:
            continue
        target = next((i for i in range(3) if e[i] >= 2), None)
        if target is None:
            channel[(e[0] - 1, e[1] - 1, e[2] - 1)] = c
        else:
            e2 = list(e)
            e2[target] -= 2
            g[target][tuple(e2)] = c
    return (
        TruncSeries3(g[0], n),
        TruncSeries3(g[1], n),
        TruncSeries3(g[2], n),
        TruncSeries3(channel, n),
    )


def normalize(sigma_in, order: int = 12) -> CoordinateChange:
    """Coordinate change z with sigma_in(u(z)) = z1^2 + z2^2 + z3^2 modulo
    degree order + 1.

    Input on the u-alphabet passes through the fixed linear change first;
    input on x1, x2, x3 (or a raw series) must already have quadratic part
    x1^2 + x2^2 + x3^2.  Raises DegenerateQuadraticPart when the quadratic
    form has rank < 3 and ValueError for nonzero constant/linear parts or a
    full-rank quadratic part that is not the unit form.
    """
    s = _to_series(sigma_in, order)
    if s.constant_term():
        raise ValueError("input has a nonzero constant term")
    if s.homogeneous_part(1):
        raise ValueError("input has a nonzero linear part")
    quad = s.homogeneous_part(2)
    unit = {
        (2, 0, 0): GaussRational(1),
        (0, 2, 0): GaussRational(1),
        (0, 0, 2): GaussRational(1),
    }
    if quad != unit:
        rank = _quadratic_rank(quad)
        if rank < 3:
            raise DegenerateQuadraticPart(
                f"quadratic part has rank {rank} < 3"
            )
        raise ValueError("quadratic part is full rank but not the unit form")

    g1, g2, g3, channel = group_tail(s)
    one = TruncSeries3.const(1, order)
    s1 = series_sqrt(one + g1)
    s2 = series_sqrt(one + g2)
    s3 = series_sqrt(one + g3)
    x = [TruncSeries3.variable(i, order) for i in (1, 2, 3)]
    big_x = [x[0] * s1, x[1] * s2, x[2] * s3]
    g = series_inverse(s1 * s2 * s3)
    cg = channel * g
    half = GaussRational(Rational(1, 2))
    quarter = GaussRational(Rational(1, 4))
    z1 = big_x[0] + (cg * big_x[1] * big_x[2]).scale(half)
    z2 = big_x[1] * series_sqrt(one - (cg * cg * big_x[2] * big_x[2]).scale(quarter))
    z3 = big_x[2]
    residual = s - (z1 * z1 + z2 * z2 + z3 * z3)
    return CoordinateChange(z1=z1, z2=z2, z3=z3, residual=residual)
