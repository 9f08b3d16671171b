"""Schur polynomials via the Jacobi-Trudi determinant, and the degenerate
genus-3 sigma polynomial obtained from the staircase partition (3, 2, 1).

The building blocks p_n are defined by exp(sum_n T_n k^n) = sum_n p_n(T) k^n
and computed through the derivative recurrence n*p_n = sum_m m*T_m*p_{n-m}.
With deg T_i = -i, p_n is homogeneous of degree -n and S_lambda of degree
-|lambda|.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence

from .poly import MultiPoly
from .scalars import Rational

U_VARS = ("u1", "u2", "u3")


def t_alphabet(n: int) -> tuple:
    return tuple(f"T{i}" for i in range(1, n + 1))


def pn_sequence(n_max: int) -> list:
    """p_0 .. p_n_max as polynomials in T1..T{n_max}."""
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    vars = t_alphabet(n_max)
    ps = [MultiPoly.const(vars, Rational(1))]
    for n in range(1, n_max + 1):
        acc = MultiPoly.zero(vars)
        for m in range(1, n + 1):
            acc = acc + ps[n - m].scale(Rational(m)) * MultiPoly.variable(vars, f"T{m}")
        ps.append(acc.scale(Rational(1, n)))
    return ps


def check_partition(parts: Sequence[int]) -> tuple:
    parts = tuple(parts)
    if not parts:
        raise ValueError("empty partition")
    for i, p in enumerate(parts):
        if p < 1:
            raise ValueError("partition parts must be positive")
        if i and parts[i - 1] < p:
            raise ValueError("partition parts must be weakly decreasing")
    return parts


def _det(rows: list) -> MultiPoly:
    # cofactor expansion; matrices here are at most 3x3
    n = len(rows)
    if n == 1:
        return rows[0][0]
    vars = rows[0][0].vars
    acc = MultiPoly.zero(vars)
    for j in range(n):
        sub = [[row[c] for c in range(n) if c != j] for row in rows[1:]]
        term = rows[0][j] * _det(sub)
        acc = acc + term if j % 2 == 0 else acc - term
    return acc


def schur_poly(parts: Sequence[int]) -> MultiPoly:
    """Jacobi-Trudi determinant det(p_{lambda_i - i + j}) over T1..T_{lambda_1 + l - 1}."""
    parts = check_partition(parts)
    l = len(parts)
    n_max = parts[0] + l - 1
    ps = pn_sequence(n_max)
    vars = t_alphabet(n_max)
    zero = MultiPoly.zero(vars)

    def p(n: int) -> MultiPoly:
        return ps[n] if 0 <= n <= n_max else zero

    rows = [[p(parts[i] - (i + 1) + (j + 1)) for j in range(l)] for i in range(l)]
    return _det(rows)


@lru_cache(maxsize=1)
def degenerate_sigma() -> MultiPoly:
    """The genus-3 sigma polynomial at the fully degenerate point:
    S = u1*u3 - u2^2 - u1^3*u2/3 + u1^6/45, the staircase Schur polynomial
    under T1 -> u1, T3 -> u2, T5 -> u3.  Weight-homogeneous of weight -6 and
    even under u -> -u."""
    s = schur_poly((3, 2, 1))
    for name in ("T2", "T4"):
        if s.max_exponent(name):
            raise AssertionError("staircase Schur polynomial must not involve even T variables")
    bindings = {
        "T1": MultiPoly.variable(U_VARS, "u1"),
        "T3": MultiPoly.variable(U_VARS, "u2"),
        "T5": MultiPoly.variable(U_VARS, "u3"),
    }
    return s.substitute(bindings, U_VARS)
