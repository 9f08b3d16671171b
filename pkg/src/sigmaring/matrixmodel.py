"""The 2x2 matrix realisation of the degenerate affine variety.

L(x) = [[a(x), b(x)], [c(x), -a(x)]] with

    a(x) = a3 x^2 + a5 x + a7          a_{2j+1} = wp_{11j}
    b(x) = x^3 + b2 x^2 + b4 x + b6    b_{2i}   = -wp_{1i}, b0 = 1
    c(x) = 4 x^4 + c2 x^3 + ... + c8   c0 = 4, c2..c8 derived

and the determinant identity -det L(x) = a(x)^2 + b(x) c(x) = 4 x^7.  The
c-coefficients are obtained by exact long division of 4x^7 - a(x)^2 by the
monic b(x); a nonzero remainder would signal a broken build.

The invariant vector fields D_l act on the coordinates through quadratic
formulas whose sums run over pairs (i, j) with i + j = k + l - 1 and
j <= min(k, l) - 1, j down to -1 so that the constant coefficients b0 = 1 and
c0 = 4 participate; coefficients outside their defining ranges are zero.
On every generator D_l agrees with -1/2 d_l, which the apply_Dl/derive pair
makes an exact, checkable statement.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .ring import ONE_ELEMENT, SigmaElement, ZERO_ELEMENT, const_element, wp
from .scalars import Rational

GENERATOR_NAMES = ("a3", "a5", "a7", "b2", "b4", "b6", "c2", "c4", "c6", "c8")


def _x_mul(p: list, q: list) -> list:
    out = [ZERO_ELEMENT] * (len(p) + len(q) - 1)
    for i, pi in enumerate(p):
        if pi.is_zero():
            continue
        for j, qj in enumerate(q):
            out[i + j] = out[i + j] + pi * qj
    return out


def _x_sub(p: list, q: list) -> list:
    n = max(len(p), len(q))
    out = []
    for i in range(n):
        pi = p[i] if i < len(p) else ZERO_ELEMENT
        qi = q[i] if i < len(q) else ZERO_ELEMENT
        out.append(pi - qi)
    return out


def _x_divmod_monic(p: list, d: list):
    """Long division by a monic divisor; coefficients index powers of x."""
    assert d[-1] == ONE_ELEMENT
    rem = list(p)
    deg_d = len(d) - 1
    quo = [ZERO_ELEMENT] * max(len(p) - deg_d, 1)
    for top in range(len(rem) - 1, deg_d - 1, -1):
        coef = rem[top]
        if coef.is_zero():
            continue
        quo[top - deg_d] = coef
        for i, di in enumerate(d):
            rem[top - deg_d + i] = rem[top - deg_d + i] - coef * di
    while len(rem) > 1 and rem[-1].is_zero():
        rem.pop()
    return quo, rem


@dataclass(frozen=True)
class LMatrix:
    a: tuple  # (a7, a5, a3) by increasing power of x
    b: tuple  # (b6, b4, b2, 1)
    c: tuple | None  # (c8, c6, c4, c2, 4) once derived

    def minus_det(self) -> list:
        """a(x)^2 + b(x) c(x) as coefficients by power of x."""
        if self.c is None:
            raise ValueError("c(x) has not been derived yet")
        return _x_sub(_x_mul(list(self.a), list(self.a)),
                      [e.scale(-1) for e in _x_mul(list(self.b), list(self.c))])


class RemainderError(RuntimeError):
    """Exact division of 4x^7 - a(x)^2 by b(x) left a remainder."""


def build_L() -> LMatrix:
    """Assemble a(x), b(x) from the logarithmic-derivative dictionary."""
    a = (wp(1, 1, 3), wp(1, 1, 2), wp(1, 1, 1))
    b = (-wp(1, 3), -wp(1, 2), -wp(1, 1), ONE_ELEMENT)
    return LMatrix(a=a, b=b, c=None)


def derive_c(L: LMatrix) -> LMatrix:
    """Fill c(x) = (4x^7 - a(x)^2) / b(x) by exact division."""
    num = [ZERO_ELEMENT] * 8
    num[7] = const_element(4)
    num = _x_sub(num, _x_mul(list(L.a), list(L.a)))
    quo, rem = _x_divmod_monic(num, list(L.b))
    if any(not e.is_zero() for e in rem):
        raise RemainderError(f"nonzero remainder: {[str(e) for e in rem]}")
    if len(quo) != 5 or quo[4] != const_element(4):
        raise RemainderError("leading coefficient of c(x) is not 4")
    return LMatrix(a=L.a, b=L.b, c=tuple(quo))


@lru_cache(maxsize=1)
def full_L() -> LMatrix:
    return derive_c(build_L())


def generator(L: LMatrix, name: str) -> SigmaElement:
    family, idx = name[0], int(name[1:])
    if family == "a":
        return L.a[(7 - idx) // 2]
    if family == "b":
        return L.b[(6 - idx) // 2]
    if family == "c":
        if L.c is None:
            raise ValueError("c(x) has not been derived yet")
        return L.c[(8 - idx) // 2]
    raise ValueError(f"unknown generator {name!r}")


def _a_coeff(L: LMatrix, i: int) -> SigmaElement:
    # a_{2i+1}; a1 = 0, indices outside 0..3 vanish
    if 1 <= i <= 3:
        return L.a[3 - i]
    return ZERO_ELEMENT


def _b_coeff(L: LMatrix, i: int) -> SigmaElement:
    # b_{2i}; b0 = 1, indices outside 0..3 vanish
    if 0 <= i <= 3:
        return L.b[3 - i]
    return ZERO_ELEMENT


def _c_coeff(L: LMatrix, i: int) -> SigmaElement:
    # c_{2i}; c0 = 4, indices outside 0..4 vanish
    if 0 <= i <= 4:
        return L.c[4 - i]
    return ZERO_ELEMENT


def _index_pairs(k: int, l: int):
    # i + j = k + l - 1, i >= max(k, l), j <= min(k, l) - 1; j = -1 reaches
    # the constant coefficients
    for j in range(-1, min(k, l)):
        yield k + l - 1 - j, j


def apply_Dl(l: int, name: str, L: LMatrix | None = None) -> SigmaElement:
    """Right-hand side of the invariant vector field D_l on one generator."""
    if l not in (1, 2, 3):
        raise ValueError("l must be 1, 2 or 3")
    if name not in GENERATOR_NAMES:
        raise ValueError(f"unknown generator {name!r}")
    if L is None:
        L = full_L()
    family, idx = name[0], int(name[1:])
    half = Rational(1, 2)
    quarter = Rational(1, 4)
    if family == "a":
        k = (idx - 1) // 2
        acc = ZERO_ELEMENT
        for i, j in _index_pairs(k, l):
            acc = acc + (_b_coeff(L, i) * _c_coeff(L, j + 1)
                         - _b_coeff(L, j) * _c_coeff(L, i + 1))
        return acc.scale(quarter) - _b_coeff(L, k) * _b_coeff(L, l)
    if family == "b":
        k = idx // 2
        acc = ZERO_ELEMENT
        for i, j in _index_pairs(k, l):
            acc = acc + (_a_coeff(L, i) * _b_coeff(L, j)
                         - _a_coeff(L, j) * _b_coeff(L, i))
        return acc.scale(half)
    k = (idx - 2) // 2
    acc = ZERO_ELEMENT
    for i, j in _index_pairs(k, l):
        acc = acc + (_c_coeff(L, i + 1) * _a_coeff(L, j)
                     - _c_coeff(L, j + 1) * _a_coeff(L, i))
    return acc.scale(half) + (_b_coeff(L, l) * _a_coeff(L, k)).scale(2)


def vector_field_matches(l: int, name: str, L: LMatrix | None = None) -> bool:
    """D_l == -1/2 d_l on the named generator, as exact element equality."""
    if L is None:
        L = full_L()
    return apply_Dl(l, name, L) == generator(L, name).derive(l).scale(Rational(-1, 2))


def minus_det_is_4x7(L: LMatrix | None = None) -> bool:
    if L is None:
        L = full_L()
    coeffs = L.minus_det()
    for i, e in enumerate(coeffs):
        want = const_element(4) if i == 7 else ZERO_ELEMENT
        if e != want:
            return False
    return len(coeffs) == 8
