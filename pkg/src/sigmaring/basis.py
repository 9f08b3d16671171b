"""Enumeration and exact rank certification of the graded basis families.

The basis of the degenerate ring is drawn from four families of derivative
words applied to generators:

    1                                   (grade 0)
    zeta_{1^a1 2^a2 3^a3}               (a1 + a2 + a3 >= 2)
    (12;12), (12;13), (12;23)           derived by d1, d2 only
    (13;13), (13;23), (23;23)           derived by d1, d2, d3
    (123;123)                           derived by d1, d2, d3

The grade of a word (a1, a2, a3) on a generator of grade g0 is
g0 + a1 + 3*a2 + 5*a3, with g0 = 0 for 1, 0 for zeta (the word supplies the
whole grade), and 2*sum(i_k + j_k - 1) for a minor (I; J).  The d3-derivative
restriction on the (12;*) minors is what the curl-type rewriting
    d3 (12;ij) = d2 (13;ij) - d1 (23;ij)
eliminates; rank_check certifies that each graded family is linearly
independent with exactly the multiplicity predicted by the character series.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass

from . import ring
from .qchar import character_series


@dataclass(frozen=True)
class BasisDescriptor:
    kind: str  # "one" | "zeta" | "minor2" | "minor3"
    pair: tuple | None  # ((i1, i2), (j1, j2)) for minors, None otherwise
    derivs: tuple  # (a1, a2, a3)

    def __post_init__(self):
        if self.kind not in ("one", "zeta", "minor2", "minor3"):
            raise ValueError(f"unknown descriptor kind {self.kind!r}")
        if self.kind == "zeta" and sum(self.derivs) < 2:
            raise ValueError("zeta descriptors need word length >= 2")
        if self.kind == "minor2" and self.pair in _NO_D3_PAIRS and self.derivs[2]:
            raise ValueError(f"(12;*) minors carry no d3 derivatives: {self}")

    def grade(self) -> int:
        a1, a2, a3 = self.derivs
        return _base_grade(self.kind, self.pair) + a1 + 3 * a2 + 5 * a3

    def label(self) -> str:
        word = "".join(
            str(i + 1) * a for i, a in enumerate(self.derivs) if a
        )
        if self.kind == "one":
            return "1"
        if self.kind == "zeta":
            return f"zeta_{word}"
        I, J = self.pair
        name = f"({''.join(map(str, I))};{''.join(map(str, J))})"
        return f"{name}_{word}" if word else name


MINOR2_PAIRS = (
    ((1, 2), (1, 2)),
    ((1, 2), (1, 3)),
    ((1, 2), (2, 3)),
    ((1, 3), (1, 3)),
    ((1, 3), (2, 3)),
    ((2, 3), (2, 3)),
)
_NO_D3_PAIRS = set(MINOR2_PAIRS[:3])
_MINOR3_PAIR = ((1, 2, 3), (1, 2, 3))


def _base_grade(kind: str, pair) -> int:
    if kind in ("one", "zeta"):
        return 0
    I, J = pair
    return 2 * sum(i + j - 1 for i, j in zip(I, J))


def _words_of_grade(n: int, use_d3: bool):
    """Exponent triples (a1, a2, a3) with a1 + 3*a2 + 5*a3 == n, a3 == 0 when
    d3 is disallowed; descending lexicographic order for stable reports."""
    out = []
    for a3 in range(n // 5, -1, -1) if use_d3 else (0,):
        rest = n - 5 * a3
        for a2 in range(rest // 3, -1, -1):
            out.append((rest - 3 * a2, a2, a3))
    return sorted(out, reverse=True)


def enumerate_kp_basis(n: int) -> list:
    """All basis descriptors of grade n, in family order then descending
    lexicographic derivative order."""
    if n < 0:
        return []
    out = []
    if n == 0:
        out.append(BasisDescriptor("one", None, (0, 0, 0)))
    for word in _words_of_grade(n, use_d3=True):
        if sum(word) >= 2:
            out.append(BasisDescriptor("zeta", None, word))
    for pair in MINOR2_PAIRS:
        base = _base_grade("minor2", pair)
        if base > n:
            continue
        use_d3 = pair not in _NO_D3_PAIRS
        for word in _words_of_grade(n - base, use_d3):
            out.append(BasisDescriptor("minor2", pair, word))
    base = _base_grade("minor3", _MINOR3_PAIR)
    if base <= n:
        for word in _words_of_grade(n - base, use_d3=True):
            out.append(BasisDescriptor("minor3", _MINOR3_PAIR, word))
    return out


_realize_cache: dict = {}
_realize_lock = threading.Lock()


def realize(d: BasisDescriptor) -> "ring.SigmaElement":
    """The ring element a descriptor denotes."""
    if d.kind == "one":
        return ring.ONE_ELEMENT.derive_word(d.derivs)
    if d.kind == "zeta":
        return ring.zeta_counts(d.derivs)
    return derived_minor(d.pair[0], d.pair[1], d.derivs)


def derived_minor(I, J, derivs) -> "ring.SigmaElement":
    """d1^a1 d2^a2 d3^a3 applied to minor(I, J), cached across calls."""
    key = (tuple(I), tuple(J), tuple(derivs))
    with _realize_lock:
        e = _realize_cache.get(key)
    if e is not None:
        return e
    if sum(derivs) == 0:
        e = ring.minor(I, J)
    else:
        i = max(j for j in (1, 2, 3) if derivs[j - 1] > 0)
        lower = list(derivs)
        lower[i - 1] -= 1
        e = derived_minor(I, J, tuple(lower)).derive(i)
    with _realize_lock:
        _realize_cache[key] = e
    return e


def _canonical_pair(I, J):
    """Sort row/column indices and normalise (I;J) == (J;I); returns
    (sign, pair) with sign 0 when a repeated index kills the minor."""
    sign = 1
    I, J = list(I), list(J)
    for lst in (I, J):
        if lst[0] == lst[1]:
            return 0, None
        if lst[0] > lst[1]:
            lst[0], lst[1] = lst[1], lst[0]
            sign = -sign
    I, J = tuple(I), tuple(J)
    if (I, J) not in MINOR2_PAIRS:
        I, J = J, I
    return sign, (I, J)


def rewrite_u3_derivative(i: int, j: int, word) -> list:
    """Eliminate d3-derivatives from (12;ij)_{word} using
    d3 (12;ij) = d2 (13;ij) - d1 (23;ij); returns [(coefficient, descriptor)]
    with no d3 on any (12;*) term."""
    pair = ((1, 2), tuple(sorted((i, j))))
    if pair not in _NO_D3_PAIRS:
        raise ValueError(f"rewriting applies to the (12;*) minors, not {pair}")
    word = tuple(word)
    if word[2] < 1:
        raise ValueError("word carries no d3 derivative")
    out: dict = {}
    a1, a2, a3 = word
    for sign0, rows, bump in ((1, (1, 3), (a1, a2 + 1, a3 - 1)), (-1, (2, 3), (a1 + 1, a2, a3 - 1))):
        s, p = _canonical_pair(rows, (i, j))
        if s == 0:
            continue
        coeff = sign0 * s
        for c2, d2 in _expand_minor_word(p, bump):
            d_prev = out.get(d2, 0)
            out[d2] = d_prev + coeff * c2
    return [(c, d) for d, c in out.items() if c]


def _expand_minor_word(pair, word) -> list:
    """(coefficient, descriptor) terms for pair_{word} with (12;*) d3-words
    recursively rewritten away."""
    if pair in _NO_D3_PAIRS and word[2] > 0:
        i, j = pair[1]
        return rewrite_u3_derivative(i, j, word)
    return [(1, BasisDescriptor("minor2", pair, tuple(word)))]


def realize_combination(terms) -> "ring.SigmaElement":
    acc = ring.ZERO_ELEMENT
    for c, d in terms:
        acc = acc + realize(d).scale(c)
    return acc


@dataclass(frozen=True)
class RankReport:
    degree: int
    count: int
    rank: int
    expected: int

    @property
    def passed(self) -> bool:
        return self.rank == self.count == self.expected


_char_cache: dict = {}


def character_coefficient(n: int) -> int:
    order = max(64, n)
    if order not in _char_cache:
        _char_cache[order] = character_series(order).integer_coefficients()
    return _char_cache[order][n]


def rank_check(n: int) -> RankReport:
    """Realize every grade-n descriptor and certify exact linear independence
    against the character coefficient."""
    descriptors = enumerate_kp_basis(n)
    elems = [realize(d) for d in descriptors]
    rank = ring.element_rank(elems) if elems else 0
    return RankReport(
        degree=n,
        count=len(descriptors),
        rank=rank,
        expected=character_coefficient(n),
    )
