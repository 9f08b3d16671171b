"""Sparse multivariate polynomials with exact coefficients.

Representation: a polynomial carries an ordered variable alphabet, e.g.
("u1", "u2", "u3"), and a dict mapping exponent tuples to nonzero scalar
coefficients.  u1**3*u2 over the u-alphabet is {(3, 1, 0): 1}.  The zero
polynomial has an empty dict.  Values are immutable by convention: no method
mutates self, and term dicts are never shared with callers.

Monomial order: lexicographic with the *last* alphabet variable most
significant (u3 > u2 > u1, T5 > ... > T1, and v3 > ... > v1 > u3 > ... > u1
for the combined alphabet).  Under this order the leading monomial of the
degenerate sigma polynomial is u1*u3, which makes remainder-by-sigma a
divisibility test (see divrem).

Weights: u_i and v_i carry weight -(2i-1), T_i carries weight -i.  Weights of
monomials add; differentiation by u_i raises the weight by 2i-1.
"""

from __future__ import annotations

import re
from typing import Iterable, Mapping

from .scalars import Rational, format_rational

_WEIGHT_PATTERN = re.compile(r"^([uvT])(\d+)$")


def variable_weight(name: str) -> int:
    """Weight of a single variable; raises for unweighted alphabets (x, q)."""
    m = _WEIGHT_PATTERN.match(name)
    if not m:
        raise ValueError(f"variable {name!r} has no assigned weight")
    kind, idx = m.group(1), int(m.group(2))
    if kind == "T":
        return -idx
    return -(2 * idx - 1)


def monomial_key(exps: tuple) -> tuple:
    """Sort key realising the monomial order (bigger key = bigger monomial)."""
    return exps[::-1]


class MultiPoly:
    __slots__ = ("vars", "terms")

    def __init__(self, vars: tuple, terms: Mapping):
        object.__setattr__(self, "vars", tuple(vars))
        object.__setattr__(self, "terms", {e: c for e, c in terms.items() if c})

    def __setattr__(self, name, value):
        raise AttributeError("MultiPoly is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, vars: tuple) -> "MultiPoly":
        return cls(vars, {})

    @classmethod
    def const(cls, vars: tuple, c) -> "MultiPoly":
        return cls(vars, {(0,) * len(vars): c})

    @classmethod
    def variable(cls, vars: tuple, name: str) -> "MultiPoly":
        exps = [0] * len(vars)
        exps[tuple(vars).index(name)] = 1
        return cls(vars, {tuple(exps): Rational(1)})

    @classmethod
    def from_terms(cls, vars: tuple, items: Iterable) -> "MultiPoly":
        acc = {}
        for exps, c in items:
            exps = tuple(exps)
            c0 = acc.get(exps)
            acc[exps] = c if c0 is None else c0 + c
        return cls(vars, acc)

    # -- basic queries ------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def constant_term(self):
        return self.terms.get((0,) * len(self.vars), Rational(0))

    def leading_monomial(self) -> tuple:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms, key=monomial_key)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def max_exponent(self, name: str) -> int:
        i = self.vars.index(name)
        return max((e[i] for e in self.terms), default=0)

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    # -- ring operations ----------------------------------------------------

    def _check_compatible(self, other: "MultiPoly"):
        if self.vars != other.vars:
            raise ValueError(f"alphabet mismatch: {self.vars} vs {other.vars}")

    def __add__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        self._check_compatible(other)
        acc = dict(self.terms)
        for e, c in other.terms.items():
            c0 = acc.get(e)
            acc[e] = c if c0 is None else c0 + c
        return MultiPoly(self.vars, acc)

    def __sub__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        self._check_compatible(other)
        acc = dict(self.terms)
        for e, c in other.terms.items():
            c0 = acc.get(e)
            acc[e] = -c if c0 is None else c0 - c
        return MultiPoly(self.vars, acc)

    def __neg__(self):
        return MultiPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            return self.scale(other)
        self._check_compatible(other)
        acc = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                c0 = acc.get(e)
                acc[e] = c if c0 is None else c0 + c
        return MultiPoly(self.vars, acc)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c) -> "MultiPoly":
        if not c:
            return MultiPoly.zero(self.vars)
        return MultiPoly(self.vars, {e: c * cf for e, cf in self.terms.items()})

    def __pow__(self, n: int) -> "MultiPoly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        out = MultiPoly.const(self.vars, Rational(1))
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def map_coefficients(self, f) -> "MultiPoly":
        return MultiPoly(self.vars, {e: f(c) for e, c in self.terms.items()})

    # -- calculus -----------------------------------------------------------

    def derive(self, name: str) -> "MultiPoly":
        """Formal partial derivative with respect to one variable."""
        try:
            i = self.vars.index(name)
        except ValueError:
            raise ValueError(f"unknown variable {name!r} in alphabet {self.vars}")
        acc = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            e2 = e[:i] + (e[i] - 1,) + e[i + 1:]
            c2 = c * e[i]
            c0 = acc.get(e2)
            acc[e2] = c2 if c0 is None else c0 + c2
        return MultiPoly(self.vars, acc)

    def substitute(self, bindings: Mapping[str, "MultiPoly"], target_vars: tuple) -> "MultiPoly":
        """Exact composition: replace each occurring variable by a polynomial.

        Every variable that actually occurs in self must appear in bindings,
        and all binding values must live on target_vars.
        """
        target_vars = tuple(target_vars)
        images = {}
        for name, value in bindings.items():
            if name not in self.vars:
                raise ValueError(f"binding for {name!r} not in alphabet {self.vars}")
            if value.vars != target_vars:
                raise ValueError("binding value on wrong alphabet")
            images[self.vars.index(name)] = value
        occurring = set()
        for e in self.terms:
            for i, a in enumerate(e):
                if a:
                    occurring.add(i)
        missing = [self.vars[i] for i in occurring if i not in images]
        if missing:
            raise ValueError(f"no binding for occurring variables {missing}")

        power_cache = {i: {0: MultiPoly.const(target_vars, Rational(1))} for i in images}

        def power(i, n):
            cache = power_cache[i]
            if n not in cache:
                cache[n] = cache[n - 1] * images[i] if n - 1 in cache else power(i, n - 1) * images[i]
            return cache[n]

        out = MultiPoly.zero(target_vars)
        for e, c in self.terms.items():
            term = MultiPoly.const(target_vars, c)
            for i, a in enumerate(e):
                if a:
                    term = term * power(i, a)
            out = out + term
        return out

    # -- division and grading -------------------------------------------------

    def divrem(self, d: "MultiPoly"):
        """Division with remainder by a single divisor.

        Returns (q, r) with self == q*d + r and no monomial of r divisible by
        the leading monomial of d.  When the leading monomial of d divides
        every multiple of d (as with the degenerate sigma polynomial, whose
        leading monomial u1*u3 is a true factor of the leading monomial of any
        multiple), r == 0 is equivalent to divisibility by d.
        """
        self._check_compatible(d)
        if d.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        lead = d.leading_monomial()
        lc = d.terms[lead]
        work = dict(self.terms)
        q: dict = {}
        r: dict = {}
        while work:
            m = max(work, key=monomial_key)
            c = work.pop(m)
            if all(a >= b for a, b in zip(m, lead)):
                t = tuple(a - b for a, b in zip(m, lead))
                cf = c / lc
                q0 = q.get(t)
                q[t] = cf if q0 is None else q0 + cf
                for e2, c2 in d.terms.items():
                    if e2 == lead:
                        continue
                    e = tuple(a + b for a, b in zip(t, e2))
                    delta = cf * c2
                    c0 = work.get(e)
                    cnew = -delta if c0 is None else c0 - delta
                    if cnew:
                        work[e] = cnew
                    elif c0 is not None:
                        del work[e]
            else:
                r[m] = c
        return MultiPoly(self.vars, q), MultiPoly(self.vars, r)

    def monomial_weight(self, exps: tuple) -> int:
        return sum(a * variable_weight(v) for v, a in zip(self.vars, exps) if a)

    def weight_split(self) -> dict:
        """Decompose into weight-homogeneous components, keyed by weight."""
        parts: dict = {}
        for e, c in self.terms.items():
            parts.setdefault(self.monomial_weight(e), {})[e] = c
        return {w: MultiPoly(self.vars, t) for w, t in sorted(parts.items())}

    def weight(self) -> int:
        """Weight of a weight-homogeneous polynomial (0 for the zero poly)."""
        w = None
        for e in self.terms:
            we = self.monomial_weight(e)
            if w is None:
                w = we
            elif we != w:
                raise ValueError("polynomial is not weight-homogeneous")
        return 0 if w is None else w

    def is_homogeneous(self) -> bool:
        try:
            self.weight()
            return True
        except ValueError:
            return False

    # -- canonical text -------------------------------------------------------

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"MultiPoly({self.vars!r}, {format_poly(self)!r})"


def format_poly(p: MultiPoly) -> str:
    """Canonical serialization: terms sorted by descending monomial order,
    each rendered as "coef * v1^a v2^b" and joined with " + "."""
    if p.is_zero():
        return "0"
    frags = []
    for e in sorted(p.terms, key=monomial_key, reverse=True):
        c = p.terms[e]
        powers = " ".join(f"{v}^{a}" for v, a in zip(p.vars, e) if a)
        if powers:
            frags.append(f"{format_rational(c)} * {powers}")
        else:
            frags.append(format_rational(c))
    return " + ".join(frags)
