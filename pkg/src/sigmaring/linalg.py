"""Exact rank computations for rational matrices.

Two exact routes are provided:

* bareiss_rank - dense fraction-free Gaussian elimination on an integer
  matrix obtained by clearing row denominators (rank is invariant under row
  scaling).  Intended for the moderate dense matrices of basis certification.
* sparse_rank - ordinary exact elimination on rows stored as sparse dicts,
  picking sparse pivot rows first.  Intended for larger, very sparse maps.

For the graded complex checks there is additionally modp_rank, a fast
elimination over a word-sized prime field.  A mod-p rank is always a lower
bound for the rational rank, which the callers combine with exact dimension
identities to obtain exact certificates; they fall back to sparse_rank when
the bound is not tight.
"""

from __future__ import annotations

from math import gcd

import numpy as np

from .scalars import Rational

_PRIMES = (2147483629, 2147483587, 2147483563, 2147483549)


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


def bareiss_rank(rows) -> int:
    """Exact rank via fraction-free elimination.

    Accepts rows of rationals or ints; rows are copied and scaled to integers
    first, so inputs are never mutated.
    """
    m = []
    for row in rows:
        den = 1
        for c in row:
            den = _lcm(den, int(c.denominator) if hasattr(c, "denominator") else 1)
        m.append([int(c * den) if den > 1 else int(c) for c in row])
    if not m or not m[0]:
        return 0
    n_rows, n_cols = len(m), len(m[0])
    rank = 0
    prev = 1
    row = 0
    for col in range(n_cols):
        piv = None
        for r in range(row, n_rows):
            if m[r][col]:
                piv = r
                break
        if piv is None:
            continue
        if piv != row:
            m[row], m[piv] = m[piv], m[row]
        pivot = m[row][col]
        for r in range(row + 1, n_rows):
            mr = m[r]
            mrow = m[row]
            f = mr[col]
            if f:
                for c in range(col, n_cols):
                    mr[c] = (mr[c] * pivot - f * mrow[c]) // prev
            elif prev != 1:
                for c in range(col, n_cols):
                    mr[c] = mr[c] * pivot // prev
            else:
                for c in range(col, n_cols):
                    mr[c] = mr[c] * pivot
        prev = pivot
        rank += 1
        row += 1
        if row == n_rows:
            break
    return rank


def sparse_rank(rows) -> int:
    """Exact rank of rows given as {column_key: rational} dicts."""
    work = [dict(r) for r in rows if r]
    rank = 0
    while work:
        work.sort(key=len)
        piv_row = work.pop(0)
        col = min(piv_row)  # any deterministic choice works for rank
        pc = piv_row[col]
        rank += 1
        nxt = []
        for r in work:
            f = r.get(col)
            if f is not None:
                scale = f / pc
                for c, v in piv_row.items():
                    v2 = r.get(c)
                    v2 = -scale * v if v2 is None else v2 - scale * v
                    if v2:
                        r[c] = v2
                    elif c in r:
                        del r[c]
            if r:
                nxt.append(r)
        work = nxt
    return rank


def modp_rank(rows, n_cols: int, col_index, p: int = _PRIMES[0]) -> int:
    """Rank over GF(p) of sparse rational rows; lower bound for the exact rank.

    col_index maps column keys to 0..n_cols-1.  Raises ValueError if a
    denominator vanishes mod p (caller retries with another prime).
    """
    if not rows or n_cols == 0:
        return 0
    a = np.zeros((len(rows), n_cols), dtype=np.int64)
    for i, r in enumerate(rows):
        for c, v in r.items():
            num = int(v.numerator) % p
            den = int(v.denominator) % p
            if den == 0:
                raise ValueError("prime divides a denominator")
            a[i, col_index[c]] = num * pow(den, -1, p) % p
    rank = 0
    row = 0
    n_rows = len(rows)
    for col in range(n_cols):
        piv = None
        for r in range(row, n_rows):
            if a[r, col]:
                piv = r
                break
        if piv is None:
            continue
        if piv != row:
            a[[row, piv]] = a[[piv, row]]
        inv = pow(int(a[row, col]), -1, p)
        a[row, col:] = a[row, col:] * inv % p
        mask = a[row + 1:, col] != 0
        if mask.any():
            factors = a[row + 1:, col][mask]
            a[row + 1:, col:][mask] = (a[row + 1:, col:][mask] - factors[:, None] * a[row, col:]) % p
        rank += 1
        row += 1
        if row == n_rows:
            break
    return rank


def modp_rank_retry(rows, n_cols: int, col_index) -> int:
    for p in _PRIMES:
        try:
            return modp_rank(rows, n_cols, col_index, p)
        except ValueError:
            continue
    # absurdly unlikely with word-sized primes; fall back to exact
    return sparse_rank(rows)
