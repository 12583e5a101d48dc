"""Exact linear algebra over the rationals.

Rank and determinant use fraction-free (Bareiss) elimination on integer
matrices; rational inputs are scaled row-wise to integers first.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

Number = int | Fraction


def _integer_rows(rows: Sequence[Sequence[Number]]) -> list[list[int]]:
    out = []
    for row in rows:
        den = lcm(*(Fraction(x).denominator for x in row)) if row else 1
        out.append([int(Fraction(x) * den) for x in row])
    return out


def _bareiss(a: list[list[int]]) -> tuple[int, int]:
    """Reduce ``a`` in place to echelon form; return ``(rank, sign)``.

    After elimination the last pivot equals the determinant up to ``sign``
    when the matrix is square and nonsingular.
    """
    nrows = len(a)
    ncols = len(a[0]) if a else 0
    prev = 1
    rank = 0
    sign = 1
    for col in range(ncols):
        if rank == nrows:
            break
        piv = next((i for i in range(rank, nrows) if a[i][col]), None)
        if piv is None:
            continue
        if piv != rank:
            a[piv], a[rank] = a[rank], a[piv]
            sign = -sign
        p = a[rank][col]
        for i in range(rank + 1, nrows):
            f = a[i][col]
            row_i = a[i]
            row_r = a[rank]
            for j in range(col + 1, ncols):
                row_i[j] = (p * row_i[j] - f * row_r[j]) // prev
            row_i[col] = 0
        prev = p
        rank += 1
    return rank, sign


_CERT_PRIME = (1 << 61) - 1


def rank_mod_p(rows: Sequence[Sequence[int]], p: int) -> int:
    a = [[x % p for x in row] for row in rows]
    nrows = len(a)
    ncols = len(a[0]) if a else 0
    rk = 0
    for col in range(ncols):
        if rk == nrows:
            break
        piv = next((i for i in range(rk, nrows) if a[i][col]), None)
        if piv is None:
            continue
        a[piv], a[rk] = a[rk], a[piv]
        inv = pow(a[rk][col], -1, p)
        prow = [x * inv % p for x in a[rk]]
        a[rk] = prow
        for i in range(rk + 1, nrows):
            f = a[i][col]
            if f:
                a[i] = [(x - f * y) % p for x, y in zip(a[i], prow)]
        rk += 1
    return rk


def rank(rows: Sequence[Sequence[Number]]) -> int:
    if not rows:
        return 0
    a = _integer_rows(rows)
    # rank mod p never exceeds the rational rank, so a maximal value is exact
    if rank_mod_p(a, _CERT_PRIME) == min(len(a), len(a[0])):
        return min(len(a), len(a[0]))
    r, _ = _bareiss(a)
    return r


def det(rows: Sequence[Sequence[int]]) -> int:
    n = len(rows)
    if any(len(row) != n for row in rows):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    a = [[int(x) for x in row] for row in rows]
    r, sign = _bareiss(a)
    if r < n:
        return 0
    return sign * a[n - 1][n - 1]


def solve(a: Sequence[Sequence[Number]], b: Sequence[Number]) -> list[Fraction] | None:
    """Solve ``a x = b`` exactly for a matrix of full column rank.

    Returns ``None`` when the system is inconsistent.  Overdetermined systems
    are fine as long as they are consistent.
    """
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    m = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(a, b)]
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, nrows) if m[i][col]), None)
        if piv is None:
            raise ValueError("matrix does not have full column rank")
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][col]
        m[r] = [x * inv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][col]:
                f = m[i][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
    if any(m[i][ncols] for i in range(r, nrows)):
        return None
    return [m[i][ncols] for i in range(ncols)]


def nullity(rows: Sequence[Sequence[Number]], ncols: int) -> int:
    return ncols - rank(rows) if rows else ncols
