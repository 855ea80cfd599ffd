"""Exact linear algebra over Q (and any field whose elements support + - * /).

Everything here is pure Python.  Integer inputs are promoted to Fraction so
that no floating point ever enters a computation.
"""
from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Sequence


def _lift(x):
    if isinstance(x, int):
        return Fraction(x)
    return x


def _is_zero(x) -> bool:
    return x == 0


def rref(rows: Sequence[Sequence]) -> tuple[list[list], list[int]]:
    """Reduced row echelon form.  Returns (matrix, pivot columns)."""
    m = [[_lift(x) for x in r] for r in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        p = None
        for i in range(r, len(m)):
            if not _is_zero(m[i][c]):
                p = i
                break
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and not _is_zero(m[i][c]):
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows: Sequence[Sequence]) -> int:
    if not rows:
        return 0
    if all(isinstance(x, int) for r in rows for x in r):
        return int_rank(rows)
    return len(rref(rows)[1])


def int_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank of an integer matrix by fraction-free elimination."""
    m = [list(r) for r in rows]
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        pr = m[r]
        a = pr[c]
        for i in range(r + 1, len(m)):
            b = m[i][c]
            if b:
                m[i] = [a * x - b * y for x, y in zip(m[i], pr)]
        r += 1
        if r == len(m):
            break
    return r


def nullspace(rows: Sequence[Sequence], ncols: int | None = None) -> list[list]:
    """Basis of the right kernel {x : A x = 0}."""
    if not rows:
        n = ncols or 0
        return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    m, piv = rref(rows)
    n = len(m[0])
    free = [c for c in range(n) if c not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for i, pc in enumerate(piv):
            v[pc] = -m[i][f]
        basis.append(v)
    return basis


def solve(A: Sequence[Sequence], b: Sequence):
    """A solution x of A x = b, or None when inconsistent.

    If the system is underdetermined the free variables are set to zero.
    """
    aug = [list(r) + [bi] for r, bi in zip(A, b)]
    n = len(A[0])
    m, piv = rref(aug)
    if n in piv:
        return None
    x = [Fraction(0)] * n
    for i, pc in enumerate(piv):
        x[pc] = m[i][n]
    return x


def det(A: Sequence[Sequence]):
    """Determinant.  Integer matrices use Bareiss and stay integral."""
    n = len(A)
    if n == 0:
        return 1
    if all(isinstance(x, int) for r in A for x in r):
        return int_det(A)
    m = [[_lift(x) for x in r] for r in A]
    d = _lift(1)
    for c in range(n):
        p = next((i for i in range(c, n) if not _is_zero(m[i][c])), None)
        if p is None:
            return m[0][0] * 0
        if p != c:
            m[c], m[p] = m[p], m[c]
            d = -d
        d = d * m[c][c]
        inv = 1 / m[c][c]
        for i in range(c + 1, n):
            if not _is_zero(m[i][c]):
                f = m[i][c] * inv
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return d


def int_det(A: Sequence[Sequence[int]]) -> int:
    m = [list(r) for r in A]
    n = len(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            p = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if p is None:
                return 0
            m[k], m[p] = m[p], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def inverse(A: Sequence[Sequence]) -> list[list]:
    n = len(A)
    aug = [list(r) + [int(i == j) for j in range(n)] for i, r in enumerate(A)]
    m, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in m]


def primitive(v: Sequence) -> tuple[int, ...]:
    """Scale a rational vector to the primitive integer vector on its ray."""
    fr = [Fraction(x) for x in v]
    den = reduce(lambda a, b: a * b // gcd(a, b), (x.denominator for x in fr), 1)
    ints = [int(x * den) for x in fr]
    g = reduce(gcd, ints, 0)
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)


def dot(a: Sequence, b: Sequence):
    return sum(x * y for x, y in zip(a, b))


def matmul(A, B):
    cols = list(zip(*B))
    return [[dot(r, c) for c in cols] for r in A]


def transpose(A):
    return [list(c) for c in zip(*A)]
