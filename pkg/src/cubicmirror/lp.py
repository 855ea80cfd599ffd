"""Exact linear programming: revised simplex with Bland's rule.

Problems are in standard form

    minimize c.x  subject to  A x = b,  x >= 0

with integer data and sparse columns.  The basis inverse is kept
fraction-free: ``adj`` holds the adjugate of the basis matrix and ``det`` its
determinant, so B^{-1} = adj / det.  After a pivot on element p the new
determinant is p and every updated entry is an exact integer quotient
(integer-preserving pivoting).  Bland's rule (lowest index enters, lowest
index leaves among ratio ties) rules out cycling.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

Column = dict  # row -> integer coefficient


@dataclass
class LPResult:
    status: str  # "optimal", "infeasible", "unbounded"
    x: list = field(default_factory=list)
    objective: Fraction | None = None
    duals: list = field(default_factory=list)
    basis: list = field(default_factory=list)
    iterations: int = 0
    farkas: list | None = None  # for infeasible problems: y with y.A <= 0, y.b > 0


class _Tableau:
    def __init__(self, cols: Sequence[Column], b: Sequence[int], basis: Sequence[int]):
        self.cols = cols
        self.m = len(b)
        self.basis = list(basis)
        self.adj = [[int(i == j) for j in range(self.m)] for i in range(self.m)]
        self.det = 1
        self.xb = [int(x) for x in b]
        self.iterations = 0

    def u_of(self, k: int) -> list[int]:
        col = self.cols[k]
        return [sum(row[r] * a for r, a in col.items()) for row in self.adj]

    def pivot(self, r: int, k: int, u: list[int]) -> None:
        p = u[r]
        D = self.det
        adj, xb = self.adj, self.xb
        ar = adj[r]
        xr = xb[r]
        for i in range(self.m):
            if i == r:
                continue
            ui = u[i]
            row = adj[i]
            if ui == 0:
                adj[i] = [(x * p) // D for x in row]
                xb[i] = (xb[i] * p) // D
            else:
                adj[i] = [(x * p - ui * y) // D for x, y in zip(row, ar)]
                xb[i] = (xb[i] * p - ui * xr) // D
        self.det = p
        self.basis[r] = k
        self.iterations += 1

    def duals_int(self, costs: Sequence[int]) -> list[int]:
        pi = [0] * self.m
        for i, k in enumerate(self.basis):
            c = costs[k]
            if c:
                row = self.adj[i]
                for j in range(self.m):
                    if row[j]:
                        pi[j] += c * row[j]
        return pi

    def run(self, costs: Sequence[int], allowed: Sequence[bool], max_iter: int | None = None) -> str:
        while True:
            if max_iter is not None and self.iterations >= max_iter:
                return "iteration_limit"
            pi = self.duals_int(costs)
            sgn = 1 if self.det > 0 else -1
            in_basis = set(self.basis)
            enter = None
            for k, col in enumerate(self.cols):
                if not allowed[k] or k in in_basis:
                    continue
                red = costs[k] * self.det - sum(pi[r] * a for r, a in col.items())
                if red * sgn < 0:
                    enter = k
                    break
            if enter is None:
                return "optimal"
            u = self.u_of(enter)
            best = None
            for i in range(self.m):
                if u[i] * sgn > 0:
                    # ratio xb[i]/u[i]; compare as fractions without the common det
                    key = (Fraction(self.xb[i], u[i]), self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return "unbounded"
            self.pivot(best[1], enter, u)

    def solution(self, n: int) -> list[Fraction]:
        x = [Fraction(0)] * n
        for i, k in enumerate(self.basis):
            if k < n:
                x[k] = Fraction(self.xb[i], self.det)
        return x


def solve_standard_form(cols: Sequence[Column], b: Sequence[int], costs: Sequence[int],
                        basis: Sequence[int] | None = None,
                        max_iter: int | None = None) -> LPResult:
    """Minimize costs.x subject to A x = b, x >= 0 (A given by sparse columns).

    ``basis`` may name columns forming an identity matrix with b >= 0; then
    phase one is skipped.  Otherwise artificial variables are added.
    """
    m = len(b)
    n = len(cols)
    if basis is not None:
        tab = _Tableau(cols, b, basis)
        status = tab.run(costs, [True] * n, max_iter)
        return _finish(tab, status, costs, n)
    # phase one
    sign = [1 if bi >= 0 else -1 for bi in b]
    cols1 = [{r: a * sign[r] for r, a in c.items()} for c in cols]
    b1 = [bi * s for bi, s in zip(b, sign)]
    cols1 += [{i: 1} for i in range(m)]
    costs1 = [0] * n + [1] * m
    tab = _Tableau(cols1, b1, list(range(n, n + m)))
    tab.run(costs1, [True] * (n + m), max_iter)
    obj1 = sum(Fraction(tab.xb[i], tab.det) for i, k in enumerate(tab.basis) if k >= n)
    if obj1 > 0:
        pi = tab.duals_int(costs1)
        y = [Fraction(p, tab.det) * s for p, s in zip(pi, sign)]
        return LPResult("infeasible", iterations=tab.iterations, farkas=y)
    # drive remaining artificials out of the basis
    for i in range(m):
        if tab.basis[i] >= n:
            for k in range(n):
                if k in tab.basis:
                    continue
                u = tab.u_of(k)
                if u[i] != 0:
                    tab.pivot(i, k, u)
                    break
    tab.cols = cols1
    costs2 = list(costs) + [0] * m
    allowed = [True] * n + [False] * m
    status = tab.run(costs2, allowed, max_iter)
    res = _finish(tab, status, costs2, n)
    res.duals = [d * s for d, s in zip(res.duals, sign)]
    return res


def _finish(tab: _Tableau, status: str, costs, n: int) -> LPResult:
    x = tab.solution(n)
    pi = [Fraction(p, tab.det) for p in tab.duals_int(costs)]
    obj = sum(Fraction(costs[k]) * x[k] for k in range(n))
    return LPResult(status, x, obj, pi, list(tab.basis), tab.iterations)
