"""Regularity (projectivity) of triangulations via an exact LP on heights.

A triangulation T of a point configuration A is regular when some height
vector h on A induces T as the lower envelope of the lifted points.  For a
full-dimensional T this is equivalent to strict local convexity across every
interior wall,

    h(q) - sum_v beta_v h(v) > 0   (S1 = W + p, S2 = W + q, q = sum beta_v v over S1)

together with h(p) > sum lambda_v h(v) for points p of A that are not
vertices of T (p in cell S with barycentric coordinates lambda).

We maximize a common slack s in these inequalities with the heights of one
cell pinned to zero.  Then h >= 0 is no loss of generality (a convex
function dominates each of its affine pieces), and the problem is solved in
its dual form, which has one row per height and a feasible identity basis.
"""
from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import polyhedra as ph
from .linalg import inverse, primitive, solve
from .lp import solve_standard_form
from .triangulation import Triangulation, _project, affine_chart


@dataclass(frozen=True)
class SecondaryCertificate:
    heights: dict  # point index -> Fraction
    slack: Fraction

    def to_json(self) -> dict:
        return {"heights": {str(i): _q(h) for i, h in sorted(self.heights.items())},
                "slack": _q(self.slack)}


@dataclass(frozen=True)
class InfeasibilityWitness:
    """Nonnegative multipliers on the regularity rows.

    ``weights[r]`` belongs to ``rows[r]``; the combination sum w_r row_r is
    componentwise <= 0 on the free heights while sum w_r = 1, so no height
    vector can make every row positive.
    """
    rows: tuple
    weights: tuple
    pinned: tuple

    def to_json(self) -> dict:
        return {"infeasible": True, "pinned": list(self.pinned),
                "combination": [{"row": {str(k): v for k, v in sorted(r.items())},
                                 "weight": _q(w)} for r, w in zip(self.rows, self.weights)
                                if w != 0]}


def _q(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def _chart(T: Triangulation):
    cols, dim = affine_chart(T.point_config)
    X = [_project(p, cols) for p in T.point_config]
    return X, dim


def _barycentric(X, simplex: Sequence[int], q) -> list[Fraction]:
    d = len(X[0])
    A = [[Fraction(X[i][r]) for i in simplex] for r in range(d)] + [[Fraction(1)] * len(simplex)]
    rhs = [Fraction(x) for x in q] + [Fraction(1)]
    sol = solve(A, rhs)
    if sol is None:
        raise ValueError("point is not in the affine span of the simplex")
    return sol


def interior_walls(T: Triangulation) -> list[tuple[tuple[int, ...], int, int]]:
    """(cell a, cell b) pairs sharing a wall, as (wall, a, b) with cells by index."""
    walls = defaultdict(list)
    for k, s in enumerate(T.maximal_simplices):
        for j in range(len(s)):
            walls[tuple(sorted(s[:j] + s[j + 1:]))].append(k)
    return [(w, occ[0], occ[1]) for w, occ in sorted(walls.items()) if len(occ) == 2]


def regularity_rows(T: Triangulation) -> list[dict[int, int]]:
    """Integer rows r with r.h > 0 required, one per wall and per unused point.

    Each row is the primitive integer multiple of
    h(q) - sum_v beta_v h(v), stored sparsely as {point index: coefficient}.
    """
    X, dim = _chart(T)
    rows = []
    cells = T.maximal_simplices
    for w, a, b in interior_walls(T):
        S1 = cells[a]
        q = next(i for i in cells[b] if i not in w)
        beta = _barycentric(X, S1, X[q])
        coeffs = {q: Fraction(1)}
        for v, bv in zip(S1, beta):
            coeffs[v] = coeffs.get(v, 0) - bv
        rows.append(_prim_row(coeffs))
    used = {i for s in cells for i in s}
    for p in range(len(X)):
        if p in used:
            continue
        host = None
        for s in cells:
            lam = _barycentric(X, s, X[p])
            if all(x >= 0 for x in lam):
                host = (s, lam)
                break
        if host is None:
            raise ValueError(f"point {p} is not covered by the triangulation")
        coeffs = {p: Fraction(1)}
        for v, lv in zip(*host):
            coeffs[v] = coeffs.get(v, 0) - lv
        rows.append(_prim_row(coeffs))
    return rows


def _prim_row(coeffs: dict) -> dict[int, int]:
    keys = sorted(k for k, v in coeffs.items() if v != 0)
    vec = primitive([coeffs[k] for k in keys])
    return {k: x for k, x in zip(keys, vec)}


def check_projective(T: Triangulation, pin: int = 0, max_iter: int | None = None):
    """Heights certifying regularity, or an infeasibility witness.

    Returns a SecondaryCertificate (heights with the exact minimum wall
    margin as slack) or an InfeasibilityWitness.
    """
    rows = regularity_rows(T)
    pinned = tuple(T.maximal_simplices[pin])
    free = [i for i in range(len(T.point_config)) if i not in pinned]
    col_of = {p: j for j, p in enumerate(free)}
    nh = len(free)
    # dual program: variables y_w (rows), y0, f_j (nh slacks), e0
    #   sum_w a_wj y_w + f_j = 0      (j < nh)
    #   sum_w y_w + y0 - e0 = 1       (row nh)
    #   minimize y0
    cols = []
    for r in rows:
        c = {col_of[p]: a for p, a in r.items() if p in col_of}
        c[nh] = 1
        cols.append(c)
    W = len(rows)
    cols.append({nh: 1})  # y0
    cols += [{j: 1} for j in range(nh)]  # f_j
    cols.append({nh: -1})  # e0
    costs = [0] * len(cols)
    costs[W] = 1
    b = [0] * nh + [1]
    basis = [W + 1 + j for j in range(nh)] + [W]
    res = solve_standard_form(cols, b, costs, basis=basis, max_iter=max_iter)
    if res.status != "optimal":
        raise RuntimeError(f"LP ended with status {res.status}")
    s = res.duals[nh]
    if s > 0:
        heights = {p: Fraction(0) for p in pinned}
        for p, j in col_of.items():
            heights[p] = -res.duals[j]
        cert = SecondaryCertificate(dict(sorted(heights.items())), Fraction(0))
        margin = min_wall_margin(T, cert.heights)
        return SecondaryCertificate(cert.heights, margin)
    y = res.x[:W]
    total = sum(y)
    weights = tuple(w / total for w in y)
    return InfeasibilityWitness(tuple(rows), weights, pinned)


def min_wall_margin(T: Triangulation, heights: dict) -> Fraction:
    """Smallest local-convexity defect over walls and unused points (exact).

    Computed from scratch from the geometry, independently of the LP rows'
    scaling: for each interior wall the height at the far vertex minus the
    affine extension of the neighbouring cell.
    """
    X, _ = _chart(T)
    cells = T.maximal_simplices
    h = [Fraction(heights[i]) if i in heights else None for i in range(len(X))]
    margins = []
    for w, a, b in interior_walls(T):
        for S1, S2 in ((cells[a], cells[b]), (cells[b], cells[a])):
            q = next(i for i in S2 if i not in w)
            beta = _barycentric(X, S1, X[q])
            margins.append(h[q] - sum(bv * h[v] for v, bv in zip(S1, beta)))
    used = {i for s in cells for i in s}
    for p in range(len(X)):
        if p in used:
            continue
        for s in cells:
            lam = _barycentric(X, s, X[p])
            if all(x >= 0 for x in lam):
                margins.append(h[p] - sum(lv * h[v] for v, lv in zip(s, lam)))
                break
    return min(margins) if margins else Fraction(1)


def verify_certificate(T: Triangulation, cert: SecondaryCertificate) -> bool:
    """Re-evaluate every wall inequality against the heights, exactly."""
    if set(cert.heights) != set(range(len(T.point_config))):
        return False
    m = min_wall_margin(T, cert.heights)
    return m > 0 and m >= cert.slack


def verify_witness(w: InfeasibilityWitness, npoints: int) -> bool:
    """Check y >= 0, sum y = 1 and sum y_r row_r <= 0 on the free heights."""
    if any(x < 0 for x in w.weights) or sum(w.weights) != 1:
        return False
    comb = defaultdict(Fraction)
    for r, y in zip(w.rows, w.weights):
        for p, a in r.items():
            comb[p] += y * a
    return all(comb[p] <= 0 for p in range(npoints) if p not in w.pinned)


def regular_subdivision(points: Sequence[Sequence[int]], heights: Sequence) -> Triangulation:
    """Lower-envelope subdivision induced by heights (cells = lower facets)."""
    pts = [tuple(p) for p in points]
    lifted = [tuple(Fraction(x) for x in p) + (Fraction(h),) for p, h in zip(pts, heights)]
    facets, eqs = ph.hull_facets(lifted)
    if eqs:
        raise ValueError("point configuration is not full-dimensional")
    cells = []
    for a, b in facets:
        if a[-1] <= 0:
            continue
        cell = tuple(i for i, q in enumerate(lifted) if sum(x * y for x, y in zip(a, q)) + b == 0)
        cells.append(cell)
    return Triangulation(tuple(pts), tuple(sorted(cells)))


def dumps(obj) -> str:
    return json.dumps(obj.to_json(), sort_keys=True)


def mother_triangulation(twist: int = 1) -> Triangulation:
    """The classical 2-D triangulation of a big triangle around a small one.

    Each outer edge is coned to one inner vertex; ``twist`` picks the
    rotational direction.  Neither twist is regular.
    """
    pts = [(0, 0), (12, 0), (0, 12), (3, 3), (6, 3), (3, 6)]
    cells = [(3, 4, 5)]
    for i in range(3):
        j = (i + 1) % 3
        if twist > 0:
            cells += [(i, j, 3 + j), (i, 3 + j, 3 + i)]
        else:
            cells += [(i, j, 3 + i), (j, 3 + j, 3 + i)]
    return Triangulation(tuple(pts), tuple(cells))
