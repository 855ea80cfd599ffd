"""Coordinate-level polyhedral kernels.

All routines work with plain tuples in Q^d (local coordinates).  The lattice
wrappers in ``lattice`` translate between these and the rank-5 lattices
sitting inside Z^6.  Arithmetic is integer wherever possible; rational input
is scaled to primitive integer vectors before entering the double description
loop.
"""
from __future__ import annotations

import itertools
from collections import deque
from fractions import Fraction
from functools import lru_cache
from math import floor
from typing import Iterable, Sequence

from .linalg import dot, int_det, int_rank, inverse, primitive, rank

Vec = tuple


class PolyhedronError(ValueError):
    pass


# --------------------------------------------------------------------------
# double description

def dd_cone(constraints: Sequence[Sequence], d: int) -> tuple[list[Vec], list[Vec]]:
    """Generators of the cone {x in Q^d : a.x >= 0 for all a}.

    Returns (extreme rays, lineality basis), all primitive integer vectors.
    Extreme rays are only defined modulo the lineality space; the returned
    rays are orthogonal-free representatives chosen by the elimination.
    """
    lin: list[Vec] = [tuple(int(i == j) for j in range(d)) for i in range(d)]
    rays: list[Vec] = []
    zeros: list[int] = []
    cons = [primitive(a) for a in constraints]
    for idx, a in enumerate(cons):
        if not any(a):
            continue
        bit = 1 << idx
        piv = next((l for l in lin if dot(a, l) != 0), None)
        if piv is not None:
            al0 = dot(a, piv)
            if al0 < 0:
                piv = tuple(-x for x in piv)
                al0 = -al0
            new_lin = []
            for l in lin:
                if dot(a, l) != 0 and l in (piv, tuple(-x for x in piv)):
                    continue
                al = dot(a, l)
                w = primitive([al0 * x - al * y for x, y in zip(l, piv)]) if al else l
                if any(w):
                    new_lin.append(w)
            new_rays = []
            new_zeros = []
            for r, z in zip(rays, zeros):
                ar = dot(a, r)
                w = primitive([al0 * x - ar * y for x, y in zip(r, piv)]) if ar else r
                new_rays.append(w)
                new_zeros.append(z | bit)
            new_rays.append(primitive(piv))
            new_zeros.append(bit - 1)  # tight on everything processed before
            lin, rays, zeros = new_lin, new_rays, new_zeros
            continue
        vals = [dot(a, r) for r in rays]
        pos = [i for i, v in enumerate(vals) if v > 0]
        neg = [i for i, v in enumerate(vals) if v < 0]
        zer = [i for i, v in enumerate(vals) if v == 0]
        keep_rays = [rays[i] for i in pos] + [rays[i] for i in zer]
        keep_zeros = [zeros[i] for i in pos] + [zeros[i] | bit for i in zer]
        need = d - len(lin) - 2
        for i in pos:
            for j in neg:
                common = zeros[i] & zeros[j]
                if need > 0 and common.bit_count() < need:
                    continue
                adjacent = True
                for k in range(len(rays)):
                    if k != i and k != j and zeros[k] & common == common:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                vi, vj = vals[i], vals[j]
                w = primitive([vi * y - vj * x for x, y in zip(rays[i], rays[j])])
                keep_rays.append(w)
                keep_zeros.append(common | bit)
        rays, zeros = keep_rays, keep_zeros
    return rays, lin


def _homogenize(points: Iterable[Sequence]) -> list[Vec]:
    return [primitive(list(p) + [1]) for p in points]


def hull_facets(points: Sequence[Sequence]) -> tuple[list[tuple[Vec, int]], list[tuple[Vec, int]]]:
    """Facet inequalities of conv(points).

    Returns (facets, equations).  Each facet is (a, b) meaning a.x + b >= 0,
    primitive integer and irredundant; equations (a, b) mean a.x + b == 0 and
    span the affine relations of the hull.  For a full-dimensional hull the
    equation list is empty.
    """
    pts = list(points)
    if not pts:
        raise PolyhedronError("empty point set")
    d = len(pts[0])
    hom = _homogenize(pts)
    rays, lin = dd_cone(hom, d + 1)
    facets = [(r[:-1], r[-1]) for r in rays]
    eqs = [(l[:-1], l[-1]) for l in lin]
    return sorted(set(facets)), eqs


def hull_vertices(points: Sequence[Sequence]) -> list[Vec]:
    """Irredundant vertex subset of a finite point set (exact)."""
    pts = sorted(set(tuple(p) for p in points))
    if len(pts) <= 1:
        return pts
    d = len(pts[0])
    facets, eqs = hull_facets(pts)
    eqrows = [list(a) + [b] for a, b in eqs]
    out = []
    for p in pts:
        tight = [list(a) + [b] for a, b in facets if dot(a, p) + b == 0]
        if rank(tight + eqrows) == d:
            out.append(p)
    return out


def vertices_from_halfspaces(halfspaces: Sequence[tuple[Sequence, object]], d: int,
                             equations: Sequence[tuple[Sequence, object]] = ()) -> list[Vec]:
    """Vertices of {x : a.x + b >= 0} (and a.x + b == 0 for equations).

    Raises PolyhedronError when the region is unbounded.  An empty region
    gives an empty list.
    """
    cons = [list(a) + [b] for a, b in halfspaces]
    for a, b in equations:
        cons.append(list(a) + [b])
        cons.append([-x for x in a] + [-b])
    cons.append([0] * d + [1])
    rays, lin = dd_cone(cons, d + 1)
    if lin:
        raise PolyhedronError("region contains a line")
    verts = []
    for r in rays:
        t = r[-1]
        if t == 0:
            raise PolyhedronError("unbounded region: recession direction %s" % (r[:-1],))
        verts.append(tuple(_frac(x, t) for x in r[:-1]))
    return sorted(set(verts))


def _frac(x, t):
    f = Fraction(x, t)
    return f.numerator if f.denominator == 1 else f


def dual_cone_generators(rays: Sequence[Sequence[int]], d: int) -> tuple[list[Vec], list[Vec]]:
    """Extreme rays and lineality of {m : r.m >= 0 for all generators r}."""
    return dd_cone(list(rays), d)


def cone_facets(rays: Sequence[Sequence[int]], d: int) -> tuple[list[Vec], list[Vec]]:
    """Facet normals a (a.x >= 0) of cone(rays) and its orthogonal equations."""
    return dd_cone(list(rays), d)


# --------------------------------------------------------------------------
# triangulations of cones and polytopes (pulling)

def pulling_triangulation(rays: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Pulling triangulation of a pointed cone, as index tuples into ``rays``.

    Polytopes are handled by passing homogenized vertices (p, 1).
    """
    rays = [tuple(r) for r in rays]
    d = len(rays[0])
    facets, lin = dd_cone(rays, d)
    # incidence: which generators lie on each facet of the full cone
    inc = [frozenset(i for i, r in enumerate(rays) if dot(f, r) == 0) for f in facets]

    @lru_cache(maxsize=None)
    def rk(idx: frozenset) -> int:
        return int_rank([rays[i] for i in idx]) if idx else 0

    @lru_cache(maxsize=None)
    def subfaces(face: frozenset) -> list[frozenset]:
        dim = rk(face)
        cands = set()
        for F in inc:
            g = face & F
            if g != face and rk(g) == dim - 1:
                cands.add(g)
        return [c for c in cands if not any(c < o for o in cands)]

    @lru_cache(maxsize=None)
    def tri(face: frozenset) -> tuple[tuple[int, ...], ...]:
        dim = rk(face)
        if len(face) == dim:
            return (tuple(sorted(face)),)
        apex = min(face)
        out = []
        for g in subfaces(face):
            if apex in g:
                continue
            for s in tri(g):
                out.append(tuple(sorted((apex,) + s)))
        return tuple(out)

    return list(tri(frozenset(range(len(rays)))))


def simplex_volume(points: Sequence[Sequence]) -> int | Fraction:
    """Normalized volume (|det| of edge vectors) of a full-dimensional simplex."""
    p0 = points[0]
    rows = [[a - b for a, b in zip(p, p0)] for p in points[1:]]
    from .linalg import det
    return abs(det(rows))


def polytope_volume(vertices: Sequence[Sequence[int]]) -> int:
    """Normalized volume of a full-dimensional lattice polytope (d! * Euclidean)."""
    hom = [tuple(v) + (1,) for v in vertices]
    total = 0
    for s in pulling_triangulation(hom):
        total += abs(int_det([hom[i] for i in s]))
    return total


# --------------------------------------------------------------------------
# lattice points and Hilbert bases

def lattice_points_in(halfspaces, equations, bbox_lo, bbox_hi) -> list[Vec]:
    """Integer points of an H-polytope inside a bounding box, exact tests."""
    d = len(bbox_lo)
    rng = [range(int(floor(lo)), int(-floor(-hi)) + 1) for lo, hi in zip(bbox_lo, bbox_hi)]
    hs = [(tuple(a), b) for a, b in halfspaces]
    eq = [(tuple(a), b) for a, b in equations]
    out = []
    for p in itertools.product(*rng):
        if all(dot(a, p) + b == 0 for a, b in eq) and all(dot(a, p) + b >= 0 for a, b in hs):
            out.append(p)
    return out


def parallelepiped_points(gens: Sequence[Sequence[int]]) -> list[Vec]:
    """Lattice points sum(l_i g_i) with 0 <= l_i < 1 for a basis ``gens`` of Q^d.

    Breadth first search over Z^d / span(gens), generated by the unit vectors.
    """
    d = len(gens)
    G = [list(g) for g in gens]
    # coordinates: x = lam . G  =>  lam = x . G^{-1}
    Ginv = inverse(G)

    def lam_of(x):
        return tuple(sum(Fraction(x[i]) * Ginv[i][j] for i in range(d)) for j in range(d))

    def reduce(x):
        lam = lam_of(x)
        shift = [floor(l) for l in lam]
        y = tuple(x[k] - sum(shift[j] * G[j][k] for j in range(d)) for k in range(d))
        return y

    start = tuple([0] * d)
    seen = {start}
    queue = deque([start])
    units = [tuple(int(i == j) for j in range(d)) for i in range(d)]
    while queue:
        x = queue.popleft()
        for e in units:
            y = reduce(tuple(a + b for a, b in zip(x, e)))
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return sorted(seen)


def hilbert_basis_of_cone(rays: Sequence[Sequence[int]]) -> list[Vec]:
    """Minimal generating set of cone(rays) ∩ Z^d for a pointed full-dim cone."""
    rays = [tuple(r) for r in rays]
    d = len(rays[0])
    facets, lin = dd_cone(rays, d)
    if int_rank(rays) != d:
        raise PolyhedronError("cone is not full-dimensional")
    dual_rays, dual_lin = dd_cone(facets, d)
    if dual_lin:
        raise PolyhedronError("cone is not pointed")
    cands = set(rays)
    for s in pulling_triangulation(rays):
        for p in parallelepiped_points([rays[i] for i in s]):
            if any(p):
                cands.add(p)
    cands = sorted(cands)

    def in_cone(x):
        return all(dot(f, x) >= 0 for f in facets)

    basis = []
    for x in cands:
        red = False
        for y in cands:
            if y != x and in_cone(tuple(a - b for a, b in zip(x, y))):
                red = True
                break
        if not red:
            basis.append(x)
    return basis
