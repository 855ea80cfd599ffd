"""Double description against brute-force vertex enumeration."""
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from cubicmirror import polyhedra as ph
from cubicmirror.linalg import rank, solve


def brute_vertices(halfspaces, d):
    """All feasible intersections of d independent tight halfspaces."""
    out = set()
    for sub in combinations(halfspaces, d):
        A = [list(a) for a, _ in sub]
        if rank(A) < d:
            continue
        x = solve(A, [-b for _, b in sub])
        if all(sum(ai * xi for ai, xi in zip(a, x)) + b >= 0 for a, b in halfspaces):
            out.add(tuple(x))
    return out


pts2 = st.lists(st.tuples(st.integers(-5, 5), st.integers(-5, 5)), min_size=3, max_size=9)
pts3 = st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3)),
                min_size=4, max_size=9)


@given(st.one_of(pts2, pts3))
def test_hull_facets_are_valid(points):
    if rank([[a - b for a, b in zip(p, points[0])] for p in points]) < len(points[0]):
        return
    facets, eqs = ph.hull_facets(points)
    assert not eqs
    d = len(points[0])
    for a, b in facets:
        vals = [sum(x * y for x, y in zip(a, p)) + b for p in points]
        assert min(vals) == 0
        tight = [p for p, v in zip(points, vals) if v == 0]
        assert rank([[x - y for x, y in zip(p, tight[0])] for p in tight]) == d - 1


@given(st.one_of(pts2, pts3))
def test_vertices_roundtrip_bruteforce(points):
    if rank([[a - b for a, b in zip(p, points[0])] for p in points]) < len(points[0]):
        return
    facets, _ = ph.hull_facets(points)
    d = len(points[0])
    verts = {tuple(Fraction(x) for x in v) for v in ph.hull_vertices(points)}
    assert verts == brute_vertices(facets, d)
    again = {tuple(Fraction(x) for x in v) for v in ph.vertices_from_halfspaces(facets, d)}
    assert again == verts


def test_unit_cube():
    cube = [(a, b, c) for a in (0, 1) for b in (0, 1) for c in (0, 1)]
    facets, eqs = ph.hull_facets(cube + [(Fraction(1, 2),) * 3])
    assert len(facets) == 6 and not eqs
    assert ph.polytope_volume(cube) == 6  # normalized: 3! * 1


def test_dd_cone_orthant():
    rays, lin = ph.dd_cone([(1, 0), (0, 1)], 2)
    assert sorted(map(tuple, rays)) == [(0, 1), (1, 0)] and not lin


def test_hilbert_basis_2d():
    # cone over (1,0), (1,3): Hilbert basis (1,0), (1,1), (1,2), (1,3)
    hb = sorted(map(tuple, ph.hilbert_basis_of_cone([(1, 0), (1, 3)])))
    assert hb == [(1, 0), (1, 1), (1, 2), (1, 3)]


def test_simplex_volume():
    assert ph.simplex_volume([(0, 0), (2, 0), (0, 3)]) == 6


def test_unbounded_halfspaces_rejected():
    with pytest.raises(ph.PolyhedronError):
        ph.vertices_from_halfspaces([((1, 0), 0), ((0, 1), 0)], 2)
