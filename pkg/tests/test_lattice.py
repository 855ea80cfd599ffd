from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from cubicmirror import lattice as lt
from cubicmirror.lattice import M, N, Z, Cone, Polytope, conv


def Z2(points):
    return conv(Z(2), points)


SQUARE = Z2([(1, 1), (1, -1), (-1, 1), (-1, -1)])
DIAMOND = Z2([(1, 0), (-1, 0), (0, 1), (0, -1)])
TRIANGLE = Z2([(1, 0), (0, 1), (-1, -1)])


def test_n_rejects_nonzero_sum():
    with pytest.raises(ValueError):
        N.canonical((1, 0, 0, 0, 0, 0))


def test_m_canonical_representative():
    assert M.canonical((2, 3, 4, 5, 6, 7)) == (-5, -4, -3, -2, -1, 0)


@given(st.lists(st.integers(-5, 5), min_size=5, max_size=5),
       st.lists(st.integers(-5, 5), min_size=6, max_size=6), st.integers(-4, 4))
def test_pairing_independent_of_representative(nloc, m, shift):
    n = N.from_local(nloc)
    m2 = [x + shift for x in m]
    assert sum(a * b for a, b in zip(n, m)) == sum(a * b for a, b in zip(n, m2))
    # and equals the local dot product
    assert sum(a * b for a, b in zip(n, m)) == sum(
        a * b for a, b in zip(N.to_local(n), M.to_local(m)))


def test_dual_square_is_diamond():
    assert lt.dual_polytope(SQUARE) == DIAMOND
    assert lt.is_reflexive(SQUARE) and lt.is_reflexive(TRIANGLE)


def test_dual_of_non_reflexive_is_rational():
    P = Z2([(2, 0), (0, 1), (-1, -1)])
    D = lt.dual_polytope(P)
    assert not D.is_lattice()
    assert not lt.is_reflexive(P)


def test_origin_not_interior():
    with pytest.raises(lt.OriginNotInterior) as exc:
        lt.dual_polytope(Z2([(0, 0), (1, 0), (0, 1)]))
    assert exc.value.witness is not None


polygon = st.lists(st.tuples(st.integers(-4, 4), st.integers(-4, 4)), min_size=3, max_size=8)


@given(polygon)
def test_double_dual(points):
    P = Z2(points)
    assume(P.strictly_contains_origin())
    assert lt.dual_polytope(lt.dual_polytope(P)) == P


@given(polygon)
def test_normal_fan_is_face_fan_of_dual(points):
    P = Z2(points)
    assume(P.strictly_contains_origin())
    assert lt.normal_fan(P) == lt.face_fan(lt.dual_polytope(P))


def test_minkowski_sum_of_segments():
    a = Z2([(0, 0), (1, 0)])
    b = Z2([(0, 0), (0, 1)])
    assert lt.minkowski_sum(a, b) == Z2([(0, 0), (1, 0), (0, 1), (1, 1)])


def test_lattice_points_of_square():
    assert len(lt.lattice_points(SQUARE)) == 9


def test_cone_containment_and_unimodularity():
    c = Cone(Z(2), ((1, 0), (1, 2)))
    assert c.contains((1, 1)) and not c.contains((0, 1))
    assert not c.is_unimodular()
    assert Cone(Z(2), ((1, 0), (1, 1))).is_unimodular()


def test_hilbert_basis_of_dual_cone():
    c = Cone(Z(2), ((1, 0), (1, 2)))
    hb = sorted(v.coords for v in lt.hilbert_basis(c))
    assert hb == [(1, 0), (1, 1), (1, 2)]


def test_json_roundtrip():
    for obj in (SQUARE, Cone(Z(2), ((1, 0), (1, 2))), lt.normal_fan(SQUARE)):
        assert lt.from_json(lt.to_json(obj)) == obj


def test_json_rejects_garbage():
    with pytest.raises(ValueError):
        lt.from_json({"space": "N"})
    with pytest.raises(ValueError):
        lt.from_json({"space": "Q", "vertices": [[0]]})


def test_rational_vertices_allowed():
    P = conv(Z(2), [(Fraction(1, 2), 0), (0, 1), (-1, -1)])
    assert not P.is_lattice()
