import pytest

from cubicmirror import lattice as lt, nef, objects as ob
from cubicmirror.lattice import M, N, conv, e


def test_delta_is_reflexive_and_nef_partition():
    assert lt.is_reflexive(ob.delta())
    chk = nef.is_nef_partition(nef.NefPartition(ob.delta(), (ob.delta1(), ob.delta2())))
    assert chk.ok, chk.reason


def test_dual_partition_parts():
    d = nef.dual_nef_partition(nef.NefPartition(ob.delta(), (ob.delta1(), ob.delta2())))
    assert d.parts == (ob.nabla1(), ob.nabla2())
    assert d.total == ob.nabla()


def test_nabla_has_fifteen_vertices_and_interior_origin():
    verts = {M.canonical(v) for v in ob.nabla().vertices}
    listed = {M.canonical(p) for p in ob.nabla_listed_points()}
    origin = M.canonical((0,) * 6)
    assert verts == listed - {origin}
    assert ob.nabla().strictly_contains_origin()


def test_nabla_is_dual_of_P():
    assert lt.dual_polytope(ob.P()) == ob.nabla()


def test_nef_check_reports_bad_sum():
    chk = nef.is_nef_partition(nef.NefPartition(ob.delta(), (ob.delta1(), ob.delta1())))
    assert not chk.ok and "Minkowski" in chk.reason


def test_nef_check_reports_missing_origin():
    shifted = conv(N, [tuple(a + b for a, b in zip(ob.u(i), (1, -1, 0, 0, 0, 0))) for i in range(1, 7)])
    chk = nef.is_nef_partition(nef.NefPartition(ob.delta(), (shifted, ob.delta2())))
    assert not chk.ok
    assert chk.witness is not None


def test_sigma_delta_has_six_cones():
    F = lt.normal_fan(ob.delta())
    assert len(F.maximal_cones) == 6
    assert set(F.cone_set()) == {frozenset(c.rays) for c in ob.sigma_delta_cones()}


def test_sigma_nabla_cones():
    nf = lt.normal_fan(ob.nabla())
    assert len(nf.maximal_cones) == 15
    assert nf == lt.face_fan(ob.P()) == ob.sigma_nabla()


def test_printed_dual_cones():
    # the printed dual generators really generate the dual cones
    for rays, dual in ((ob.SIGMA1_RAYS, ob.SIGMA1_DUAL), (ob.SIGMA2_RAYS, ob.SIGMA2_DUAL)):
        c = lt.Cone(N, tuple(rays))
        d = lt.dual_cone(c)
        assert d == lt.Cone(M, tuple(dual))


def test_pullbacks_55_plus_55():
    from cubicmirror.family import label_of, pi_fan
    F, Pi = ob.sigma_nabla(), pi_fan()
    D1 = nef.pullback_divisor(nef.divisor_from_polytope(ob.nabla1(), F), Pi)
    D2 = nef.pullback_divisor(nef.divisor_from_polytope(ob.nabla2(), F), Pi)
    s1 = {label_of(r).name for r, c in zip(Pi.rays, D1.coefficients) if c}
    s2 = {label_of(r).name for r, c in zip(Pi.rays, D2.coefficients) if c}
    assert set(D1.coefficients) == set(D2.coefficients) == {0, 1}
    assert len(s1) == len(s2) == 55
    assert all(n.startswith("u") for n in s1) and all(n.startswith("v") for n in s2)
    assert (D1 + D2).coefficients == nef.anticanonical(Pi).coefficients


def test_divisor_of_nabla_is_anticanonical():
    F = ob.sigma_nabla()
    D = nef.divisor_from_polytope(ob.nabla(), F)
    assert D.coefficients == nef.anticanonical(F).coefficients
