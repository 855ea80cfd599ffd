"""Acceptance criteria 1-12, one test each, with their time limits.

Every test records a one-line verdict that the terminal summary prints under
"acceptance criteria".  Running this file as a script prints the same lines.
"""
import time
from collections import Counter
from fractions import Fraction

import pytest

from cubicmirror import family as fm, hodge, lattice as lt, nef, objects as ob, ore
from cubicmirror import picard_fuchs as pf, regularity as rg, triangulation as tr
from cubicmirror.cyclotomic import mu6
from cubicmirror.lattice import M


class Verdict:
    def __init__(self, n, limit, record):
        self.n, self.limit, self.record = n, limit, record
        self.parts = {}

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def check(self, name, ok):
        self.parts[name] = bool(ok)

    def __exit__(self, exc_type, exc, tb):
        dt = time.perf_counter() - self.t0
        self.parts["time"] = dt < self.limit
        if exc_type is not None:
            self.parts["error"] = False
        ok = all(self.parts.values())
        bad = [k for k, v in self.parts.items() if not v]
        line = (f"criterion {self.n}: {'PASS' if ok else 'FAIL'} ({dt:.2f}s / limit {self.limit}s)"
                + (f" failed: {', '.join(bad)}" if bad else ""))
        self.record("criterion", line)
        print(line)
        if exc_type is None:
            assert ok, line
        return False


@pytest.fixture
def verdict(record_property):
    return lambda n, limit: Verdict(n, limit, record_property)


@pytest.fixture(scope="module")
def tau():
    return tr.build_tau_P(check=False)


def test_criterion_01_dual_nef_partition(verdict):
    with verdict(1, 1.0) as v:
        d = nef.dual_nef_partition(nef.NefPartition(ob.delta(), (ob.delta1(), ob.delta2())))
        v.check("nabla1", d.parts[0] == lt.conv(M, [(0,) * 6, lt.e(1), lt.e(2), lt.e(3)]))
        v.check("nabla2", d.parts[1] == lt.conv(M, [(0,) * 6, lt.e(4), lt.e(5), lt.e(6)]))
        listed = {M.canonical(p) for p in ob.nabla_listed_points()}
        v.check("nabla_hull", d.total == lt.conv(M, sorted(listed)))
        # the origin is among the 16 listed points and is interior
        verts = {M.canonical(x) for x in d.total.vertices}
        v.check("nabla_vertices", verts == listed - {M.canonical((0,) * 6)} and len(listed) == 16)


def test_criterion_02_fans(verdict):
    with verdict(2, 5.0) as v:
        nd = lt.normal_fan(ob.delta())
        v.check("sigma_i", len(nd.maximal_cones) == 6 and set(nd.cone_set()) ==
                {frozenset(c.rays) for c in ob.sigma_delta_cones()})
        nf = lt.normal_fan(ob.nabla())
        v.check("normal_equals_face", nf == lt.face_fan(ob.P()))
        v.check("fifteen_cones", len(nf.maximal_cones) == 15)
        v.check("printed_generators", nf == ob.sigma_nabla())


def test_criterion_03_triangulation(verdict):
    with verdict(3, 60.0) as v:
        T = tr.build_tau_P(check=True)
        pts = lt.lattice_points(ob.P())
        v.check("111_points", len(pts) == 111)
        rep = tr.verify_triangulation(T, ob.P())
        for k, ok in rep.checks.items():
            v.check(k, ok)
        v.check("star", rep.checks.get("star", False))
        v.check("gluing", tr.check_gluing(tr.facet_triangulations()) == [])
        v.check("fifteen_facets", len(tr.facet_triangulations()) == 15)


def test_criterion_04_smoothness(verdict, tau):
    with verdict(4, 30.0) as v:
        F = tr.fan_from_star_triangulation(tau, require_unimodular=False)
        ok, bad = tr.unimodularity_report(F)
        v.check("unimodular", ok and not bad)
        v.check("cones", len(F.maximal_cones) == len(tau))


@pytest.mark.slow
def test_criterion_05_projectivity(verdict, tau):
    with verdict(5, 600.0) as v:
        cert = rg.check_projective(tau)
        v.check("certificate", isinstance(cert, rg.SecondaryCertificate))
        v.check("slack_positive", getattr(cert, "slack", 0) > 0)
        v.check("reverified", isinstance(cert, rg.SecondaryCertificate)
                and rg.verify_certificate(tau, cert))
        mother = rg.mother_triangulation()
        w = rg.check_projective(mother)
        v.check("mother_infeasible", isinstance(w, rg.InfeasibilityWitness)
                and rg.verify_witness(w, len(mother.point_config)))


def test_criterion_06_pullbacks(verdict):
    with verdict(6, 5.0) as v:
        F, Pi = ob.sigma_nabla(), fm.pi_fan()
        D1 = nef.pullback_divisor(nef.divisor_from_polytope(ob.nabla1(), F), Pi)
        D2 = nef.pullback_divisor(nef.divisor_from_polytope(ob.nabla2(), F), Pi)
        s1 = {fm.label_of(r).name for r, c in zip(Pi.rays, D1.coefficients) if c}
        s2 = {fm.label_of(r).name for r, c in zip(Pi.rays, D2.coefficients) if c}
        u_rays = {l.name for l in fm.ray_labels() if l.kind == "U"}
        v_rays = {l.name for l in fm.ray_labels() if l.kind == "V"}
        v.check("D1", set(D1.coefficients) == {0, 1} and s1 == u_rays and len(s1) == 55)
        v.check("D2", set(D2.coefficients) == {0, 1} and s2 == v_rays and len(s2) == 55)
        v.check("anticanonical", (D1 + D2).coefficients == nef.anticanonical(Pi).coefficients
                and set((D1 + D2).coefficients) == {1})


def test_criterion_07_singular_fibers(verdict):
    with verdict(7, 5.0) as v:
        ranks, grams, dets, odp = True, True, True, True
        for psi in mu6():
            t = (psi,) * 6
            ranks &= not any(fm.fiber_residuals(psi, t)) and fm.torus_jacobian_rank(psi, t) == 2
            cert = fm.odp_certificate(psi)
            odp &= cert.is_ordinary_double_point
            grams &= cert.form == fm.PRINTED_ODP_FORM
            dets &= cert.det == 3
        v.check("rank_2_on_diagonal", ranks)
        v.check("nondegenerate_hessian", odp)
        v.check("gram_equals_printed_form", grams)
        v.check("det_3", dets)
        w = (4, Fraction(-1, 2), Fraction(-1, 2), 4, Fraction(-1, 2), Fraction(-1, 2))
        v.check("smooth_witness", not any(fm.fiber_residuals(1, w))
                and fm.torus_jacobian_rank(1, w) == 3)


def _patch_matches(sigma, printed_monomials, printed_relation, printed_equations):
    patch = fm.affine_patch(sigma)
    # rename our generators to the printed ones through their Cox monomials
    ren = [printed_monomials.index(dict(m)) for m in patch.monomials]
    inv = {old: new for old, new in enumerate(ren)}

    def permute(exps):
        out = [0] * len(exps)
        for i, k in enumerate(exps):
            out[inv[i]] = k
        return tuple(out)

    (lhs, rhs), = patch.relations
    rel = {permute(lhs), permute(rhs)}
    eqs = []
    for h in patch.equations:
        nvar = len(h.variables) - 1  # trailing psi
        eqs.append({permute(e[:nvar]) + e[nvar:]: c for e, c in h.terms.items()})
    return rel == printed_relation and all(
        a == b or a == {k: -c for k, c in b.items()} for a, b in zip(eqs, printed_equations))


def _e(*pairs):
    out = [0] * 6
    for i, k in pairs:
        out[i - 1] = k
    return tuple(out)


def test_criterion_08_patches(verdict):
    with verdict(8, 10.0) as v:
        u1_monos = [{"u2": 1, "u3": 1, "u4": 1, "u5": 1, "u6": 1}, {"u2": 3}, {"u3": 3},
                    {"u4": 3}, {"u5": 3}, {"u6": 3}]
        u1_rel = {_e((2, 1), (3, 1), (4, 1), (5, 1), (6, 1)), _e((1, 3))}
        u1_eqs = [{_e((1, 1)) + (1,): 3, _e() + (0,): -1, _e((2, 1)) + (0,): -1,
                   _e((3, 1)) + (0,): -1},
                  {_e() + (1,): 3, _e((4, 1)) + (0,): -1, _e((5, 1)) + (0,): -1,
                   _e((6, 1)) + (0,): -1}]
        v.check("U1", _patch_matches(ob.U(1), u1_monos, u1_rel, u1_eqs))
        c36_monos = [{"u1": 3, "v1": 3}, {"u2": 3, "v2": 3}, {"u1": 1, "u2": 1, "u4": 1, "u5": 1},
                     {"u4": 3, "v4": 3}, {"u5": 3, "v5": 3}, {"v1": 1, "v2": 1, "v4": 1, "v5": 1}]
        c36_rel = {_e((1, 1), (2, 1), (4, 1), (5, 1)), _e((3, 3), (6, 3))}
        c36_eqs = [{_e((3, 1)) + (1,): 3, _e((1, 1)) + (0,): -1, _e((2, 1)) + (0,): -1,
                    _e() + (0,): -1},
                   {_e((6, 1)) + (1,): 3, _e((4, 1)) + (0,): -1, _e((5, 1)) + (0,): -1,
                    _e() + (0,): -1}]
        v.check("C36", _patch_matches(ob.C(3, 6), c36_monos, c36_rel, c36_eqs))


def _multinomial_oracle(n):
    poly = Counter({(0, 0, 0): 1})
    for _ in range(3 * n):
        nxt = Counter()
        for (a, b, c), k in poly.items():
            for i, step in enumerate(((1, 0, 0), (0, 1, 0), (0, 0, 1))):
                x = (a + step[0], b + step[1], c + step[2])
                if max(x) <= n:
                    nxt[x] += k
        poly = nxt
    return poly[(n, n, n)] ** 2


def test_criterion_09_picard_fuchs(verdict):
    with verdict(9, 1.0) as v:
        rep = pf.annihilation_check(ore.L_z(), pf.period_coefficient, 50)
        v.check("annihilation", rep.ok)
        v.check("first_terms", [pf.period_coefficient(n) for n in range(3)] == [1, 36, 8100])
        v.check("oracle", all(pf.period_coefficient(n) == _multinomial_oracle(n)
                              for n in range(11)))


def test_criterion_10_frobenius_monodromy(verdict):
    with verdict(10, 5.0) as v:
        from cubicmirror.polynomial import Poly
        R = ore.R()
        v.check("indicial", pf.indicial_polynomial(R) == Poly.from_roots([0, 0, 2, 2]))
        v.check("eigenvalues", pf.companion_matrix(R).eigenvalues == [0, 0, 2, 2])
        sols = pf.frobenius_solutions(R, 64)
        v.check("two_log_solutions", sum(1 for s in sols if s.log_degree > 0) == 2)
        v.check("residuals", all(all(r.is_zero() for r in pf.apply_to_solution(R, s))
                                 for s in sols))
        cL = pf.monodromy_classification(ore.L_z())
        v.check("L_MUM", cL.classification == "MUM" and cL.jordan == [4])
        cR = pf.monodromy_classification(R)
        v.check("R_K", cR.classification == "K" and cR.jordan == [2, 2])


def test_criterion_11_diamond(verdict):
    with verdict(11, 1.0) as v:
        ds = hodge.lmhs_enumeration(4, hodge.DEGENERATION_CONSTRAINTS)
        v.check("three", len(ds) == 3 and set(ds) == set(hodge.PRINTED_DIAMONDS))
        r2 = hodge.lmhs_enumeration(4, hodge.DEGENERATION_CONSTRAINTS + (hodge.rank_N(2),))
        rhombus = hodge.HodgeDeligneDiamond.from_dict({(2, 0): 1, (0, 2): 1, (3, 1): 1, (1, 3): 1})
        v.check("rhombus", r2 == [rhombus])


def test_criterion_12_yukawa(verdict):
    with verdict(12, 1.0) as v:
        v.check("identity", pf.yukawa_check(20, 729).ok)
        v.check("perturbed_fails", not pf.yukawa_check(20, 728).ok
                and not pf.yukawa_check(20, 3 ** 5).ok)


if __name__ == "__main__":
    import sys
    sys.exit(pytest.main([__file__, "-q", "-s"]))
