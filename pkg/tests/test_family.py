from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from cubicmirror import family as fm, objects as ob
from cubicmirror.cyclotomic import ONE, ZETA, CyclotomicNumber, mu6
from cubicmirror.lattice import N


def test_110_ray_labels():
    labels = fm.ray_labels()
    assert len(labels) == 110 == len({l.vector for l in labels})
    assert all(fm.label_of(l.vector) == l for l in labels)
    assert set(N.canonical(l.vector) for l in labels) == set(fm.pi_fan().rays)


def test_phi_kronecker():
    r = fm.RayLabel.parse("u114")
    assert [r.phi(s) for s in range(1, 7)] == [2, 0, 0, 1, 0, 0]
    with pytest.raises(ValueError):
        fm.RayLabel.parse("u123")


def test_equations_have_four_monomials():
    for h in fm.cox_equations():
        assert len(h.terms) == 4
    h1, h2 = fm.cox_equations()
    assert fm.class_degree_check(h1, fm.divisor_coefficients(1))
    assert fm.class_degree_check(h2, fm.divisor_coefficients(2))
    assert not fm.class_degree_check(h1, fm.divisor_coefficients(2))


def test_torus_restrictions():
    h1, h2 = fm.cox_equations()
    r1 = fm.torus_restriction(h1, fm.divisor_coefficients(1))
    r2 = fm.torus_restriction(h2, fm.divisor_coefficients(2))
    t = sp.symbols("t1:7")
    psi = sp.Symbol("psi")
    assert sp.expand(sp.sympify(str(r1)) - (3 * psi - t[0] - t[1] - t[2])) == 0
    assert sp.expand(sp.sympify(str(r2)) - (3 * psi - t[3] - t[4] - t[5])) == 0


def test_psi_zero_divisibility():
    h1, h2 = fm.cox_equations(0)
    assert h1.is_divisible_by("v123") and h2.is_divisible_by("u456")
    assert not h1.is_divisible_by("u456")


def test_no_common_cone():
    assert fm.no_common_cone(["v123", "u456"])
    assert not fm.no_common_cone(["v123", "v124"])
    assert not fm.no_common_cone(["u111"])
    rat = [fm.RayLabel(k.upper(), idx) for k, idx in ob.RATIONALITY_CONE]
    assert not fm.no_common_cone(rat)


def test_index_support_obstruction():
    rep = fm.index_support_obstruction()
    assert rep.ok and len(rep.missing) == 1458
    assert fm.missing_indices(ob.C(1, 4).rays) == (1, 4)
    with pytest.raises(ValueError):
        fm.index_support_obstruction(cones=[["u111", "u222", "u333", "u444", "u555", "u666"]])


@pytest.mark.parametrize("psi", mu6())
def test_diagonal_is_singular(psi):
    t = (psi,) * 6
    assert not any(fm.fiber_residuals(psi, t))
    assert fm.torus_jacobian_rank(psi, t) == 2


def test_smooth_witness():
    t = (4, Fraction(-1, 2), Fraction(-1, 2), 4, Fraction(-1, 2), Fraction(-1, 2))
    assert not any(fm.fiber_residuals(1, t))
    assert fm.torus_jacobian_rank(1, t) == 3


def test_off_fiber_rejected():
    with pytest.raises(fm.NotOnFiber) as exc:
        fm.torus_jacobian_rank(1, (1, 1, 1, 1, 1, 2))
    assert any(exc.value.residuals)


def test_sampled_points_lie_on_the_fiber():
    for psi in (ONE, ZETA, CyclotomicNumber(2)):
        for t in fm.fiber_points(psi, limit=4):
            assert not any(fm.fiber_residuals(psi, t))


def _to_sympy(x: CyclotomicNumber):
    z = (1 + sp.sqrt(-3)) / 2
    return sp.Rational(x.a.numerator, x.a.denominator) + sp.Rational(x.b.numerator, x.b.denominator) * z


@given(st.integers(1, 4), st.integers(0, 5))
@settings(max_examples=12)
def test_jacobian_rank_against_sympy(k, rot):
    psi = k * ZETA ** rot
    pts = fm.fiber_points(psi, limit=3) + [(psi,) * 6] * (psi ** 6 == 1)
    for t in pts:
        ts = [_to_sympy(CyclotomicNumber.coerce(x)) for x in t]
        prod = sp.Mul(*ts)
        J = sp.Matrix([[1, 1, 1, 0, 0, 0], [0, 0, 0, 1, 1, 1], [prod / x for x in ts]])
        J = J.applyfunc(sp.radsimp)
        assert fm.torus_jacobian_rank(psi, t) == J.rank(simplify=True)


def _sympy_hessian_at(psi_val):
    r1, r2, r4, r5, psi = sp.symbols("r1 r2 r4 r5 psi")
    t1, t2, t4, t5 = psi + r1, psi + r2, psi + r4, psi + r5
    t3 = sp.solve(sp.Symbol("t1") + sp.Symbol("t2") + sp.Symbol("t3") - 3 * psi,
                  sp.Symbol("t3"))[0].subs({"t1": t1, "t2": t2})
    t6 = 1 / (t1 * t2 * t3 * t4 * t5)
    f = t4 + t5 + t6 - 3 * psi
    vs = (r1, r2, r4, r5)
    H = sp.Matrix(4, 4, lambda i, j: sp.diff(f, vs[i], vs[j]))
    H = H.subs({v: 0 for v in vs}) / psi ** 5
    return [[sp.simplify(x / 2) for x in row] for row in H.tolist()], psi


def _eval_at(expr, psi_sym, value: CyclotomicNumber) -> CyclotomicNumber:
    num, den = sp.fraction(sp.together(expr))
    def ev(p):
        out = CyclotomicNumber(0)
        for c in sp.Poly(p, psi_sym).all_coeffs():
            out = out * value + Fraction(int(sp.numer(c)), int(sp.denom(c)))
        return out
    return ev(num) / ev(den)


def test_odp_gram_against_sympy():
    # f = 3 psi - t4 - t5 - t6 in the module; sympy uses the opposite sign
    G, psi = _sympy_hessian_at(None)
    for w in mu6():
        cert = fm.odp_certificate(w)
        assert cert.is_ordinary_double_point
        for i in range(4):
            for j in range(4):
                assert cert.gram[i][j] == -_eval_at(G[i][j], psi, w)


def test_odp_true_form_and_printed_mismatch():
    cert = fm.odp_certificate(1)
    h = Fraction(1, 2)
    expected = fm.QuadraticForm(((-1, -h, 0, 0), (-h, -1, 0, 0), (0, 0, -1, -h), (0, 0, -h, -1)))
    assert cert.form == expected
    assert cert.det == Fraction(9, 16)
    assert fm.PRINTED_ODP_FORM.det == 3
    assert not cert.matches_printed


def test_odp_rejects_non_roots():
    with pytest.raises(ValueError):
        fm.odp_certificate(2)


def _printed_check(name, rename, printed_rel, printed_eqs):
    patch = fm.affine_patch(ob.sigma_nabla_cones()[name])
    ys = sp.symbols("y1:7")
    psi = sp.Symbol("psi")
    sub = {sp.Symbol(f"y{i + 1}"): ys[rename[i] - 1] for i in range(6)}
    rels = [sp.sympify(r.replace("^", "**")).xreplace(sub) for r in patch.relation_strings()]
    eqs = [sp.sympify(str(e).replace("^", "**")).xreplace(sub) for e in patch.equations]
    assert len(rels) == 1
    assert sp.expand(rels[0] - printed_rel) == 0 or sp.expand(rels[0] + printed_rel) == 0
    for mine, theirs in zip(eqs, printed_eqs):
        assert sp.expand(mine - theirs) == 0 or sp.expand(mine + theirs) == 0
    return patch


def _rename_by_monomial(patch, printed_monomials):
    out = []
    for m in patch.monomials:
        out.append(printed_monomials.index(dict(m)) + 1)
    return out


def test_patch_u1_matches_printed():
    printed = [{"u2": 1, "u3": 1, "u4": 1, "u5": 1, "u6": 1}, {"u2": 3}, {"u3": 3},
               {"u4": 3}, {"u5": 3}, {"u6": 3}]
    patch = fm.affine_patch(ob.U(1))
    ren = _rename_by_monomial(patch, printed)
    y = sp.symbols("y1:7")
    psi = sp.Symbol("psi")
    _printed_check("U1", ren, y[1] * y[2] * y[3] * y[4] * y[5] - y[0] ** 3,
                   [3 * psi * y[0] - 1 - y[1] - y[2], 3 * psi - y[3] - y[4] - y[5]])


def test_patch_c36_matches_printed():
    printed = [{"u1": 3, "v1": 3}, {"u2": 3, "v2": 3}, {"u1": 1, "u2": 1, "u4": 1, "u5": 1},
               {"u4": 3, "v4": 3}, {"u5": 3, "v5": 3}, {"v1": 1, "v2": 1, "v4": 1, "v5": 1}]
    patch = fm.affine_patch(ob.C(3, 6))
    ren = _rename_by_monomial(patch, printed)
    y = sp.symbols("y1:7")
    psi = sp.Symbol("psi")
    _printed_check("C36", ren, y[0] * y[1] * y[3] * y[4] - y[2] ** 3 * y[5] ** 3,
                   [3 * psi * y[2] - y[0] - y[1] - 1, 3 * psi * y[5] - y[3] - y[4] - 1])
