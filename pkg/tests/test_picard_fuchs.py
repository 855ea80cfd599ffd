from collections import Counter
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from cubicmirror import ore, picard_fuchs as pf
from cubicmirror.ore import OreOperator
from cubicmirror.polynomial import Poly


def multinomial_dp(n: int) -> int:
    """[t1^n t2^n t3^n] (t1 + t2 + t3)^(3n), squared, by repeated multiplication."""
    poly = Counter({(0, 0, 0): 1})
    for _ in range(3 * n):
        nxt = Counter()
        for (a, b, c), k in poly.items():
            if a < n:
                nxt[(a + 1, b, c)] += k
            if b < n:
                nxt[(a, b + 1, c)] += k
            if c < n:
                nxt[(a, b, c + 1)] += k
        poly = nxt
    return poly[(n, n, n)] ** 2


def test_period_coefficients_against_multinomial_oracle():
    assert [pf.period_coefficient(n) for n in range(3)] == [1, 36, 8100]
    for n in range(11):
        assert pf.period_coefficient(n) == multinomial_dp(n)
        assert pf.period_coefficient(n) == sp.multinomial_coefficients(3, 3 * n)[(n, n, n)] ** 2


def test_recursion_matches_closed_form():
    for n in range(0, 201, 25):
        assert pf.period_coefficient_recursive(n) == pf.period_coefficient(n)


def test_annihilation():
    rep = pf.annihilation_check(ore.L_z(), pf.period_coefficient, 50)
    assert rep.ok and rep.first_failure is None


def test_annihilation_detects_perturbation():
    bad = lambda n: pf.period_coefficient(n) + (n == 1)
    rep = pf.annihilation_check(ore.L_z(), bad, 10)
    assert not rep.ok and rep.first_failure == 1


def test_indicial_polynomials():
    assert pf.indicial_polynomial(ore.R()) == Poly.from_roots([0, 0, 2, 2])
    assert pf.indicial_polynomial(ore.L_z()) == Poly.from_roots([0, 0, 0, 0])


def test_symbolic_recursion_coefficient():
    c = pf.phi_coefficients(ore.R(), 6)
    lam = sp.Symbol("lambda")
    ref = (12 * lam ** 3 + 20 * lam ** 2 + 32 * lam + 16) / ((lam + 6) ** 2 * (lam + 4) ** 2)
    f = c[6]
    got = sp.Poly(list(reversed([sp.Rational(x.numerator, x.denominator) for x in f.num.c])), lam) \
        .as_expr() / sp.Poly(list(reversed([sp.Rational(x.numerator, x.denominator)
                                             for x in f.den.c])), lam).as_expr()
    assert sp.simplify(got - ref) == 0


def test_R_frobenius_basis():
    sols = pf.frobenius_solutions(ore.R(), 24)
    assert [(s.exponent, s.log_degree) for s in sols] == [(0, 0), (0, 1), (2, 0), (2, 1)]
    a0, b0, a2, b2 = sols
    assert a0.plain[0] == 1 and a0.plain[6] == Fraction(1, 36)
    assert b0.plain[6] == Fraction(7, 216)
    assert a2.plain[6] == Fraction(1, 9)
    assert b2.plain[6] == Fraction(5, 108)
    assert sum(1 for s in sols if s.log_degree > 0) == 2
    for s in sols:
        assert all(r.is_zero() for r in pf.apply_to_solution(ore.R(), s))


def test_R_solutions_are_series_in_psi6():
    for s in pf.frobenius_solutions(ore.R(), 36):
        for part in s.parts:
            assert all(c == 0 for n, c in enumerate(part.coeffs) if n % 6)


def test_jet_and_symbolic_agree():
    jet = pf.frobenius_solutions(ore.R(), 24, method="jet")
    sym = pf.frobenius_solutions(ore.R(), 24, method="symbolic")
    assert [s.parts for s in jet] == [s.parts for s in sym]


def test_L_log_solution_harmonic_oracle():
    sols = pf.frobenius_solutions(ore.L_z(), 20)
    assert [s.log_degree for s in sols] == [0, 1, 2, 3]
    phi1 = sols[1]
    for n in range(21):
        h = sum(Fraction(2) / (k - Fraction(2, 3)) + Fraction(2) / (k - Fraction(1, 3))
                - Fraction(4, k) for k in range(1, n + 1))
        assert phi1.parts[0][n] == pf.period_coefficient(n) * h
        assert phi1.parts[1][n] == pf.period_coefficient(n)
    for s in sols:
        assert all(r.is_zero() for r in pf.apply_to_solution(ore.L_z(), s))


def test_resonance_and_irregular():
    res = OreOperator.from_graded({0: Poly([0, -1, 1]), 1: Poly([-1])})
    with pytest.raises(pf.ResonanceError):
        pf.frobenius_solutions(res, 5)
    irr = OreOperator([Poly([1]), 0, Poly([0, 0, 1])])
    with pytest.raises(pf.IrregularSingularPoint):
        pf.frobenius_solutions(irr, 5)


def test_companion_of_R():
    m = pf.companion_matrix(ore.R())
    assert m.matrix[-1] == [0, 0, -4, 4]
    assert m.eigenvalues == [0, 0, 2, 2]
    assert m.charpoly == Poly.from_roots([0, 0, 2, 2])


@given(st.lists(st.integers(-3, 3), min_size=1, max_size=4))
@settings(max_examples=30)
def test_companion_eigenvalues_are_indicial_roots(roots):
    op = OreOperator.from_graded({0: Poly.from_roots(roots), 1: Poly([1])})
    m = pf.companion_matrix(op)
    assert m.eigenvalues == sorted(roots)


def test_classifications():
    L = pf.monodromy_classification(ore.L_z())
    assert L.classification == "MUM" and L.jordan == [4] and L.log_solutions == 3
    R = pf.monodromy_classification(ore.R())
    assert R.classification == "K" and R.jordan == [2, 2] and R.log_solutions == 2
    D2 = pf.monodromy_classification(OreOperator((0, 0, 1)))
    assert D2.classification == "MUM" and D2.jordan == [2]
    half = OreOperator.from_graded({0: Poly.from_roots([Fraction(1, 2), 0]), 1: Poly([1])})
    assert pf.monodromy_classification(half).classification == "other"


def test_classification_invariant_under_sign():
    assert pf.monodromy_classification(-1 * ore.R()).jordan == [2, 2]


def test_yukawa():
    assert pf.yukawa_check(20).ok
    bad = pf.yukawa_check(20, constant=243)
    assert not bad.ok and bad.mismatches[0] == 1
    assert pf.yukawa_check(20, scale=Fraction(5, 3)).ok
