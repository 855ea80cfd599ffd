from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from cubicmirror.cyclotomic import ONE, ZETA, CyclotomicNumber, mu6, parse

q = st.builds(Fraction, st.integers(-50, 50), st.integers(1, 12))
cyc = st.builds(CyclotomicNumber, q, q)


def test_relations():
    assert ZETA ** 6 == 1
    assert ZETA ** 2 == ZETA - 1
    assert ZETA ** 3 == -1
    assert len(set(mu6())) == 6
    assert (2 * ZETA - 1) ** 2 == -3


@given(cyc, cyc, cyc)
def test_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a


@given(cyc)
def test_inverse_and_norm(a):
    if a.is_zero():
        with pytest.raises(ZeroDivisionError):
            a.inverse()
        return
    assert a * a.inverse() == ONE
    assert a * a.conj() == a.norm()
    assert a.norm() > 0


@given(cyc)
def test_sqrt_of_square(a):
    r = (a * a).sqrt()
    assert r is not None and r * r == a * a


def test_sqrt_of_non_square():
    assert CyclotomicNumber(2).sqrt() is None
    assert CyclotomicNumber(-3).sqrt() in (2 * ZETA - 1, 1 - 2 * ZETA)


@given(cyc)
def test_parse_str_roundtrip(a):
    assert parse(str(a)) == a


def test_parse_examples():
    assert parse("1/2+3/4*z6") == CyclotomicNumber(Fraction(1, 2), Fraction(3, 4))
    assert parse("-z6") == -ZETA
    assert parse("2*z6-1") == 2 * ZETA - 1


@pytest.mark.parametrize("bad", ["", "1+", "z7", "1/2/3", "++1", "z6*", "1/0", "2*z6+3/00"])
def test_parse_rejects(bad):
    with pytest.raises(ValueError):
        parse(bad)


def test_complex_embedding():
    import cmath
    z = cmath.exp(2j * cmath.pi / 6)
    a = CyclotomicNumber(Fraction(1, 3), Fraction(-2, 5))
    b = a * a + 3 * ZETA
    assert abs(complex(float(b.a), 0) + float(b.b) * z - ((1 / 3 - 0.4 * z) ** 2 + 3 * z)) < 1e-12
