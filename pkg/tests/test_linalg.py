from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from cubicmirror.linalg import (det, int_det, int_rank, inverse, matmul, nullspace, primitive,
                                rank, rref, solve)

small = st.integers(-6, 6)


def matrices(rows=st.integers(1, 5), cols=st.integers(1, 5)):
    return st.tuples(rows, cols).flatmap(
        lambda rc: st.lists(st.lists(small, min_size=rc[1], max_size=rc[1]),
                            min_size=rc[0], max_size=rc[0]))


def square(n=st.integers(1, 5)):
    return n.flatmap(lambda k: st.lists(st.lists(small, min_size=k, max_size=k),
                                        min_size=k, max_size=k))


@given(matrices())
def test_rank_matches_sympy(A):
    assert rank(A) == sympy.Matrix(A).rank()
    assert int_rank(A) == rank(A)


@given(square())
def test_det_matches_sympy(A):
    assert int_det(A) == sympy.Matrix(A).det()
    assert det([[Fraction(x) for x in r] for r in A]) == int_det(A)


@given(matrices())
def test_nullspace_is_kernel(A):
    ns = nullspace(A)
    assert len(ns) == len(A[0]) - rank(A)
    for v in ns:
        assert all(sum(a * x for a, x in zip(r, v)) == 0 for r in A)


@given(matrices(), st.data())
def test_solve_consistent_systems(A, data):
    x0 = data.draw(st.lists(small, min_size=len(A[0]), max_size=len(A[0])))
    b = [sum(a * x for a, x in zip(r, x0)) for r in A]
    x = solve(A, b)
    assert x is not None
    assert [sum(a * xi for a, xi in zip(r, x)) for r in A] == b


def test_solve_inconsistent():
    assert solve([[1, 1], [2, 2]], [1, 3]) is None


@given(square())
def test_inverse(A):
    if int_det(A) == 0:
        with pytest.raises(ZeroDivisionError):
            inverse(A)
        return
    I = matmul(A, inverse(A))
    assert I == [[int(i == j) for j in range(len(A))] for i in range(len(A))]


def test_rref_pivots():
    m, piv = rref([[0, 2, 4], [1, 1, 1]])
    assert piv == [0, 1]
    assert m == [[1, 0, -1], [0, 1, 2]]


@given(st.lists(st.fractions(max_denominator=12), min_size=1, max_size=5))
def test_primitive_on_same_ray(v):
    p = primitive(v)
    from math import gcd
    from functools import reduce
    assert reduce(gcd, p, 0) in (0, 1)
    if any(v):
        k = next(i for i, x in enumerate(v) if x)
        ratio = Fraction(p[k]) / v[k]
        assert ratio > 0
        assert all(Fraction(a) == ratio * b for a, b in zip(p, v))
