"""The concrete lattice data of the (3,3) complete intersection in P^5.

Everything lives in the lattices N (sum-zero) and M (quotient) of ``lattice``.
Indices are 1-based to match the usual notation u_1..u_6, v_1..v_6.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import combinations_with_replacement

from .lattice import M, N, Cone, Fan, Polytope, conv, e


def _ev(i: int) -> list[int]:
    return [int(j == i - 1) for j in range(6)]


def u(i: int) -> tuple[int, ...]:
    """u_i = 3 e_i - e_1 - e_2 - e_3."""
    x = [3 * a for a in _ev(i)]
    for k in (1, 2, 3):
        x[k - 1] -= 1
    return tuple(x)


def v(i: int) -> tuple[int, ...]:
    """v_i = 3 e_i - e_4 - e_5 - e_6."""
    x = [3 * a for a in _ev(i)]
    for k in (4, 5, 6):
        x[k - 1] -= 1
    return tuple(x)


def u_idx(i: int, j: int, k: int) -> tuple[int, ...]:
    """u_{ijk} = -e1 - e2 - e3 + e_i + e_j + e_k."""
    x = [0] * 6
    for a in (1, 2, 3):
        x[a - 1] -= 1
    for a in (i, j, k):
        x[a - 1] += 1
    return tuple(x)


def v_idx(i: int, j: int, k: int) -> tuple[int, ...]:
    x = [0] * 6
    for a in (4, 5, 6):
        x[a - 1] -= 1
    for a in (i, j, k):
        x[a - 1] += 1
    return tuple(x)


def multisets() -> list[tuple[int, int, int]]:
    return list(combinations_with_replacement(range(1, 7), 3))


# --- polytopes ------------------------------------------------------------

@lru_cache(maxsize=None)
def delta() -> Polytope:
    return conv(N, [tuple(6 * a - 1 for a in _ev(i)) for i in range(1, 7)])


@lru_cache(maxsize=None)
def delta1() -> Polytope:
    return conv(N, [u(i) for i in range(1, 7)])


@lru_cache(maxsize=None)
def delta2() -> Polytope:
    return conv(N, [v(i) for i in range(1, 7)])


@lru_cache(maxsize=None)
def nabla1() -> Polytope:
    return conv(M, [(0,) * 6, e(1), e(2), e(3)])


@lru_cache(maxsize=None)
def nabla2() -> Polytope:
    return conv(M, [(0,) * 6, e(4), e(5), e(6)])


def nabla_listed_points() -> list[tuple[int, ...]]:
    """The sixteen points listed for the dual total polytope."""
    pts = [(0,) * 6] + [e(i) for i in range(1, 7)]
    for i in (1, 2, 3):
        for j in (4, 5, 6):
            pts.append(tuple(a + b for a, b in zip(e(i), e(j))))
    return pts


@lru_cache(maxsize=None)
def nabla() -> Polytope:
    return conv(M, nabla_listed_points())


@lru_cache(maxsize=None)
def P() -> Polytope:
    """conv(Delta_1, Delta_2), whose face fan is the normal fan of nabla."""
    return conv(N, [u(i) for i in range(1, 7)] + [v(i) for i in range(1, 7)])


def vertex_order() -> list[tuple[int, ...]]:
    """Global vertex order u_1..u_6, v_1..v_6 used by the triangulation."""
    return [u(i) for i in range(1, 7)] + [v(i) for i in range(1, 7)]


# --- cones of the normal fan of nabla -------------------------------------

def U(i: int) -> Cone:
    return Cone(N, tuple(u(k) for k in range(1, 7) if k != i))


def V(j: int) -> Cone:
    return Cone(N, tuple(v(k) for k in range(1, 7) if k != j))


def C(i: int, j: int) -> Cone:
    gens = [u(k) for k in range(1, 7) if k not in (i, j)]
    gens += [v(k) for k in range(1, 7) if k not in (i, j)]
    return Cone(N, tuple(gens))


def sigma_nabla_cones() -> dict[str, Cone]:
    out = {f"U{i}": U(i) for i in (1, 2, 3)}
    out.update({f"V{j}": V(j) for j in (4, 5, 6)})
    out.update({f"C{i}{j}": C(i, j) for i in (1, 2, 3) for j in (4, 5, 6)})
    return out


@lru_cache(maxsize=None)
def sigma_nabla() -> Fan:
    return Fan.from_cones(N, sigma_nabla_cones().values())


def sigma_delta_cones() -> list[Cone]:
    return [Cone(M, tuple(e(j) for j in range(1, 7) if j != i)) for i in range(1, 7)]


# --- printed cone / dual cone matrices ------------------------------------

# columns of the printed matrices, written as rows here
SIGMA1_RAYS = [(3, 0, 0, -1, -1, -1), (2, 1, 0, -1, -1, -1), (2, 0, 1, -1, -1, -1),
               (2, 0, 0, 0, -1, -1), (2, 0, 0, -1, 0, -1)]
SIGMA1_DUAL = [(-1, -2, -2, -2, -2, 0), (0, 1, 0, 0, 0, 0), (0, 0, 1, 0, 0, 0),
               (1, 1, 1, 2, 1, 0), (1, 1, 1, 1, 2, 0)]
SIGMA2_RAYS = [(-1, 0, -1, 0, 0, 2), (-1, -1, 0, 0, 0, 2), (-1, -1, -1, 1, 0, 2),
               (-1, -1, -1, 0, 1, 2), (-1, -1, -1, 0, 0, 3)]
SIGMA2_DUAL = [(-1, 1, 0, 0, 0, 0), (-1, 0, 1, 0, 0, 0), (0, 0, 0, 1, 0, 0),
               (0, 0, 0, 0, 1, 0), (1, -1, -1, -1, -1, 0)]
U1_DUAL = [(-1, 1, 0, 0, 0, 0), (-1, 0, 1, 0, 0, 0), (0, 0, 0, 1, 0, 0),
           (0, 0, 0, 0, 1, 0), (0, 0, 0, 0, 0, 1)]
U1_EXTRA = (-1, 0, 0, 0, 0, 0)
C36_DUAL = [(1, 0, -1, 0, 0, 0), (0, 1, -1, 0, 0, 0), (0, 0, -1, 0, 0, 0),
            (0, 0, 0, 1, 0, -1), (0, 0, 0, 0, 1, -1), (0, 0, 0, 0, 0, -1)]
RATIONALITY_CONE = [("v", (1, 2, 3)), ("v", (1, 2, 4)), ("v", (2, 2, 4)),
                    ("v", (2, 3, 4)), ("v", (2, 3, 5))]
