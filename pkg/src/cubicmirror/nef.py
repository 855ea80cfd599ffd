"""Nef-partitions, their duals, and torus-invariant divisor bookkeeping."""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from . import polyhedra as ph
from .lattice import (Fan, LatticeSpace, OriginNotInterior, Polytope, dual_polytope,
                      is_reflexive, minkowski_sum, to_json)
from .linalg import dot, solve


@dataclass(frozen=True)
class NefPartition:
    total: Polytope
    parts: tuple

    @property
    def space(self) -> LatticeSpace:
        return self.total.space


@dataclass(frozen=True)
class NefCheck:
    ok: bool
    reason: str = ""
    witness: object = None

    def __bool__(self):
        return self.ok


def is_nef_partition(np: NefPartition) -> NefCheck:
    """Check the defining conditions; on failure say which and give a witness."""
    space = np.total.space
    for k, part in enumerate(np.parts):
        if part.space != space:
            return NefCheck(False, f"part {k} lives in another space", k)
        if part.dim < 1:
            return NefCheck(False, f"part {k} is zero-dimensional", part.vertices)
        if not part.is_lattice():
            return NefCheck(False, f"part {k} is not a lattice polytope", part.vertices)
        zero = (0,) * space.ambient_rank
        if not part.contains(zero):
            # a facet separating 0 from the part
            for a, b in part.facets:
                if b < 0:
                    return NefCheck(False, f"part {k} misses the origin",
                                    (space.dual().from_local(a), b))
            for a, b in part.equations:
                if b != 0:
                    return NefCheck(False, f"part {k} misses the origin",
                                    (space.dual().from_local(a), b))
    total = np.parts[0]
    for part in np.parts[1:]:
        total = minkowski_sum(total, part)
    if total != np.total:
        extra = sorted(set(total.vertices) ^ set(np.total.vertices))
        return NefCheck(False, "Minkowski sum of the parts differs from the total", extra)
    if not is_reflexive(np.total):
        try:
            d = dual_polytope(np.total)
            bad = next(v for v in d.vertices if not all(isinstance(x, int) for x in v))
        except OriginNotInterior as exc:
            bad = exc.witness
        return NefCheck(False, "total polytope is not reflexive", bad)
    return NefCheck(True)


def dual_nef_partition(np: NefPartition) -> NefPartition:
    """nabla_j = {m : (v, m) + delta_ij >= 0 for all vertices v of all Delta_i}."""
    space = np.total.space
    dual = space.dual()
    d = space.rank
    parts = []
    for j in range(len(np.parts)):
        hs = []
        for i, part in enumerate(np.parts):
            for vloc in part.local_vertices:
                hs.append((vloc, 1 if i == j else 0))
        try:
            verts = ph.vertices_from_halfspaces(hs, d)
        except ph.PolyhedronError as exc:
            raise ValueError(f"dual part {j} is unbounded: {exc}") from exc
        parts.append(Polytope(dual, tuple(dual.from_local(x) for x in verts)))
    total = parts[0]
    for p in parts[1:]:
        total = minkowski_sum(total, p)
    return NefPartition(total, tuple(parts))


# ---------------------------------------------------------------------------
# divisors

@dataclass(frozen=True)
class TorusDivisor:
    fan: Fan
    coefficients: tuple  # aligned with fan.rays

    def __post_init__(self):
        if len(self.coefficients) != len(self.fan.rays):
            raise ValueError("one coefficient per ray is required")

    @classmethod
    def from_map(cls, fan: Fan, coeffs: Mapping) -> "TorusDivisor":
        """Build from a ray -> coefficient map; missing rays get 0."""
        canon = {fan.space.canonical(r): c for r, c in coeffs.items()}
        unknown = set(canon) - set(fan.rays)
        if unknown:
            raise ValueError(f"rays not in the fan: {sorted(unknown)}")
        return cls(fan, tuple(canon.get(r, 0) for r in fan.rays))

    def coefficient(self, ray: Sequence) -> int:
        return self.coefficients[self.fan.ray_index(ray)]

    def support(self) -> list[tuple]:
        return [r for r, c in zip(self.fan.rays, self.coefficients) if c != 0]

    def __add__(self, other: "TorusDivisor") -> "TorusDivisor":
        if other.fan != self.fan or other.fan.rays != self.fan.rays:
            raise ValueError("divisors on different fans")
        return TorusDivisor(self.fan, tuple(a + b for a, b in zip(self.coefficients,
                                                                   other.coefficients)))

    def to_json(self) -> dict:
        return {"fan": to_json(self.fan),
                "coeffs": {str(i): c for i, c in enumerate(self.coefficients) if c != 0}}


def anticanonical(fan: Fan) -> TorusDivisor:
    return TorusDivisor(fan, (1,) * len(fan.rays))


def fundamental_polytope(D: TorusDivisor) -> Polytope:
    """P_D = {x : (x, u_rho) + a_rho >= 0}, in the space dual to the fan."""
    space = D.fan.space.dual()
    hs = [(D.fan.space.to_local(r), a) for r, a in zip(D.fan.rays, D.coefficients)]
    verts = ph.vertices_from_halfspaces(hs, space.rank)
    return Polytope(space, tuple(space.from_local(v) for v in verts))


def divisor_from_polytope(P: Polytope, F: Fan) -> TorusDivisor:
    """a_rho = -min over P of (u_rho, m); vertices suffice for the minimum."""
    if P.space != F.space.dual():
        raise ValueError("polytope must live in the space dual to the fan")
    coeffs = []
    for r in F.rays:
        rl = F.space.to_local(r)
        coeffs.append(-min(dot(rl, m) for m in P.local_vertices))
    return TorusDivisor(F, tuple(coeffs))


class NotCartier(ValueError):
    def __init__(self, msg, cone):
        super().__init__(msg)
        self.cone = cone


@dataclass(frozen=True)
class SupportFunction:
    """Piecewise linear phi with phi(u_rho) = -a_rho, linear on each maximal cone.

    ``local_data[k]`` is m_sigma (local coordinates of the dual space) with
    phi(x) = (x, m_sigma) on the k-th maximal cone.
    """
    fan: Fan
    values: tuple
    local_data: tuple

    def __call__(self, vec: Sequence):
        x = self.fan.space.to_local(vec)
        ks = self.fan.cones_containing(vec)
        if not ks:
            raise ValueError(f"{vec} is outside the support of the fan")
        vals = {dot(x, self.local_data[k]) for k in ks}
        assert len(vals) == 1
        return vals.pop()


def support_function(D: TorusDivisor) -> SupportFunction:
    """Cartier data of D; raises NotCartier naming the failing cone."""
    fan = D.fan
    vals = tuple(-a for a in D.coefficients)
    data = []
    for k, c in enumerate(fan.maximal_cones):
        A = [list(fan.space.to_local(fan.rays[i])) for i in c]
        b = [vals[i] for i in c]
        m = solve(A, b)
        if m is None:
            raise NotCartier(f"no linear functional on cone {k}", fan.cones[k])
        if len(c) < fan.space.rank and not fan.cones[k].dim == fan.space.rank:
            raise NotCartier(f"cone {k} is not full-dimensional", fan.cones[k])
        data.append(tuple(_clean(x) for x in m))
    return SupportFunction(fan, vals, tuple(data))


def _clean(x):
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else x


def pullback_divisor(D: TorusDivisor, fine: Fan) -> TorusDivisor:
    """Pull D back along a refinement: new a_r = -phi_D(r) at each fine ray."""
    phi = support_function(D)
    coarse = D.fan
    coeffs = []
    # cache: which coarse cone contains each fine maximal cone
    owner = {}
    for k, cone_idx in enumerate(fine.maximal_cones):
        j = fine.coarse_cone_of(k, coarse)
        if j is None:
            raise ValueError(f"fine cone {k} is not contained in any coarse cone")
        for i in cone_idx:
            owner.setdefault(i, j)
    for i, r in enumerate(fine.rays):
        j = owner[i]
        val = dot(fine.space.to_local(r), phi.local_data[j])
        if Fraction(val).denominator != 1:
            raise NotCartier("pullback is not integral", coarse.cones[j])
        coeffs.append(-int(val))
    return TorusDivisor(fine, tuple(coeffs))


def dumps_divisor(D: TorusDivisor) -> str:
    return json.dumps(D.to_json(), sort_keys=True)
