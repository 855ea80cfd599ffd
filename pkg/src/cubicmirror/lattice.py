"""Lattices, polytopes, cones and fans.

The two rank-5 lattices used throughout are realized inside Z^6:

* ``N``: sum-zero vectors, {x in Z^6 : x1 + ... + x6 = 0}
* ``M``: the quotient Z^6 / Z(1,...,1), canonical representative has x6 = 0

The natural pairing N x M -> Z is the ambient dot product, which does not
depend on the representative chosen in M.  Internally both lattices are
identified with Z^5 by dropping the sixth coordinate (of the canonical
representative), and under this identification the pairing becomes the
standard dot product.  A plain ``Z^d`` space is provided for small examples.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, reduce
from math import gcd
from typing import Iterable, Sequence

from . import polyhedra as ph
from .linalg import dot, int_det, int_rank, primitive

Coord = tuple


# ---------------------------------------------------------------------------
# spaces and vectors

@dataclass(frozen=True)
class LatticeSpace:
    kind: str  # "N" (sum zero), "M" (quotient) or "Z" (plain)
    ambient_rank: int = 6

    SUM_ZERO = "N"
    QUOTIENT = "M"
    PLAIN = "Z"

    def __post_init__(self):
        if self.kind not in ("N", "M", "Z"):
            raise ValueError(f"unknown lattice kind {self.kind!r}")

    @property
    def rank(self) -> int:
        return self.ambient_rank - 1 if self.kind in ("N", "M") else self.ambient_rank

    def dual(self) -> "LatticeSpace":
        return LatticeSpace({"N": "M", "M": "N", "Z": "Z"}[self.kind], self.ambient_rank)

    def canonical(self, coords: Sequence) -> Coord:
        c = tuple(_norm(x) for x in coords)
        if len(c) != self.ambient_rank:
            raise ValueError(f"expected {self.ambient_rank} coordinates, got {len(c)}")
        if self.kind == "N" and sum(c) != 0:
            raise ValueError(f"{c} is not a sum-zero vector")
        if self.kind == "M":
            last = c[-1]
            c = tuple(_norm(x - last) for x in c)
        return c

    def contains(self, coords: Sequence) -> bool:
        try:
            self.canonical(coords)
        except ValueError:
            return False
        return True

    def to_local(self, coords: Sequence) -> Coord:
        c = self.canonical(coords)
        return c[:-1] if self.kind in ("N", "M") else c

    def from_local(self, local: Sequence) -> Coord:
        loc = tuple(_norm(x) for x in local)
        if self.kind == "N":
            return loc + (_norm(-sum(loc)),)
        if self.kind == "M":
            return loc + (0,)
        return loc

    def __str__(self):
        return self.kind if self.kind != "Z" else f"Z^{self.ambient_rank}"


N = LatticeSpace("N")
M = LatticeSpace("M")


def Z(d: int) -> LatticeSpace:
    return LatticeSpace("Z", d)


def _norm(x):
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, bool):
        return int(x)
    if isinstance(x, int):
        return x
    f = Fraction(x)
    return f.numerator if f.denominator == 1 else f


@dataclass(frozen=True)
class LatticeVector:
    space: LatticeSpace
    coords: Coord

    def __post_init__(self):
        c = self.space.canonical(self.coords)
        if any(not isinstance(x, int) for x in c):
            raise ValueError(f"{c} is not integral")
        object.__setattr__(self, "coords", c)

    @classmethod
    def from_local(cls, space: LatticeSpace, local: Sequence[int]) -> "LatticeVector":
        return cls(space, space.from_local(local))

    @property
    def local(self) -> Coord:
        return self.space.to_local(self.coords)

    def pair(self, other: "LatticeVector") -> int:
        if other.space != self.space.dual():
            raise ValueError(f"cannot pair {self.space} with {other.space}")
        return dot(self.coords, other.coords)

    def is_primitive(self) -> bool:
        return primitive(self.local) == self.local and any(self.local)

    def __add__(self, o):
        return LatticeVector(self.space, tuple(a + b for a, b in zip(self.coords, o.coords)))

    def __sub__(self, o):
        return LatticeVector(self.space, tuple(a - b for a, b in zip(self.coords, o.coords)))

    def __neg__(self):
        return LatticeVector(self.space, tuple(-a for a in self.coords))

    def __mul__(self, k: int):
        return LatticeVector(self.space, tuple(k * a for a in self.coords))

    __rmul__ = __mul__

    def __iter__(self):
        return iter(self.coords)

    def __repr__(self):
        return f"{self.space}{list(self.coords)}"


def e(i: int, space: LatticeSpace = M) -> Coord:
    """Ambient standard basis vector e_i (1-based), as a coordinate tuple."""
    return tuple(int(j == i - 1) for j in range(space.ambient_rank))


# ---------------------------------------------------------------------------
# polytopes

class OriginNotInterior(ValueError):
    """Raised when an operation needs 0 strictly inside a polytope.

    ``witness`` is a functional (in the dual space, ambient coordinates) and
    ``offset`` an integer b with (w, x) + b >= 0 on the polytope and b <= 0.
    """

    def __init__(self, msg, witness=None, offset=None):
        super().__init__(msg)
        self.witness = witness
        self.offset = offset


@dataclass(frozen=True, eq=False)
class Polytope:
    space: LatticeSpace
    vertices: tuple
    halfspaces: tuple | None = field(default=None, compare=False)

    def __post_init__(self):
        loc = [self.space.to_local(v) for v in self.vertices]
        verts = ph.hull_vertices(loc) if loc else []
        object.__setattr__(self, "vertices",
                           tuple(sorted(self.space.from_local(v) for v in verts)))
        if self.halfspaces is not None:
            hs = tuple((self.space.dual().canonical(a), _norm(b)) for a, b in self.halfspaces)
            object.__setattr__(self, "halfspaces", hs)
            if not self._halfspaces_agree(hs):
                raise ValueError("vertex and halfspace descriptions disagree")

    def _halfspaces_agree(self, hs) -> bool:
        dual = self.space.dual()
        for v in self.vertices:
            if any(dot(dual.to_local(a), self.space.to_local(v)) + b < 0 for a, b in hs):
                return False
        loc = [(dual.to_local(a), b) for a, b in hs]
        try:
            other = ph.vertices_from_halfspaces(loc, self.space.rank, self._local_equations)
        except ph.PolyhedronError:
            return False
        return sorted(other) == sorted(self.local_vertices)

    @classmethod
    def from_halfspaces(cls, space: LatticeSpace, halfspaces, equations=()) -> "Polytope":
        """Polytope {x : (a, x) + b >= 0}; ``a`` given in the dual space."""
        dual = space.dual()
        loc = [(dual.to_local(a), b) for a, b in halfspaces]
        eqs = [(dual.to_local(a), b) for a, b in equations]
        verts = ph.vertices_from_halfspaces(loc, space.rank, eqs)
        return cls(space, tuple(space.from_local(v) for v in verts))

    def __eq__(self, other):
        return isinstance(other, Polytope) and self.space == other.space \
            and self.vertices == other.vertices

    def __hash__(self):
        return hash((self.space, self.vertices))

    def __repr__(self):
        return f"Polytope({self.space}, {len(self.vertices)} vertices)"

    # -- derived data
    @cached_property
    def local_vertices(self) -> list[Coord]:
        return [self.space.to_local(v) for v in self.vertices]

    @cached_property
    def _hull(self):
        return ph.hull_facets(self.local_vertices)

    @property
    def _local_equations(self):
        return self._hull[1]

    @cached_property
    def facets(self) -> list[tuple[Coord, int]]:
        """Facet inequalities (a, b), a.x + b >= 0, in local coordinates."""
        return self._hull[0]

    @property
    def equations(self) -> list[tuple[Coord, int]]:
        return self._hull[1]

    def halfspace_form(self) -> list[tuple[Coord, int]]:
        """Facet inequalities with normals as ambient dual-space vectors."""
        dual = self.space.dual()
        return [(dual.from_local(a), b) for a, b in self.facets]

    @property
    def dim(self) -> int:
        if not self.vertices:
            return -1
        return self.space.rank - len(self.equations)

    def is_full_dimensional(self) -> bool:
        return self.dim == self.space.rank

    def is_lattice(self) -> bool:
        return all(isinstance(x, int) for v in self.vertices for x in v)

    def contains(self, point: Sequence) -> bool:
        p = self.space.to_local(point)
        return all(dot(a, p) + b == 0 for a, b in self.equations) and \
            all(dot(a, p) + b >= 0 for a, b in self.facets)

    def strictly_contains_origin(self) -> bool:
        return self.is_full_dimensional() and all(b > 0 for _, b in self.facets)

    def facet_vertex_sets(self) -> list[tuple[Coord, ...]]:
        """Vertices (ambient) lying on each facet, in facet order."""
        out = []
        for a, b in self.facets:
            out.append(tuple(v for v, lv in zip(self.vertices, self.local_vertices)
                             if dot(a, lv) + b == 0))
        return out

    def lattice_points(self) -> list[LatticeVector]:
        return lattice_points(self)

    def volume(self) -> int:
        """Normalized volume (rank! times Euclidean volume in local coordinates)."""
        if not self.is_full_dimensional():
            return 0
        return ph.polytope_volume(self.local_vertices)

    def __add__(self, other):
        return minkowski_sum(self, other)


def conv(space: LatticeSpace, points: Iterable[Sequence]) -> Polytope:
    return Polytope(space, tuple(tuple(p) for p in points))


def dual_polytope(P: Polytope) -> Polytope:
    """The polar {m : (n, m) >= -1 for all n in P}, in the dual space."""
    if not P.is_full_dimensional():
        a, b = P.equations[0]
        raise OriginNotInterior("polytope is not full-dimensional",
                                P.space.dual().from_local(a), b)
    for a, b in P.facets:
        if b <= 0:
            raise OriginNotInterior("origin is not an interior point",
                                    P.space.dual().from_local(a), b)
    dual = P.space.dual()
    verts = [dual.from_local(tuple(Fraction(x, b) for x in a)) for a, b in P.facets]
    return Polytope(dual, tuple(verts))


def is_reflexive(P: Polytope) -> bool:
    if not P.is_lattice():
        return False
    try:
        return dual_polytope(P).is_lattice()
    except OriginNotInterior:
        return False


def minkowski_sum(P: Polytope, Q: Polytope) -> Polytope:
    if P.space != Q.space:
        raise ValueError("polytopes live in different spaces")
    pts = {tuple(_norm(a + b) for a, b in zip(p, q)) for p in P.vertices for q in Q.vertices}
    return Polytope(P.space, tuple(P.space.canonical(p) for p in pts))


def lattice_points(P: Polytope) -> list[LatticeVector]:
    """All lattice points of P, bounding-box enumeration with exact tests."""
    if not P.vertices:
        return []
    loc = P.local_vertices
    d = len(loc[0])
    lo = [min(v[i] for v in loc) for i in range(d)]
    hi = [max(v[i] for v in loc) for i in range(d)]
    pts = ph.lattice_points_in(P.facets, P.equations, lo, hi)
    return [LatticeVector.from_local(P.space, p) for p in sorted(pts)]


# ---------------------------------------------------------------------------
# cones

@dataclass(frozen=True, eq=False)
class Cone:
    """Rational polyhedral cone given by primitive generators.

    For pointed cones the generator list is irredundant.  A cone with a
    lineality space lists the extreme rays together with +/- a lineality
    basis.
    """
    space: LatticeSpace
    rays: tuple

    def __post_init__(self):
        loc = sorted({primitive(self.space.to_local(r)) for r in self.rays} - {()})
        loc = [r for r in loc if any(r)]
        if loc:
            loc = _irredundant_generators(loc, self.space.rank)
        object.__setattr__(self, "rays", tuple(sorted(self.space.from_local(r) for r in loc)))

    def __eq__(self, other):
        return isinstance(other, Cone) and self.space == other.space and self.rays == other.rays

    def __hash__(self):
        return hash((self.space, self.rays))

    def __repr__(self):
        return f"Cone({self.space}, {[list(r) for r in self.rays]})"

    @cached_property
    def local_rays(self) -> list[Coord]:
        return [self.space.to_local(r) for r in self.rays]

    @cached_property
    def _hrep(self):
        d = self.space.rank
        if not self.rays:
            return [], [tuple(int(i == j) for j in range(d)) for i in range(d)]
        return ph.dd_cone(self.local_rays, d)

    @property
    def facet_normals(self) -> list[Coord]:
        """Local normals a with a.x >= 0 on the cone (irredundant)."""
        return self._hrep[0]

    @property
    def orthogonal(self) -> list[Coord]:
        """Local vectors a with a.x == 0 on the cone."""
        return self._hrep[1]

    @property
    def dim(self) -> int:
        return int_rank(self.local_rays) if self.rays else 0

    def is_pointed(self) -> bool:
        if not self.rays:
            return True
        return int_rank(list(self.facet_normals) + list(self.orthogonal)) == self.space.rank

    def contains(self, vec: Sequence) -> bool:
        x = self.space.to_local(vec)
        return all(dot(o, x) == 0 for o in self.orthogonal) and \
            all(dot(a, x) >= 0 for a in self.facet_normals)

    def is_simplicial(self) -> bool:
        return len(self.rays) == self.dim

    def is_unimodular(self) -> bool:
        if not self.is_simplicial():
            return False
        if self.dim == self.space.rank:
            return abs(int_det([list(r) for r in self.local_rays])) == 1
        # lower-dimensional: generators extend to a basis iff the maximal minors are coprime
        minors = [int_det([[r[c] for c in cols] for r in self.local_rays])
                  for cols in itertools.combinations(range(self.space.rank), self.dim)]
        return reduce(gcd, minors, 0) == 1

    def face(self, normal: Sequence) -> "Cone":
        """Face cut out by a supporting normal (local coordinates)."""
        return Cone(self.space, tuple(r for r, lr in zip(self.rays, self.local_rays)
                                      if dot(normal, lr) == 0))

    def faces(self) -> list["Cone"]:
        """All faces including {0} and the cone itself."""
        inc = [frozenset(i for i, r in enumerate(self.local_rays) if dot(a, r) == 0)
               for a in self.facet_normals]
        full = frozenset(range(len(self.rays)))
        found = {full}
        frontier = [full]
        while frontier:
            nxt = []
            for f in frontier:
                for g in inc:
                    h = f & g
                    if h not in found:
                        found.add(h)
                        nxt.append(h)
            frontier = nxt
        return [Cone(self.space, tuple(self.rays[i] for i in sorted(f))) for f in found]


def _irredundant_generators(loc: list[Coord], d: int) -> list[Coord]:
    facets, lin = ph.dd_cone(loc, d)
    if int_rank(list(facets) + list(lin)) == d:
        # pointed: r spans an extreme ray iff its tight constraints cut out a line
        return [r for r in loc
                if int_rank([a for a in facets if dot(a, r) == 0] + list(lin)) == d - 1]
    keep = list(loc)
    for r in loc:
        if _in_cone_of_others(r, keep):
            keep.remove(r)
    return keep


def _in_cone_of_others(r, loc) -> bool:
    others = [x for x in loc if x != r]
    if not others:
        return False
    d = len(r)
    facets, lin = ph.dd_cone(others, d)
    return all(dot(o, r) == 0 for o in lin) and all(dot(a, r) >= 0 for a in facets)


def cone(space: LatticeSpace, gens: Iterable[Sequence]) -> Cone:
    return Cone(space, tuple(tuple(g) for g in gens))


def dual_cone(C: Cone) -> Cone:
    """{m : (n, m) >= 0 for all n in C} with primitive, irredundant generators."""
    d = C.space.rank
    dual = C.space.dual()
    if not C.rays:
        gens = [tuple(int(i == j) for j in range(d)) for i in range(d)]
        gens += [tuple(-x for x in g) for g in gens]
    else:
        rays, lin = ph.dd_cone(C.local_rays, d)
        gens = list(rays) + list(lin) + [tuple(-x for x in l) for l in lin]
    return Cone(dual, tuple(dual.from_local(g) for g in gens))


def hilbert_basis(C: Cone) -> list[LatticeVector]:
    """Minimal generators of the semigroup C ∩ lattice (C pointed, full-dim)."""
    if not C.is_pointed():
        raise ph.PolyhedronError("hilbert_basis needs a pointed cone")
    hb = ph.hilbert_basis_of_cone(C.local_rays)
    return [LatticeVector.from_local(C.space, v) for v in hb]


# ---------------------------------------------------------------------------
# fans

@dataclass(frozen=True, eq=False)
class Fan:
    space: LatticeSpace
    rays: tuple
    maximal_cones: tuple  # tuples of indices into rays

    def __post_init__(self):
        rays = tuple(self.space.canonical(r) for r in self.rays)
        used = sorted({i for c in self.maximal_cones for i in c})
        if used != list(range(len(rays))):
            raise ValueError("ray list must equal the union of cone generators")
        object.__setattr__(self, "rays", rays)
        object.__setattr__(self, "maximal_cones",
                           tuple(sorted(tuple(sorted(c)) for c in self.maximal_cones)))

    @classmethod
    def from_cones(cls, space: LatticeSpace, cones: Iterable[Cone]) -> "Fan":
        cones = list(cones)
        rays = sorted({r for c in cones for r in c.rays})
        idx = {r: i for i, r in enumerate(rays)}
        return cls(space, tuple(rays), tuple(tuple(idx[r] for r in c.rays) for c in cones))

    def __eq__(self, other):
        return isinstance(other, Fan) and self.space == other.space and \
            self.cone_set() == other.cone_set()

    def __hash__(self):
        return hash(frozenset(self.cone_set()))

    def __repr__(self):
        return f"Fan({self.space}, {len(self.rays)} rays, {len(self.maximal_cones)} cones)"

    def cone_set(self) -> set[frozenset]:
        return {frozenset(self.rays[i] for i in c) for c in self.maximal_cones}

    @cached_property
    def cones(self) -> list[Cone]:
        return [Cone(self.space, tuple(self.rays[i] for i in c)) for c in self.maximal_cones]

    def ray_index(self, vec: Sequence) -> int:
        return self.rays.index(self.space.canonical(vec))

    def cones_containing(self, vec: Sequence) -> list[int]:
        return [i for i, c in enumerate(self.cones) if c.contains(vec)]

    def is_complete_on(self, directions: Iterable[Sequence]) -> bool:
        return all(self.cones_containing(d) for d in directions)

    def is_simplicial(self) -> bool:
        return all(c.is_simplicial() for c in self.cones)

    def is_smooth(self) -> bool:
        return all(c.is_unimodular() for c in self.cones)

    def intersections_are_faces(self) -> bool:
        """Every pairwise intersection of maximal cones is a face of both.

        Exact but quadratic; intended for small fans.
        """
        cs = self.cones
        for i in range(len(cs)):
            for j in range(i + 1, len(cs)):
                if not _intersection_is_common_face(cs[i], cs[j]):
                    return False
        return True

    def refines(self, coarse: "Fan") -> bool:
        """Each maximal cone lies inside some maximal cone of ``coarse``."""
        return all(self.coarse_cone_of(k, coarse) is not None for k in range(len(self.cones)))

    def coarse_cone_of(self, k: int, coarse: "Fan") -> int | None:
        c = self.cones[k]
        for j, big in enumerate(coarse.cones):
            if all(big.contains(r) for r in c.rays):
                return j
        return None


def _intersection_is_common_face(a: Cone, b: Cone) -> bool:
    d = a.space.rank
    # intersection as an H-cone, then its generators
    cons = a.facet_normals + b.facet_normals
    for o in a.orthogonal + b.orthogonal:
        cons += [o, tuple(-x for x in o)]
    rays, lin = ph.dd_cone(cons, d)
    if lin:
        return False
    inter = set(primitive(r) for r in rays)

    def is_face(c: Cone) -> bool:
        # the smallest face of c containing inter must equal inter's cone
        if not inter:
            return True
        s = tuple(sum(x) for x in zip(*inter))
        tight = [a_ for a_ in c.facet_normals if dot(a_, s) == 0]
        face_rays = [r for r in c.local_rays if all(dot(t, r) == 0 for t in tight)]
        return Cone(c.space, tuple(c.space.from_local(r) for r in face_rays)) == \
            Cone(c.space, tuple(c.space.from_local(r) for r in inter))

    return is_face(a) and is_face(b)


def normal_fan(P: Polytope) -> Fan:
    """Inner normal fan: one cone (cone(P - v))^dual per vertex v."""
    if not P.is_full_dimensional():
        raise ph.PolyhedronError("normal fan needs a full-dimensional polytope")
    cones = []
    for v in P.vertices:
        gens = [tuple(_norm(a - b) for a, b in zip(w, v)) for w in P.vertices if w != v]
        gens = [P.space.canonical(g) for g in gens]
        gens = [P.space.from_local(primitive(P.space.to_local(g))) for g in gens]
        cones.append(dual_cone(Cone(P.space, tuple(gens))))
    return Fan.from_cones(P.space.dual(), cones)


def face_fan(P: Polytope) -> Fan:
    """Fan of cones over the proper faces of P (maximal cones over facets)."""
    if not P.strictly_contains_origin():
        bad = next(((a, b) for a, b in P.facets if b <= 0), None)
        w = P.space.dual().from_local(bad[0]) if bad else None
        raise OriginNotInterior("face fan needs the origin in the interior", w,
                                bad[1] if bad else None)
    cones = [Cone(P.space, vs) for vs in P.facet_vertex_sets()]
    return Fan.from_cones(P.space, cones)


# ---------------------------------------------------------------------------
# JSON

_BIG = 2 ** 53


def _jint(x):
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else _jint(x.numerator)
    return str(x) if abs(x) >= _BIG else x


def _pint(x):
    if isinstance(x, str):
        f = Fraction(x)
        return f.numerator if f.denominator == 1 else f
    if isinstance(x, bool) or not isinstance(x, int):
        raise ValueError(f"expected an integer, got {x!r}")
    return x


def to_json(obj) -> dict:
    if isinstance(obj, Polytope):
        return {"space": _space_tag(obj.space),
                "vertices": [[_jint(x) for x in v] for v in obj.vertices]}
    if isinstance(obj, Cone):
        return {"space": _space_tag(obj.space), "rays": [[_jint(x) for x in r] for r in obj.rays]}
    if isinstance(obj, Fan):
        return {"space": _space_tag(obj.space),
                "rays": [[_jint(x) for x in r] for r in obj.rays],
                "maximal_cones": [list(c) for c in obj.maximal_cones]}
    raise TypeError(type(obj))


def _space_tag(s: LatticeSpace) -> str:
    return s.kind if s.kind != "Z" else f"Z{s.ambient_rank}"


def _space_of(tag: str) -> LatticeSpace:
    if tag == "N":
        return N
    if tag == "M":
        return M
    if tag.startswith("Z"):
        return Z(int(tag[1:]))
    raise ValueError(f"unknown space {tag!r}")


def from_json(data: dict):
    if not isinstance(data, dict) or "space" not in data:
        raise ValueError("missing 'space'")
    space = _space_of(data["space"])
    if "maximal_cones" in data:
        rays = tuple(tuple(_pint(x) for x in r) for r in data["rays"])
        return Fan(space, rays, tuple(tuple(c) for c in data["maximal_cones"]))
    if "vertices" in data:
        verts = tuple(tuple(_pint(x) for x in v) for v in data["vertices"])
        if not verts:
            raise ValueError("empty polytope")
        return Polytope(space, verts)
    if "rays" in data:
        return Cone(space, tuple(tuple(_pint(x) for x in r) for r in data["rays"]))
    raise ValueError("unrecognized lattice object")


def dumps(obj) -> str:
    return json.dumps(to_json(obj), sort_keys=True)
