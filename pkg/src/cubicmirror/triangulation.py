"""Edgewise and prism subdivisions, the star triangulation of conv(Delta1, Delta2),
and exact verification of triangulations.

Simplices keep an ordered vertex list: the edgewise subdivision depends on the
order of the vertices of the simplex being subdivided, and the prism
subdivision pairs vertices by position.
"""
from __future__ import annotations

import itertools
import json
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from . import objects as ob
from . import polyhedra as ph
from .lattice import Cone, Fan, LatticeSpace, N, Polytope, lattice_points
from .linalg import dot, int_det, int_rank, nullspace, primitive, rank, rref, solve

Point = tuple


@dataclass(frozen=True)
class Simplex:
    ordered_vertices: tuple

    def __post_init__(self):
        object.__setattr__(self, "ordered_vertices", tuple(tuple(v) for v in self.ordered_vertices))
        vs = self.ordered_vertices
        if len(vs) > 1:
            rows = [[a - b for a, b in zip(p, vs[0])] for p in vs[1:]]
            if rank(rows) != len(vs) - 1:
                raise ValueError("simplex vertices are affinely dependent")

    @property
    def dim(self) -> int:
        return len(self.ordered_vertices) - 1

    def __len__(self):
        return len(self.ordered_vertices)

    def __iter__(self):
        return iter(self.ordered_vertices)

    def __getitem__(self, i):
        return self.ordered_vertices[i]

    def translate(self, w: Sequence) -> "Simplex":
        return Simplex(tuple(tuple(a + b for a, b in zip(p, w)) for p in self.ordered_vertices))

    def vertex_set(self) -> frozenset:
        return frozenset(self.ordered_vertices)


@dataclass(frozen=True)
class ColorScheme:
    """k x (d+1) matrix with entries in 0..d, nondecreasing in row-major order.

    Each color c > 0 starts at a distinct column (one dividing line per
    column 1..d); column 0 always starts with color 0.
    """
    matrix: tuple

    def __post_init__(self):
        m = tuple(tuple(r) for r in self.matrix)
        object.__setattr__(self, "matrix", m)
        flat = [x for r in m for x in r]
        d = len(m[0]) - 1
        if flat != sorted(flat) or flat[0] != 0 or set(flat) != set(range(d + 1)):
            raise ValueError("not a color scheme: row-major order must run 0..d")
        starts = [next(i for i, x in enumerate(flat) if x == c) for c in range(1, d + 1)]
        cols = sorted(s % (d + 1) for s in starts)
        if cols != list(range(1, d + 1)):
            raise ValueError("not a color scheme: need one dividing line in each column")

    @classmethod
    def from_rows(cls, rows: Sequence[int], k: int) -> "ColorScheme":
        """Scheme whose dividing line in column j (1-based) sits in row rows[j-1]."""
        d = len(rows)
        pos = sorted((r, j) for j, r in zip(range(1, d + 1), rows))
        mat = [[0] * (d + 1) for _ in range(k)]
        for i in range(k):
            for j in range(d + 1):
                mat[i][j] = sum(1 for p in pos if p <= (i, j))
        return cls(tuple(tuple(r) for r in mat))

    @property
    def k(self) -> int:
        return len(self.matrix)

    @property
    def d(self) -> int:
        return len(self.matrix[0]) - 1

    def columns(self) -> list[tuple[int, ...]]:
        return [tuple(self.matrix[i][j] for i in range(self.k)) for j in range(self.d + 1)]


def color_schemes(k: int, d: int) -> list[ColorScheme]:
    """All k^d schemes; dividing-line rows iterate column by column."""
    return [ColorScheme.from_rows(rows, k) for rows in itertools.product(range(k), repeat=d)]


@dataclass(frozen=True)
class Triangulation:
    point_config: tuple
    maximal_simplices: tuple  # ordered index tuples into point_config

    def __post_init__(self):
        object.__setattr__(self, "point_config", tuple(tuple(p) for p in self.point_config))
        object.__setattr__(self, "maximal_simplices",
                           tuple(tuple(s) for s in self.maximal_simplices))

    @classmethod
    def from_simplices(cls, simplices: Iterable[Simplex], points: Sequence | None = None,
                       ) -> "Triangulation":
        simplices = list(simplices)
        if points is None:
            points = sorted({p for s in simplices for p in s})
        idx = {tuple(p): i for i, p in enumerate(points)}
        return cls(tuple(points), tuple(tuple(idx[p] for p in s) for s in simplices))

    def simplices(self) -> list[Simplex]:
        return [Simplex(tuple(self.point_config[i] for i in s)) for s in self.maximal_simplices]

    def vertex_sets(self) -> set[frozenset]:
        return {frozenset(self.point_config[i] for i in s) for s in self.maximal_simplices}

    def used_points(self) -> set:
        return {self.point_config[i] for s in self.maximal_simplices for i in s}

    def __len__(self):
        return len(self.maximal_simplices)

    def to_json(self) -> dict:
        return {"points": [list(p) for p in self.point_config],
                "simplices": [list(s) for s in self.maximal_simplices]}

    @classmethod
    def from_json(cls, data: dict) -> "Triangulation":
        return cls(tuple(tuple(p) for p in data["points"]),
                   tuple(tuple(s) for s in data["simplices"]))


# ---------------------------------------------------------------------------
# subdivisions

def _average(points: Sequence[Point]) -> Point:
    k = len(points)
    out = []
    for xs in zip(*points):
        f = Fraction(sum(xs), k)
        out.append(f.numerator if f.denominator == 1 else f)
    return tuple(out)


def edgewise_subdivision(s: Simplex, k: int) -> Triangulation:
    """k-edgewise subdivision: one simplex per color scheme.

    The vertex for a column with colors (c_1..c_k) is (p_c1 + ... + p_ck)/k,
    and each output simplex lists its vertices in column order.
    """
    if k < 1:
        raise ValueError("k must be positive")
    d = s.dim
    out = []
    for cs in color_schemes(k, d):
        out.append(Simplex(tuple(_average([s[c] for c in col]) for col in cs.columns())))
    pts = sorted({p for t in out for p in t})
    return Triangulation.from_simplices(out, pts)


def esd_vertex(s: Simplex, colors: Sequence[int]) -> Point:
    return _average([s[c] for c in colors])


def prism_subdivision(d1: Simplex, d2: Simplex) -> Triangulation:
    """a_i = conv(p_0..p_i, q_i..q_d) for a prism conv(d1, d2), d2 = d1 + w."""
    if len(d1) != len(d2):
        raise ValueError("simplices of different dimension")
    shifts = {tuple(b - a for a, b in zip(p, q)) for p, q in zip(d1, d2)}
    if len(shifts) != 1:
        raise ValueError("second simplex is not a translate of the first")
    w = shifts.pop()
    edges = [[a - b for a, b in zip(p, d1[0])] for p in d1.ordered_vertices[1:]]
    if rank(edges + [list(w)]) != d1.dim + 1:
        raise ValueError("prism has zero height")
    d = d1.dim
    out = [Simplex(tuple(d1[:i + 1]) + tuple(d2[i:])) for i in range(d + 1)]
    pts = sorted({p for t in out for p in t})
    return Triangulation.from_simplices(out, pts)


# ---------------------------------------------------------------------------
# the triangulation of P = conv(Delta_1, Delta_2)

class GluingError(RuntimeError):
    pass


def _facet_simplex(labels: Sequence[int], kind: str) -> Simplex:
    f = ob.u if kind == "u" else ob.v
    return Simplex(tuple(f(i) for i in labels))


W_SHIFT = (1, 1, 1, -1, -1, -1)


def facet_triangulations() -> dict[str, list[Simplex]]:
    """tau(F) for the 15 facets, keyed by the name of the matching cone."""
    out: dict[str, list[Simplex]] = {}
    for i in (1, 2, 3):
        base = _facet_simplex([k for k in range(1, 7) if k != i], "u")
        out[f"U{i}"] = edgewise_subdivision(base, 3).simplices()
    for j in (4, 5, 6):
        base = _facet_simplex([k for k in range(1, 7) if k != j], "v")
        out[f"V{j}"] = edgewise_subdivision(base, 3).simplices()
    for i in (1, 2, 3):
        for j in (4, 5, 6):
            base = _facet_simplex([k for k in range(1, 7) if k not in (i, j)], "u")
            cells = []
            for delta in edgewise_subdivision(base, 3).simplices():
                cells.extend(prism_subdivision(delta, delta.translate(W_SHIFT)).simplices())
            out[f"C{i}{j}"] = cells
    return out


def _restriction(cells: Sequence[Simplex], face_vertices: Sequence[Point]) -> set[frozenset]:
    """Faces of the cells lying in conv(face_vertices), of top dimension there."""
    pts = list(face_vertices)
    facets, eqs = ph.hull_facets(pts)
    # a point of the ambient facet lies in the face iff it satisfies its equations
    dim = len(pts[0]) - len(eqs)
    out = set()
    for c in cells:
        inside = [p for p in c if all(dot(a, p) + b == 0 for a, b in eqs)
                  and all(dot(a, p) + b >= 0 for a, b in facets)]
        if len(inside) == dim + 1:
            out.add(frozenset(inside))
    return out


def check_gluing(tri: dict[str, list[Simplex]]) -> list[str]:
    """Compare restrictions of facet triangulations on every common face.

    Returns a list of human-readable problems (empty when everything glues).
    """
    cones = ob.sigma_nabla_cones()
    names = sorted(tri)
    locs = {n: [N.to_local(r) for r in cones[n].rays] for n in names}
    local_cells = {n: [Simplex(tuple(N.to_local(p) for p in c)) for c in tri[n]] for n in names}
    problems = []
    for a, b in itertools.combinations(names, 2):
        common = sorted(set(locs[a]) & set(locs[b]))
        if not common:
            continue
        ra = _restriction(local_cells[a], common)
        rb = _restriction(local_cells[b], common)
        if ra != rb:
            bad = next(iter(ra ^ rb))
            problems.append(f"{a}/{b}: restrictions differ, e.g. {sorted(bad)}")
    return problems


def build_tau_P(check: bool = True) -> Triangulation:
    """Star triangulation of P: glue the facet triangulations and cone from 0.

    Points are ordered as: origin, then u_{ijk} in multiset order (without
    u_123 = 0), then v_{ijk} (without v_456 = 0).  Each maximal simplex lists
    the origin first, followed by the ordered vertices of its boundary cell.
    """
    tri = facet_triangulations()
    if check:
        problems = check_gluing(tri)
        if problems:
            raise GluingError("; ".join(problems))
    points = tau_points()
    idx = {p: i for i, p in enumerate(points)}
    simplices = []
    for name in sorted(tri, key=_facet_sort_key):
        for cell in tri[name]:
            simplices.append((0,) + tuple(idx[p] for p in cell))
    return Triangulation(tuple(points), tuple(simplices))


def _facet_sort_key(name: str):
    return ("UVC".index(name[0]), name)


def tau_points() -> list[Point]:
    pts = [(0,) * 6]
    pts += [ob.u_idx(*m) for m in ob.multisets() if m != (1, 2, 3)]
    pts += [ob.v_idx(*m) for m in ob.multisets() if m != (4, 5, 6)]
    return pts


def boundary_cells(T: Triangulation, apex: int = 0) -> list[tuple[int, ...]]:
    return [tuple(i for i in s if i != apex) for s in T.maximal_simplices]


# ---------------------------------------------------------------------------
# verification

@dataclass
class TriangulationReport:
    checks: dict = field(default_factory=dict)
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def to_json(self) -> dict:
        return {"checks": dict(sorted(self.checks.items())), "violations": self.violations[:20],
                "ok": self.ok}


def affine_chart(points: Sequence[Point]):
    """Injective coordinate projection of aff(points) onto a coordinate subspace.

    Returns (columns, dimension).  Used to verify lower-dimensional
    triangulations (e.g. of a facet) in their own affine hull.
    """
    p0 = points[0]
    dirs = [[a - b for a, b in zip(p, p0)] for p in points[1:]]
    if not dirs:
        return [], 0
    _, piv = rref(dirs)
    return piv, len(piv)


def _project(p, cols):
    return tuple(p[c] for c in cols)


def verify_triangulation(T: Triangulation, P: Polytope | None = None,
                         points: Sequence[Point] | None = None,
                         star: bool | None = None, exhaustive: bool = False,
                         ) -> TriangulationReport:
    """Exact checks of the triangulation axioms, maximality and star property.

    Coordinates are taken as given (ambient tuples).  If ``P`` is None the
    polytope is conv of the point configuration.  ``points`` are the lattice
    points that must appear as vertices (maximality); by default all lattice
    points of P when P is a lattice polytope in a known space, otherwise the
    point configuration.

    Covering and interior-disjointness follow from two exact facts: every
    interior wall is shared by exactly two cells lying on opposite sides,
    every other wall lies in the boundary, and the normalized volumes add up
    to vol(P).  The first makes the covering multiplicity constant on P, the
    second forces it to be one.  With ``exhaustive`` every pair of cells is
    additionally tested for proper intersection.
    """
    rep = TriangulationReport()
    cfg = [tuple(p) for p in T.point_config]
    if P is not None:
        poly_pts = [P.space.to_local(v) for v in P.vertices] if hasattr(P, "space") else None
        cfg_loc = [P.space.to_local(p) for p in cfg]
    else:
        cfg_loc = cfg
        poly_pts = None
    cols, dim = affine_chart(cfg_loc)
    X = [_project(p, cols) for p in cfg_loc]
    hull_pts = [_project(p, cols) for p in poly_pts] if poly_pts else X
    facets, eqs = ph.hull_facets(hull_pts)
    # 1. cells are full-dimensional simplices of the right size
    full = True
    vols = []
    for k, s in enumerate(T.maximal_simplices):
        if len(s) != dim + 1 or len(set(s)) != len(s):
            full = False
            rep.violations.append(f"cell {k} has {len(s)} vertices, expected {dim + 1}")
            vols.append(0)
            continue
        v = ph.simplex_volume([X[i] for i in s])
        if v == 0:
            full = False
            rep.violations.append(f"cell {k} is degenerate")
        vols.append(v)
    rep.checks["full_dimensional"] = full
    # 2. vertices lie in P
    in_p = all(all(dot(a, X[i]) + b >= 0 for a, b in facets) for s in T.maximal_simplices
               for i in s)
    rep.checks["vertices_in_P"] = in_p
    # 3. volume accounting
    total = sum(vols)
    vol_p = ph.polytope_volume(hull_pts) if all(isinstance(x, int) for p in hull_pts for x in p) \
        else _rational_volume(hull_pts)
    rep.checks["volume"] = total == vol_p
    if total != vol_p:
        rep.violations.append(f"sum of cell volumes {total} != vol(P) {vol_p}")
    # 4. pseudomanifold property of walls
    walls = defaultdict(list)
    for k, s in enumerate(T.maximal_simplices):
        for j in range(len(s)):
            walls[frozenset(s[:j] + s[j + 1:])].append((k, s[j]))
    pm = True
    for w, occ in walls.items():
        wl = sorted(w)
        if len(occ) > 2:
            pm = False
            rep.violations.append(f"wall {wl} shared by {len(occ)} cells")
        elif len(occ) == 2:
            normal, off = _hyperplane([X[i] for i in wl])
            sa = dot(normal, X[occ[0][1]]) + off
            sb = dot(normal, X[occ[1][1]]) + off
            if not (sa * sb < 0):
                pm = False
                rep.violations.append(f"cells {occ[0][0]},{occ[1][0]} on the same side of {wl}")
        else:
            if not any(all(dot(a, X[i]) + b == 0 for i in wl) for a, b in facets):
                pm = False
                rep.violations.append(f"wall {wl} of cell {occ[0][0]} is interior but unmatched")
    rep.checks["pseudomanifold"] = pm
    # 5. maximality
    if points is None:
        if P is not None and P.is_lattice():
            req = {tuple(v.coords) for v in lattice_points(P)}
        else:
            req = set(cfg)
    else:
        req = {tuple(p) for p in points}
    used = T.used_points()
    missing = sorted(req - used)
    rep.checks["maximal"] = not missing
    if missing:
        rep.violations.append(f"{len(missing)} lattice points are not vertices, e.g. {missing[0]}")
    # 6. star property
    zero = (0,) * len(cfg[0])
    if star is None:
        # only meaningful when the origin is an interior point
        z = _project(P.space.to_local(zero) if P is not None else zero, cols)
        star = zero in cfg and not eqs and all(dot(a, z) + b > 0 for a, b in facets)
    if star:
        rep.checks["star"] = all(cfg[i] == zero for s in T.maximal_simplices for i in s[:1]) or \
            all(zero in (cfg[i] for i in s) for s in T.maximal_simplices)
    if exhaustive:
        bad = improper_pairs(T, X)
        rep.checks["pairwise_proper"] = not bad
        for a, b in bad[:5]:
            rep.violations.append(f"cells {a} and {b} intersect improperly")
    return rep


def _rational_volume(pts):
    den = 1
    for p in pts:
        for x in p:
            den = den * Fraction(x).denominator // _gcd(den, Fraction(x).denominator)
    scaled = [tuple(int(Fraction(x) * den) for x in p) for p in pts]
    return Fraction(ph.polytope_volume(scaled), den ** len(pts[0]))


def _gcd(a, b):
    from math import gcd
    return gcd(a, b)


def _hyperplane(pts: Sequence[Point]):
    """Normal (integer) and offset of the affine hyperplane through d points in Q^d."""
    p0 = pts[0]
    rows = [[Fraction(a - b) for a, b in zip(p, p0)] for p in pts[1:]]
    d = len(p0)
    if not rows:
        n = [Fraction(1)] + [Fraction(0)] * (d - 1)
    else:
        ns = nullspace(rows, d)
        if len(ns) != 1:
            raise ValueError("points do not span a hyperplane")
        n = ns[0]
    n = primitive(n)
    return n, -dot(n, p0)


def improper_pairs(T: Triangulation, X: Sequence[Point] | None = None) -> list[tuple[int, int]]:
    """Exhaustive pairwise proper-intersection test (quadratic, for small inputs)."""
    if X is None:
        cols, _ = affine_chart(T.point_config)
        X = [_project(p, cols) for p in T.point_config]
    cells = [tuple(s) for s in T.maximal_simplices]
    hs = []
    for s in cells:
        pts = [X[i] for i in s]
        fac = []
        for j in range(len(s)):
            rest = pts[:j] + pts[j + 1:]
            n, off = _hyperplane(rest)
            if dot(n, pts[j]) + off < 0:
                n, off = tuple(-x for x in n), -off
            fac.append((n, off, frozenset(s[:j] + s[j + 1:])))
        hs.append(fac)
    bad = []
    for a in range(len(cells)):
        for b in range(a + 1, len(cells)):
            if not _proper(cells[a], cells[b], hs[a], hs[b], X):
                bad.append((a, b))
    return bad


def _proper(sa, sb, ha, hb, X) -> bool:
    common = set(sa) & set(sb)
    # quick separation by a facet hyperplane of either cell
    for (cells_other, fac) in ((sb, ha), (sa, hb)):
        for n, off, _ in fac:
            vals = [dot(n, X[i]) + off for i in cells_other]
            if all(v <= 0 for v in vals):
                on = {i for i, v in zip(cells_other, vals) if v == 0}
                if on <= common:
                    return True
    # general case: vertices of the intersection must lie in the common face
    d = len(X[0])
    cons = [(n, off) for n, off, _ in ha] + [(n, off) for n, off, _ in hb]
    try:
        verts = ph.vertices_from_halfspaces(cons, d)
    except ph.PolyhedronError:
        return False
    if not verts:
        return True
    if not common:
        return False
    face = [X[i] for i in sorted(common)]
    fac, eqs = ph.hull_facets(face) if len(face) > 1 else ([], None)
    for v in verts:
        if len(face) == 1:
            if tuple(v) != tuple(face[0]):
                return False
            continue
        if not all(dot(a, v) + b == 0 for a, b in eqs) or \
                not all(dot(a, v) + b >= 0 for a, b in fac):
            return False
    return True


# ---------------------------------------------------------------------------
# the fan over a star triangulation

class NotStar(ValueError):
    pass


def fan_from_star_triangulation(T: Triangulation, space: LatticeSpace = N,
                                require_unimodular: bool = True) -> Fan:
    """Cones over the cells of a star triangulation (minus the origin)."""
    zero = (0,) * len(T.point_config[0])
    try:
        z = T.point_config.index(zero)
    except ValueError as exc:
        raise NotStar("origin is not a point of the configuration") from exc
    cones = []
    for k, s in enumerate(T.maximal_simplices):
        if z not in s:
            raise NotStar(f"cell {k} does not contain the origin")
        rays = [T.point_config[i] for i in s if i != z]
        loc = [space.to_local(r) for r in rays]
        if require_unimodular and abs(int_det([list(r) for r in loc])) != 1:
            raise ValueError(f"cone over cell {k} is not unimodular")
        cones.append(tuple(rays))
    rays = sorted({r for c in cones for r in c})
    idx = {r: i for i, r in enumerate(rays)}
    return Fan(space, tuple(rays), tuple(tuple(idx[r] for r in c) for c in cones))


def unimodularity_report(F: Fan) -> tuple[bool, list[int]]:
    """(all unimodular, indices of offending cones) by 5x5 determinants."""
    bad = []
    for k, c in enumerate(F.maximal_cones):
        loc = [list(F.space.to_local(F.rays[i])) for i in c]
        if len(loc) != F.space.rank or abs(int_det(loc)) != 1:
            bad.append(k)
    return not bad, bad


def dumps(T: Triangulation) -> str:
    return json.dumps(T.to_json(), sort_keys=True)
