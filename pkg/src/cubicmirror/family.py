"""The mirror family in Cox coordinates and certificates for its singular fibers.

Cox variables of the resolved toric variety are indexed by RayLabel (110 of
them, one per nonzero lattice point of P).  The fan Pi is the fan over the
star triangulation tau(P).  The family is V(h1, h2) with

    h1 = 3 psi prod_u u - sum_{t=1..3} prod_r r^{phi_t(r)}
    h2 = 3 psi prod_v v - sum_{t=4..6} prod_r r^{phi_t(r)}

where phi_s counts how often s appears in the label of r.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterable, Mapping, Sequence

from . import objects as ob
from .cyclotomic import ONE, ZERO, CyclotomicNumber, mu6
from .lattice import M, N, Cone, Fan, dual_cone, hilbert_basis
from .linalg import det, nullspace, primitive, rank, solve

C6 = CyclotomicNumber


# ---------------------------------------------------------------------------
# ray labels

@dataclass(frozen=True, order=True)
class RayLabel:
    kind: str  # "U" or "V"
    indices: tuple

    def __post_init__(self):
        if self.kind not in ("U", "V"):
            raise ValueError(f"unknown ray kind {self.kind!r}")
        idx = tuple(sorted(self.indices))
        if len(idx) != 3 or not all(1 <= i <= 6 for i in idx):
            raise ValueError(f"bad indices {self.indices!r}")
        if (self.kind, idx) in (("U", (1, 2, 3)), ("V", (4, 5, 6))):
            raise ValueError(f"{self.kind.lower()}{''.join(map(str, idx))} is the origin, not a ray")
        object.__setattr__(self, "indices", idx)

    @classmethod
    def parse(cls, name: str) -> "RayLabel":
        name = name.strip()
        if len(name) != 4 or name[0] not in "uvUV" or not name[1:].isdigit():
            raise ValueError(f"malformed ray label {name!r}")
        return cls(name[0].upper(), tuple(int(c) for c in name[1:]))

    @property
    def name(self) -> str:
        return self.kind.lower() + "".join(map(str, self.indices))

    @property
    def vector(self) -> tuple[int, ...]:
        return ob.u_idx(*self.indices) if self.kind == "U" else ob.v_idx(*self.indices)

    def phi(self, s: int) -> int:
        return self.indices.count(s)

    def __str__(self):
        return self.name


@lru_cache(maxsize=None)
def ray_labels() -> tuple[RayLabel, ...]:
    """All 110 labels: u's then v's, each in multiset order."""
    us = [RayLabel("U", m) for m in ob.multisets() if m != (1, 2, 3)]
    vs = [RayLabel("V", m) for m in ob.multisets() if m != (4, 5, 6)]
    return tuple(us + vs)


@lru_cache(maxsize=None)
def _label_of_vector() -> dict:
    return {N.canonical(r.vector): r for r in ray_labels()}


def label_of(vec: Sequence[int]) -> RayLabel:
    try:
        return _label_of_vector()[N.canonical(vec)]
    except KeyError:
        raise ValueError(f"{tuple(vec)} is not a ray of Pi") from None


def phi(s: int, ray) -> int:
    """Index-support function on labels or on lattice vectors of rays."""
    r = ray if isinstance(ray, RayLabel) else label_of(ray)
    return r.phi(s)


@lru_cache(maxsize=None)
def pi_fan() -> Fan:
    """The smooth fan over the cells of tau(P)."""
    from .triangulation import build_tau_P, fan_from_star_triangulation
    return fan_from_star_triangulation(build_tau_P(check=False))


# ---------------------------------------------------------------------------
# Laurent polynomials

def _canon_torus(exp: Sequence[int], k: int) -> tuple[int, ...]:
    """Reduce the first k exponents modulo the diagonal (last one becomes 0)."""
    if k == 0:
        return tuple(exp)
    c = exp[k - 1]
    return tuple(x - c for x in exp[:k]) + tuple(exp[k:])


@dataclass(frozen=True, eq=False)
class LaurentPolynomial:
    """Sparse polynomial with Q(zeta_6) coefficients.

    If ``torus`` is k > 0, the first k variables are torus characters with
    product 1, and their exponent vectors are stored modulo the diagonal.
    """
    variables: tuple
    terms: Mapping  # exponent tuple -> CyclotomicNumber
    torus: int = 0

    def __post_init__(self):
        clean = {}
        for e, c in self.terms.items():
            if len(e) != len(self.variables):
                raise ValueError("exponent length does not match the variables")
            key = _canon_torus(tuple(e), self.torus)
            if self.torus < len(key) and any(x < 0 for x in key[self.torus:]):
                raise ValueError("negative exponent on a non-torus variable")
            clean[key] = clean.get(key, ZERO) + C6.coerce(c)
        object.__setattr__(self, "terms", {e: c for e, c in sorted(clean.items()) if c})

    @classmethod
    def monomial(cls, variables, exps: Mapping[str, int], coeff=1, torus=0):
        pos = {v: i for i, v in enumerate(variables)}
        e = [0] * len(variables)
        for name, k in exps.items():
            e[pos[name]] += k
        return cls(tuple(variables), {tuple(e): C6.coerce(coeff)}, torus)

    def _like(self, terms):
        return LaurentPolynomial(self.variables, terms, self.torus)

    def _check(self, o):
        if not isinstance(o, LaurentPolynomial) or o.variables != self.variables \
                or o.torus != self.torus:
            raise ValueError("polynomials over different variables")

    def __add__(self, o):
        self._check(o)
        t = dict(self.terms)
        for e, c in o.terms.items():
            t[e] = t.get(e, ZERO) + c
        return self._like(t)

    def __neg__(self):
        return self._like({e: -c for e, c in self.terms.items()})

    def __sub__(self, o):
        return self + (-o)

    def __mul__(self, o):
        if isinstance(o, (int, Fraction, CyclotomicNumber)):
            return self._like({e: c * o for e, c in self.terms.items()})
        self._check(o)
        t = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = t.get(e, ZERO) + c1 * c2
        return self._like(t)

    __rmul__ = __mul__

    def __eq__(self, o):
        return isinstance(o, LaurentPolynomial) and self.variables == o.variables \
            and self.torus == o.torus and self.terms == o.terms

    def __hash__(self):
        return hash((self.variables, tuple(self.terms.items())))

    def __len__(self):
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def subs(self, name: str, value) -> "LaurentPolynomial":
        """Substitute a number for one (non-torus) variable, keeping it with exponent 0."""
        i = self.variables.index(name)
        if i < self.torus:
            raise ValueError("cannot substitute a torus character")
        value = C6.coerce(value)
        t = {}
        for e, c in self.terms.items():
            e2 = e[:i] + (0,) + e[i + 1:]
            t[e2] = t.get(e2, ZERO) + c * value ** e[i]
        return self._like(t)

    def is_divisible_by(self, name: str) -> bool:
        i = self.variables.index(name)
        return all(e[i] >= 1 for e in self.terms)

    def divide_by(self, name: str) -> "LaurentPolynomial":
        if not self.is_divisible_by(name):
            raise ValueError(f"not divisible by {name}")
        i = self.variables.index(name)
        return self._like({e[:i] + (e[i] - 1,) + e[i + 1:]: c for e, c in self.terms.items()})

    def _pretty_exp(self, e):
        if not self.torus:
            return e
        # representative of the torus part with the smallest total degree
        k = self.torus
        best = None
        for s in range(min(e[:k]) - 1, max(e[:k]) + 2):
            cand = tuple(x - s for x in e[:k])
            key = (sum(abs(x) for x in cand), cand)
            if best is None or key < best[0]:
                best = (key, cand)
        return best[1] + e[k:]

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items(), key=lambda it: (sum(map(abs, self._pretty_exp(it[0]))), it[0])):
            mono = []
            for v, k in zip(self.variables, self._pretty_exp(e)):
                if k == 1:
                    mono.append(v)
                elif k != 0:
                    mono.append(f"{v}^{k}")
            cs = str(c)
            if not mono:
                parts.append(cs if cs.startswith("-") else "+" + cs)
                continue
            body = "*".join(mono)
            if c == 1:
                parts.append("+" + body)
            elif c == -1:
                parts.append("-" + body)
            else:
                cs = f"({cs})" if "z6" in cs else cs
                parts.append((cs if cs.startswith("-") else "+" + cs) + "*" + body)
        s = "".join(parts)
        return s[1:] if s.startswith("+") else s

    def to_json(self) -> dict:
        return {"variables": list(self.variables), "torus": self.torus,
                "terms": [{"exp": {v: k for v, k in zip(self.variables, e) if k},
                           "coeff": c.to_json()} for e, c in self.terms.items()]}


TORUS_VARS = tuple(f"t{i}" for i in range(1, 7))


def torus_polynomial(terms: Mapping, extra: Sequence[str] = ()) -> LaurentPolynomial:
    """Build a polynomial in t1..t6 (product 1) plus optional extra variables."""
    return LaurentPolynomial(TORUS_VARS + tuple(extra), dict(terms), torus=6)


# ---------------------------------------------------------------------------
# family equations

PSI = "psi"


def cox_variables(symbolic_psi: bool) -> tuple[str, ...]:
    names = tuple(r.name for r in ray_labels())
    return names + ((PSI,) if symbolic_psi else ())


def _phi_monomial(t: int) -> tuple[int, ...]:
    return tuple(r.phi(t) for r in ray_labels())


def cox_sections(xi1, a: Sequence, xi2, b: Sequence, symbolic_psi: bool = False):
    """s1, s2 for the full family with parameters (xi1, a1..a3), (xi2, a4..a6).

    When ``symbolic_psi`` is set, xi1 and xi2 must be None and the leading
    terms carry the variable psi.
    """
    labels = ray_labels()
    nvar = len(labels) + (1 if symbolic_psi else 0)
    variables = cox_variables(symbolic_psi)
    out = []
    for kind, xi, coeffs, ts in (("U", xi1, a, (1, 2, 3)), ("V", xi2, b, (4, 5, 6))):
        lead = [int(r.kind == kind) for r in labels]
        terms = {}
        if symbolic_psi:
            terms[tuple(lead) + (1,)] = C6(3)
        else:
            terms[tuple(lead)] = 3 * C6.coerce(xi)
        for t, c in zip(ts, coeffs):
            e = _phi_monomial(t) + ((0,) if symbolic_psi else ())
            terms[e] = terms.get(e, ZERO) - C6.coerce(c)
        assert all(len(e) == nvar for e in terms)
        out.append(LaurentPolynomial(variables, terms))
    return tuple(out)


def cox_equations(psi=PSI):
    """(h1, h2) for a numeric psi, or with psi as a variable when psi == 'psi'."""
    if isinstance(psi, str):
        if psi != PSI:
            raise ValueError(f"unknown symbol {psi!r}")
        return cox_sections(None, (1, 1, 1), None, (1, 1, 1), symbolic_psi=True)
    return cox_sections(psi, (1, 1, 1), psi, (1, 1, 1))


def divisor_coefficients(k: int) -> tuple[int, ...]:
    """Coefficients of D1 (k=1, all u rays) or D2 (k=2, all v rays) on Pi."""
    kind = "U" if k == 1 else "V"
    return tuple(int(r.kind == kind) for r in ray_labels())


class NotHomogeneous(ValueError):
    pass


def character_of(exponents: Sequence[int], divisor: Sequence[int]) -> tuple[int, ...]:
    """m in M with a_r - D_r = (r, m) for every ray r (exact), canonical form."""
    rows = [list(N.to_local(r.vector)) for r in ray_labels()]
    rhs = [a - d for a, d in zip(exponents, divisor)]
    m = solve(rows, rhs)
    if m is None or any(Fraction(x).denominator != 1 for x in m):
        raise NotHomogeneous("exponent vector is not in the class of the divisor")
    return M.from_local([int(x) for x in m])


def torus_restriction(h: LaurentPolynomial, divisor: Sequence[int]) -> LaurentPolynomial:
    """Dehomogenize a section of O(D) to the torus: x^a -> t^m with a = D + (r, m)."""
    nlab = len(ray_labels())
    extra = h.variables[nlab:]
    terms = {}
    for e, c in h.terms.items():
        m = character_of(e[:nlab], divisor)
        key = m + tuple(e[nlab:])
        terms[key] = terms.get(key, ZERO) + c
    return torus_polynomial(terms, extra)


def class_degree_check(h: LaurentPolynomial, divisor: Sequence[int]) -> bool:
    """All monomials lie in the class of ``divisor`` (differences are principal)."""
    nlab = len(ray_labels())
    try:
        for e in h.terms:
            character_of(e[:nlab], divisor)
    except NotHomogeneous:
        return False
    return True


def psi_zero_components():
    """(h1|psi=0 / v123, h2|psi=0 / u456), the equations of the component W0."""
    h1, h2 = cox_equations(0)
    return h1.divide_by("v123"), h2.divide_by("u456")


def sigma_nabla_equations(psi=PSI):
    """r1, r2 in the Cox ring of the unresolved fan (variables u1..u6, v1..v6)."""
    names = tuple(f"u{i}" for i in range(1, 7)) + tuple(f"v{i}" for i in range(1, 7))
    symbolic = isinstance(psi, str)
    variables = names + ((PSI,) if symbolic else ())
    out = []
    for lead_kind, ts in (("u", (1, 2, 3)), ("v", (4, 5, 6))):
        lead = {f"{lead_kind}{i}": 1 for i in range(1, 7)}
        if symbolic:
            lead[PSI] = 1
            r = LaurentPolynomial.monomial(variables, lead, 3)
        else:
            r = LaurentPolynomial.monomial(variables, lead, 3 * C6.coerce(psi))
        for t in ts:
            r = r - LaurentPolynomial.monomial(variables, {f"u{t}": 3, f"v{t}": 3})
        out.append(r)
    return tuple(out)


def z_from_psi(psi) -> CyclotomicNumber:
    return (3 * C6.coerce(psi)) ** -6


def z_from_parameters(xi1, a: Sequence, xi2, b: Sequence) -> CyclotomicNumber:
    num = ONE
    for x in list(a) + list(b):
        num = num * C6.coerce(x)
    return num / ((3 * C6.coerce(xi1)) ** 3 * (3 * C6.coerce(xi2)) ** 3)


# ---------------------------------------------------------------------------
# combinatorial lemmas about Pi

def _as_vector(r) -> tuple[int, ...]:
    if isinstance(r, RayLabel):
        return N.canonical(r.vector)
    if isinstance(r, str):
        return N.canonical(RayLabel.parse(r).vector)
    return N.canonical(r)


def no_common_cone(rays: Iterable, fan: Fan | None = None) -> bool:
    """True iff no maximal cone of the fan contains all the given rays."""
    fan = fan or pi_fan()
    vecs = [_as_vector(r) for r in rays]
    ray_set = set(fan.rays)
    if all(v in ray_set for v in vecs):
        want = {fan.ray_index(v) for v in vecs}
        return not any(want <= set(c) for c in fan.maximal_cones)
    return not any(all(c.contains(v) for v in vecs) for c in fan.cones)


@dataclass(frozen=True)
class IndexSupportReport:
    ok: bool
    missing: tuple  # per checked cone: the indices s with phi_s = 0 on all its rays
    failures: tuple

    def __bool__(self):
        return self.ok

    def to_json(self) -> dict:
        return {"ok": self.ok, "cones": len(self.missing),
                "failures": [list(f) for f in self.failures]}


def _ray_phi(vec) -> list[int]:
    """phi_1..phi_6 of a ray of Pi, or of u_i / v_i in the unresolved fan."""
    return [phi(s, vec) for s in range(1, 7)]


def missing_indices(rays: Iterable) -> tuple[int, ...]:
    vecs = [_as_vector(r) for r in rays]
    hit = [0] * 6
    for v in vecs:
        for s, k in enumerate(_ray_phi(v)):
            hit[s] += k
    return tuple(s + 1 for s in range(6) if hit[s] == 0)


def index_support_obstruction(fan: Fan | None = None,
                              cones: Iterable | None = None) -> IndexSupportReport:
    """Every (given) cone misses some index s: phi_s vanishes on all its rays.

    ``cones`` may list ray sets; each must lie in a cone of the fan.
    """
    fan = fan or pi_fan()
    if cones is None:
        sets = [[fan.rays[i] for i in c] for c in fan.maximal_cones]
    else:
        sets = []
        for c in cones:
            c = [_as_vector(r) for r in c]
            if no_common_cone(c, fan):
                raise ValueError(f"{[str(label_of(v)) for v in c]} is not a cone of the fan")
            sets.append(c)
    missing = tuple(missing_indices(s) for s in sets)
    failures = tuple(tuple(s) for s, m in zip(sets, missing) if not m)
    return IndexSupportReport(not failures, missing, failures)


# ---------------------------------------------------------------------------
# torus part: Jacobian ranks

class NotOnFiber(ValueError):
    def __init__(self, msg, residuals):
        super().__init__(msg)
        self.residuals = residuals


def fiber_residuals(psi, t: Sequence) -> tuple:
    psi = C6.coerce(psi)
    t = [C6.coerce(x) for x in t]
    prod = ONE
    for x in t:
        prod = prod * x
    return (t[0] + t[1] + t[2] - 3 * psi, t[3] + t[4] + t[5] - 3 * psi, prod - 1)


def jacobian(t: Sequence) -> list[list]:
    t = [C6.coerce(x) for x in t]
    last = []
    for i in range(6):
        p = ONE
        for j in range(6):
            if j != i:
                p = p * t[j]
        last.append(p)
    one, zero = ONE, ZERO
    return [[one] * 3 + [zero] * 3, [zero] * 3 + [one] * 3, last]


def torus_jacobian_rank(psi, t: Sequence) -> int:
    """Rank of the 3x6 Jacobian at a point of the torus part of the fiber."""
    if len(t) != 6:
        raise ValueError("need six torus coordinates")
    res = fiber_residuals(psi, t)
    if any(r for r in res):
        raise NotOnFiber(f"point is not on the fiber: residuals {[str(r) for r in res]}", res)
    return rank(jacobian(t))


def sample_values(psi) -> list[CyclotomicNumber]:
    """A small grid of coordinates; multiples of psi make square discriminants common."""
    psi = C6.coerce(psi)
    half = Fraction(1, 2)
    base = [C6(a, b) for a in (-2, -1, -half, 0, half, 1, 2) for b in (-1, 0, 1) if (a, b) != (0, 0)]
    return base + [psi * k for k in (1, 2, -1, half, 3, 3 * half)]


def fiber_points(psi, values: Sequence | None = None, limit: int | None = None) -> list[tuple]:
    """Exact points of the torus part of the fiber.

    t1, t2, t4 range over ``values``; t3 = 3psi - t1 - t2, and t5, t6 are the
    roots of X^2 - (3psi - t4) X + 1/(t1 t2 t3 t4) whenever the discriminant
    is a square in Q(zeta_6).
    """
    psi = C6.coerce(psi)
    vals = [C6.coerce(v) for v in (sample_values(psi) if values is None else values)]
    out = []
    for t1, t2, t4 in product(vals, repeat=3):
        t3 = 3 * psi - t1 - t2
        if not t3 or not t1 or not t2 or not t4:
            continue
        s = 3 * psi - t4
        p = (t1 * t2 * t3 * t4).inverse()
        r = (s * s - 4 * p).sqrt()
        if r is None:
            continue
        t5, t6 = (s + r) / 2, (s - r) / 2
        if not t5 or not t6:
            continue
        out.append((t1, t2, t3, t4, t5, t6))
        if limit is not None and len(out) >= limit:
            break
    return out


# ---------------------------------------------------------------------------
# ordinary double points

@dataclass(frozen=True, eq=False)
class QuadraticForm:
    """q(r) = r^T G r with a symmetric Gram matrix over Q(zeta_6)."""
    gram: tuple

    def __post_init__(self):
        g = tuple(tuple(C6.coerce(x) for x in row) for row in self.gram)
        n = len(g)
        if any(len(row) != n for row in g):
            raise ValueError("Gram matrix must be square")
        if any(g[i][j] != g[j][i] for i in range(n) for j in range(n)):
            raise ValueError("Gram matrix must be symmetric")
        object.__setattr__(self, "gram", g)

    @classmethod
    def from_coefficients(cls, n: int, coeffs: Mapping) -> "QuadraticForm":
        """From {(i, j): c} meaning c r_i r_j (i <= j)."""
        g = [[ZERO] * n for _ in range(n)]
        for (i, j), c in coeffs.items():
            c = C6.coerce(c)
            if i == j:
                g[i][i] = g[i][i] + c
            else:
                g[i][j] = g[i][j] + c / 2
                g[j][i] = g[j][i] + c / 2
        return cls(tuple(tuple(r) for r in g))

    @property
    def dim(self) -> int:
        return len(self.gram)

    @property
    def det(self) -> CyclotomicNumber:
        return C6.coerce(det([list(r) for r in self.gram]))

    def is_nondegenerate(self) -> bool:
        return bool(self.det)

    def __call__(self, r: Sequence):
        r = [C6.coerce(x) for x in r]
        return sum((r[i] * self.gram[i][j] * r[j] for i in range(self.dim)
                    for j in range(self.dim)), ZERO)

    def scaled(self, c) -> "QuadraticForm":
        c = C6.coerce(c)
        return QuadraticForm(tuple(tuple(x * c for x in row) for row in self.gram))

    def __eq__(self, o):
        return isinstance(o, QuadraticForm) and self.gram == o.gram

    def __hash__(self):
        return hash(self.gram)

    def to_json(self) -> dict:
        return {"gram": [[_num_json(x) for x in row] for row in self.gram],
                "det": _num_json(self.det)}


def _num_json(x: CyclotomicNumber):
    if x.is_rational():
        return f"{x.a.numerator}/{x.a.denominator}"
    return x.to_json()


# the form r1^2 + r2^2 + r4^2 + r5^2 + (r1 + r2)^2 in variables (r1, r2, r4, r5)
PRINTED_ODP_FORM = QuadraticForm.from_coefficients(
    4, {(0, 0): 2, (1, 1): 2, (0, 1): 2, (2, 2): 1, (3, 3): 1})


class _Jet:
    """Multivariate power series over Q(zeta_6), truncated at total degree ``order``."""

    def __init__(self, n: int, terms: Mapping, order: int = 2):
        self.n, self.order = n, order
        self.terms = {e: C6.coerce(c) for e, c in terms.items() if sum(e) <= order and c}

    @classmethod
    def linear(cls, n, const, coeffs: Mapping[int, int], order=2):
        t = {(0,) * n: const}
        for i, c in coeffs.items():
            e = [0] * n
            e[i] = 1
            t[tuple(e)] = c
        return cls(n, t, order)

    def __add__(self, o):
        t = dict(self.terms)
        for e, c in o.terms.items():
            t[e] = t.get(e, ZERO) + c
        return _Jet(self.n, t, self.order)

    def __neg__(self):
        return _Jet(self.n, {e: -c for e, c in self.terms.items()}, self.order)

    def __sub__(self, o):
        return self + (-o)

    def __mul__(self, o):
        t = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                if sum(e) <= self.order:
                    t[e] = t.get(e, ZERO) + c1 * c2
        return _Jet(self.n, t, self.order)

    def inverse(self) -> "_Jet":
        zero = (0,) * self.n
        c0 = self.terms.get(zero, ZERO)
        if not c0:
            raise ZeroDivisionError("series with zero constant term")
        inv0 = c0.inverse()
        # 1/(c0 (1 + x)) = inv0 * sum (-x)^k with x = self/c0 - 1
        x = _Jet(self.n, {e: c * inv0 for e, c in self.terms.items() if e != zero}, self.order)
        acc = _Jet(self.n, {zero: ONE}, self.order)
        power = _Jet(self.n, {zero: ONE}, self.order)
        for k in range(1, self.order + 1):
            power = power * (-x)
            acc = acc + power
        return _Jet(self.n, {e: c * inv0 for e, c in acc.terms.items()}, self.order)

    def part(self, degree: int) -> dict:
        return {e: c for e, c in self.terms.items() if sum(e) == degree}


@dataclass(frozen=True)
class OdpCertificate:
    psi: CyclotomicNumber
    form: QuadraticForm  # quadratic part of the local equation divided by psi^5
    constant: CyclotomicNumber
    linear: tuple
    printed: QuadraticForm = PRINTED_ODP_FORM

    @property
    def gram(self):
        return self.form.gram

    @property
    def det(self):
        return self.form.det

    @property
    def is_critical(self) -> bool:
        return not self.constant and not any(self.linear)

    @property
    def is_ordinary_double_point(self) -> bool:
        return self.is_critical and self.form.is_nondegenerate()

    @property
    def matches_printed(self) -> bool:
        return self.form == self.printed

    def to_json(self) -> dict:
        d = self.form.to_json()
        d.update({"psi": self.psi.to_json(), "odp": self.is_ordinary_double_point,
                  "matches_printed_form": self.matches_printed,
                  "printed": self.printed.to_json()})
        return d


def local_equation_jet(psi, order: int = 2) -> _Jet:
    """Taylor jet at r = 0 of psi - r4 - r5 - 1/((r1+psi)(r2+psi)(psi-r1-r2)(r4+psi)(r5+psi)).

    Variables are (r1, r2, r4, r5) with r_i = t_i - psi, after eliminating t3
    with the first linear equation and t6 with the product relation.
    """
    psi = C6.coerce(psi)
    n = 4
    factors = [_Jet.linear(n, psi, {0: 1}, order), _Jet.linear(n, psi, {1: 1}, order),
               _Jet.linear(n, psi, {0: -1, 1: -1}, order),
               _Jet.linear(n, psi, {2: 1}, order), _Jet.linear(n, psi, {3: 1}, order)]
    prod = _Jet(n, {(0,) * n: ONE}, order)
    for f in factors:
        prod = prod * f
    return _Jet.linear(n, psi, {2: -1, 3: -1}, order) - prod.inverse()


def odp_certificate(psi) -> OdpCertificate:
    """Hessian certificate at (psi, ..., psi) for psi a sixth root of unity."""
    psi = C6.coerce(psi)
    if psi ** 6 != 1:
        raise ValueError(f"psi = {psi} is not a sixth root of unity")
    jet = local_equation_jet(psi)
    scale = (psi ** 5).inverse()
    coeffs = {}
    for e, c in jet.part(2).items():
        idx = [i for i in range(4) for _ in range(e[i])]
        coeffs[tuple(idx)] = c * scale
    form = QuadraticForm.from_coefficients(4, coeffs)
    lin = tuple(jet.terms.get(tuple(int(i == j) for j in range(4)), ZERO) for i in range(4))
    cert = OdpCertificate(psi, form, jet.terms.get((0,) * 4, ZERO), lin)
    if not cert.is_ordinary_double_point:
        raise ArithmeticError(f"(psi,...,psi) is not an ordinary double point for psi = {psi}")
    return cert


def odp_certificates() -> list[OdpCertificate]:
    return [odp_certificate(w) for w in mu6()]


# ---------------------------------------------------------------------------
# affine patches of the unresolved toric variety

@dataclass(frozen=True)
class AffinePatch:
    cone: Cone
    generators: tuple  # M-vectors, the Hilbert basis of the dual cone
    monomials: tuple  # per generator: {cox variable: exponent}
    relations: tuple  # (lhs exponents, rhs exponents) over the generators
    equations: tuple  # LaurentPolynomial in y1..yk (and psi)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(f"y{i}" for i in range(1, len(self.generators) + 1))

    def relation_strings(self) -> list[str]:
        return [f"{_mono_str(self.names, a)} - {_mono_str(self.names, b)}"
                for a, b in self.relations]

    def to_json(self) -> dict:
        return {"generators": [list(g) for g in self.generators],
                "monomials": [dict(m) for m in self.monomials],
                "relations": self.relation_strings(),
                "equations": [str(e) for e in self.equations]}


def _mono_str(names, exps) -> str:
    parts = []
    for n, k in zip(names, exps):
        if k == 1:
            parts.append(n)
        elif k:
            parts.append(f"{n}^{k}")
    return "*".join(parts) or "1"


def sigma_nabla_variables() -> list[tuple[str, tuple[int, ...]]]:
    return [(f"u{i}", ob.u(i)) for i in range(1, 7)] + [(f"v{i}", ob.v(i)) for i in range(1, 7)]


def _decompose(m, gens, w) -> tuple[int, ...] | None:
    """Nonnegative integer combination of gens equal to m, of least total degree.

    ``w`` is an interior vector of the primal cone, so (w, g) > 0 bounds the
    search.  Ties are broken lexicographically (largest leading coefficient).
    """
    wg = [sum(a * b for a, b in zip(w, g)) for g in gens]
    budget = sum(a * b for a, b in zip(w, m))
    best = None

    def rec(i, rest, acc, left):
        nonlocal best
        if all(x == 0 for x in rest):
            key = (sum(acc), tuple(-x for x in acc))
            if best is None or key < best[0]:
                best = (key, tuple(acc) + (0,) * (len(gens) - len(acc)))
            return
        if i == len(gens) or left <= 0:
            return
        kmax = left // wg[i]
        for k in range(kmax, -1, -1):
            nxt = tuple(r - k * g for r, g in zip(rest, gens[i]))
            rec(i + 1, nxt, acc + [k], left - k * wg[i])

    rec(0, tuple(m), [], budget)
    return None if best is None else best[1]


def affine_patch(sigma: Cone, equations: Sequence[LaurentPolynomial] | None = None,
                 variables: Sequence[tuple[str, tuple]] | None = None) -> AffinePatch:
    """Coordinate ring of U_sigma and the family equations restricted to it.

    ``variables`` pairs Cox variable names with their rays (default: the
    twelve rays u_i, v_j of the unresolved fan, with equations r1, r2).
    """
    if variables is None:
        variables = sigma_nabla_variables()
    if equations is None:
        equations = sigma_nabla_equations(PSI)
    space = sigma.space
    ray_set = set(sigma.rays)
    in_sigma = [(n, r) for n, r in variables if space.canonical(r) in ray_set]
    if len(in_sigma) != len(sigma.rays):
        raise ValueError("every ray of the cone needs a Cox variable")
    dual = dual_cone(sigma)
    gens = sorted(tuple(g.coords) for g in hilbert_basis(dual))
    gens_loc = [M.to_local(g) if space == N else space.dual().to_local(g) for g in gens]
    dual_space = space.dual()
    monos = []
    for g in gens:
        monos.append(tuple((n, sum(a * b for a, b in zip(space.to_local(r), dual_space.to_local(g))))
                           for n, r in in_sigma))
    monos = tuple(tuple((n, k) for n, k in m if k) for m in monos)
    # relations from the kernel of the generator matrix
    A = [[g[i] for g in gens_loc] for i in range(dual_space.rank)]
    rels = []
    for v in nullspace(A, len(gens)):
        k = primitive(v)
        pos = tuple(max(x, 0) for x in k)
        neg = tuple(max(-x, 0) for x in k)
        # the side with the smaller largest exponent is written first
        if (max(pos), pos) > (max(neg), neg):
            pos, neg = neg, pos
        rels.append((pos, neg))
    # restricted equations
    w = [sum(col) for col in zip(*(space.to_local(r) for _, r in in_sigma))]
    names = tuple(f"y{i}" for i in range(1, len(gens) + 1))
    sigma_pos = [(equations[0].variables.index(n), space.to_local(r)) for n, r in in_sigma] \
        if equations else []
    eqs = []
    for h in equations:
        extra = tuple(v for v in h.variables if v not in {n for n, _ in variables})
        out_vars = names + extra
        terms = {}
        for e, c in h.terms.items():
            A2 = [list(r) for _, r in sigma_pos]
            b2 = [e[i] for i, _ in sigma_pos]
            m = solve(A2, b2)
            if m is None or any(Fraction(x).denominator != 1 for x in m):
                raise ValueError("monomial is not a character on the patch")
            m = [int(x) for x in m]
            dec = _decompose(m, gens_loc, w)
            if dec is None:
                raise ValueError("monomial is not regular on the patch")
            key = dec + tuple(e[h.variables.index(v)] for v in extra)
            terms[key] = terms.get(key, ZERO) + c
        eqs.append(LaurentPolynomial(out_vars, terms))
    return AffinePatch(sigma, tuple(gens), monos, tuple(rels), tuple(eqs))


def dumps(obj) -> str:
    return json.dumps(obj.to_json(), sort_keys=True)
