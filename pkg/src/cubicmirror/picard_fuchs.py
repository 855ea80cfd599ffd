"""Periods, Frobenius solutions and local monodromy of the Picard-Fuchs operators."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial

from .ore import OreOperator, L_z
from .polynomial import Poly, RatFunc
from .series import TruncatedSeries


class IrregularSingularPoint(ValueError):
    pass


class ResonanceError(ArithmeticError):
    pass


# period -------------------------------------------------------------------

def period_coefficient(n: int) -> int:
    """((3n)!)^2 / (n!)^6, the n-th coefficient of the fundamental period in z."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return (factorial(3 * n) // factorial(n) ** 3) ** 2


def recursion_ratio(n: int) -> Fraction:
    """c_{n+1}/c_n = 3^6 (n+1/3)^2 (n+2/3)^2 / (n+1)^4."""
    return 729 * (n + Fraction(1, 3)) ** 2 * (n + Fraction(2, 3)) ** 2 / Fraction(n + 1) ** 4


def period_coefficient_recursive(n: int) -> Fraction:
    c = Fraction(1)
    for k in range(n):
        c *= recursion_ratio(k)
    return c


def period_series(N: int, var: str = "z") -> TruncatedSeries:
    return TruncatedSeries([period_coefficient(n) for n in range(N + 1)], N, var)


def apply_operator(op: OreOperator, s: TruncatedSeries) -> TruncatedSeries:
    return op.apply(s)


@dataclass
class AnnihilationReport:
    ok: bool
    checked: int
    residuals: dict = field(default_factory=dict)   # n -> nonzero residual

    @property
    def first_failure(self):
        return min(self.residuals) if self.residuals else None

    def to_json(self) -> dict:
        return {"ok": self.ok, "checked": self.checked,
                "residuals": {str(n): str(r) for n, r in sorted(self.residuals.items())}}


def annihilation_check(op: OreOperator, coeff_fn, N: int) -> AnnihilationReport:
    """Check op(sum c_n x^n) = 0 through x^N via the recursion sum_k P_k(n-k) c_{n-k} = 0.

    For L this is exactly the two-term ratio recursion of the period coefficients.
    """
    parts = op.graded()
    if min(parts) < 0:
        raise ValueError("operator must have nonnegative x-grading; multiply through first")
    c = [Fraction(coeff_fn(n)) for n in range(N + 1)]
    res = {}
    for n in range(N + 1):
        r = sum((P(n - k) * c[n - k] for k, P in parts.items() if k <= n), Fraction(0))
        if r:
            res[n] = r
    return AnnihilationReport(not res, N, res)


# local analysis -------------------------------------------------------------

def monic_series_form(op: OreOperator, N: int) -> dict[int, Poly]:
    """{k: P_k} with op/lead = sum_k x^k P_k(theta) + O(x^(N+1)); P_0 is monic."""
    if op.is_zero():
        raise IrregularSingularPoint("zero operator")
    mon = op.monic()
    series = []
    for b in mon.coeffs:
        if b.has_pole_at(0):
            raise IrregularSingularPoint("a normalized coefficient has a pole at 0")
        series.append(TruncatedSeries.from_ratfunc(b, N, op.var))
    out = {}
    for k in range(N + 1):
        P = Poly([s[k] for s in series])
        if not P.is_zero():
            out[k] = P
    return out


def indicial_polynomial(op: OreOperator, point=0) -> Poly:
    if point != 0:
        raise NotImplementedError("only the point 0 is supported; change variables first")
    return monic_series_form(op, 0).get(0, Poly())


@dataclass
class FrobeniusSolution:
    """x^exponent * sum_i log(x)^i parts[i]."""
    exponent: Fraction
    parts: tuple

    @property
    def plain(self) -> TruncatedSeries:
        return self.parts[0]

    @property
    def log_part(self) -> TruncatedSeries:
        if len(self.parts) > 1:
            return self.parts[1]
        return TruncatedSeries.zero(self.plain.order, self.plain.var)

    @property
    def log_degree(self) -> int:
        d = 0
        for i, p in enumerate(self.parts):
            if not p.is_zero():
                d = i
        return d

    def to_json(self, terms: int = 8) -> dict:
        return {"exponent": str(self.exponent), "log_degree": self.log_degree,
                "parts": [[str(a) for a in p.coeffs[:terms]] for p in self.parts]}


def phi_coefficients(op: OreOperator, N: int) -> list[RatFunc]:
    """c_n(lambda) with op(x^lambda sum c_n x^n) = d(lambda) x^lambda, c_0 = 1.

    Coefficients whose recursion right-hand side vanishes identically are 0.
    """
    P = monic_series_form(op, N)
    d = P[0]
    c = [RatFunc(1)]
    for n in range(1, N + 1):
        rhs = RatFunc(0)
        for k, Pk in P.items():
            if 1 <= k <= n and not c[n - k].is_zero():
                rhs = rhs - c[n - k] * Pk.shift(n - k)
        c.append(RatFunc(0) if rhs.is_zero() else rhs / d.shift(n))
    return c


def _jet(p: Poly, at, m: int) -> TruncatedSeries:
    return TruncatedSeries(p.shift(at).c, m - 1, "eps")


def _frobenius_jets(P: dict, lam0: Fraction, m: int, N: int) -> list[TruncatedSeries]:
    """Taylor jets in eps of c_n(lam0 + eps) to order m-1."""
    d = P[0]
    c = [TruncatedSeries.one(m - 1, "eps")]
    for n in range(1, N + 1):
        rhs = TruncatedSeries.zero(m - 1, "eps")
        for k, Pk in P.items():
            if 1 <= k <= n and not c[n - k].is_zero():
                rhs = rhs - _jet(Pk, lam0 + n - k, m) * c[n - k]
        if rhs.is_zero():
            c.append(rhs)
            continue
        den = _jet(d, lam0 + n, m)
        if den[0] == 0:
            raise ResonanceError(f"c_{n} has a pole at lambda = {lam0}")
        c.append(rhs / den)
    return c


def frobenius_solutions(op: OreOperator, N: int = 64, method: str = "jet") -> list[FrobeniusSolution]:
    """Frobenius basis at 0: for each indicial root of multiplicity m, the
    derivatives d^j/dlambda^j of x^lambda sum c_n(lambda) x^n for j < m.

    method "jet" differentiates through exact Taylor jets in lambda; "symbolic"
    differentiates the rational functions c_n(lambda) directly.  Both agree.
    """
    P = monic_series_form(op, N)
    roots = P[0].rational_roots()
    if sum(roots.values()) != P[0].degree:
        raise ValueError("indicial polynomial does not split over Q")
    sym = phi_coefficients(op, N) if method == "symbolic" else None
    out = []
    for lam0, m in roots.items():
        if sym is None:
            jets = _frobenius_jets(P, lam0, m, N)
            derivs = [[j[r] * factorial(r) for j in jets] for r in range(m)]
        else:
            derivs = []
            cur = list(sym)
            for r in range(m):
                vals = []
                for f in cur:
                    if f.has_pole_at(lam0):
                        raise ResonanceError(f"a coefficient has a pole at lambda = {lam0}")
                    vals.append(f(lam0))
                derivs.append(vals)
                cur = [f.derivative() for f in cur]
        for j in range(m):
            parts = tuple(TruncatedSeries([comb(j, i) * a for a in derivs[j - i]], N, op.var)
                          for i in range(j + 1))
            out.append(FrobeniusSolution(Fraction(lam0), parts))
    return out


def apply_to_solution(op: OreOperator, sol: FrobeniusSolution) -> tuple[TruncatedSeries, ...]:
    """op(sol) = x^lambda sum_i log^i r_i; returns the r_i, each kept to N - x_degree.

    theta(x^lambda log^i f) = x^lambda (log^i (theta + lambda) f + i log^(i-1) f).
    """
    lam = sol.exponent
    N = sol.plain.order
    cur = list(sol.parts)
    acc = [TruncatedSeries.zero(N, op.var) for _ in cur]
    for i, a in enumerate(op.coeffs):
        if i:
            nxt = []
            for k, f in enumerate(cur):
                g = f.euler() + f * lam
                if k + 1 < len(cur):
                    g = g + cur[k + 1] * (k + 1)
                nxt.append(g)
            cur = nxt
        if a.is_zero():
            continue
        if a.has_pole_at(0):
            raise ValueError("coefficient has a pole at 0")
        s = TruncatedSeries.from_ratfunc(a, N, op.var)
        acc = [x + s * f for x, f in zip(acc, cur)]
    keep = N - op.x_degree()
    return tuple(x.truncate(keep) for x in acc)


# monodromy ----------------------------------------------------------------

def _charpoly(A: list[list[Fraction]]) -> Poly:
    """det(lambda I - A) by Faddeev-LeVerrier."""
    n = len(A)
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    M = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M <- A M + c_{n-k+1} I
        AM = [[sum(A[i][t] * M[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        for i in range(n):
            AM[i][i] += coeffs[n - k + 1]
        M = AM
        AM2 = [[sum(A[i][t] * M[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        coeffs[n - k] = -sum(AM2[i][i] for i in range(n)) / k
    return Poly(coeffs)


@dataclass
class MonodromyModel:
    matrix: list
    charpoly: Poly
    eigenvalues: list
    jordan: list | None = None

    def to_json(self) -> dict:
        return {"matrix": [[str(a) for a in row] for row in self.matrix],
                "eigenvalues": [str(e) for e in self.eigenvalues],
                "jordan": self.jordan}


def companion_matrix(op: OreOperator, point=0) -> MonodromyModel:
    d = indicial_polynomial(op, point)
    n = op.order
    b = [d[i] for i in range(n)]
    A = [[Fraction(int(j == i + 1)) for j in range(n)] for i in range(n - 1)]
    A.append([-x for x in b])
    cp = _charpoly(A)
    roots = cp.rational_roots() if n else {}
    eig = sorted(r for r, k in roots.items() for _ in range(k))
    return MonodromyModel(A, cp, eig)


@dataclass
class Classification:
    classification: str        # "MUM", "K" or "other"
    jordan: list
    indicial: list
    unipotent: bool
    log_solutions: int
    model: MonodromyModel

    def to_json(self, operator: str = "", point: str = "") -> dict:
        out = {"operator": operator, "point": point,
               "indicial": [str(r) for r in self.indicial],
               "jordan": self.jordan, "classification": self.classification}
        return {k: v for k, v in out.items() if v != ""}


def monodromy_classification(op: OreOperator, point=0, N: int = 12) -> Classification:
    """Jordan profile of log T from Frobenius log chains at each exponent.

    Block sizes are one plus the top log power per exponent; the number of
    blocks of size at least 2 equals the number of log-carrying solution chains.
    """
    model = companion_matrix(op, point)
    roots = model.eigenvalues
    if len(roots) != op.order or any(r.denominator != 1 for r in roots):
        model.jordan = None
        return Classification("other", [], roots, False, 0, model)
    sols = frobenius_solutions(op, N)
    chains: dict = {}
    for s in sols:
        chains[s.exponent] = max(chains.get(s.exponent, 0), s.log_degree + 1)
    profile = sorted(chains.values(), reverse=True)
    logs = sum(1 for s in sols if s.log_degree > 0)
    model.jordan = profile
    if profile == [op.order]:
        kind = "MUM"
    elif profile == [2, 2]:
        kind = "K"
    else:
        kind = "other"
    return Classification(kind, profile, roots, True, logs, model)


# Yukawa -------------------------------------------------------------------

@dataclass
class YukawaReport:
    ok: bool
    order: int
    mismatches: list

    def to_json(self) -> dict:
        return {"ok": self.ok, "order": self.order, "mismatches": self.mismatches}


def yukawa_check(N: int = 20, constant=729, scale=1, op: OreOperator | None = None) -> YukawaReport:
    """Check D Y = -(a_3/2) Y for Y = scale/(1 - constant*z), a_3 the D^3 coefficient of monic op."""
    op = op or L_z()
    a3 = op.monic()[3]
    z = Poly.x()
    Y = TruncatedSeries.from_ratfunc(RatFunc(Poly((scale,)), 1 - Fraction(constant) * z), N, "z")
    rhs = TruncatedSeries.from_ratfunc(a3 * Fraction(-1, 2), N, "z") * Y
    lhs = Y.euler()
    bad = [n for n in range(N + 1) if lhs[n] != rhs[n]]
    return YukawaReport(not bad, N, bad)
