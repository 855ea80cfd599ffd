"""Differential operators sum_i a_i(x) theta^i with theta = x d/dx.

Coefficients are rational functions of x (polynomials being the common
case).  Multiplication uses theta f = f theta + theta(f); right division is
the Euclidean algorithm of the Ore ring Q(x)[theta].
"""
from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Mapping, Sequence

from .polynomial import Poly, RatFunc, poly_gcd
from .series import TruncatedSeries


class OreOperator:
    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs: Sequence, var: str = "x"):
        c = [RatFunc.coerce(a) for a in coeffs]
        while c and c[-1].is_zero():
            c.pop()
        self.coeffs = tuple(c)
        self.var = var

    # constructors ---------------------------------------------------------
    @classmethod
    def theta(cls, var: str = "x") -> "OreOperator":
        return cls((0, 1), var)

    @classmethod
    def scalar(cls, f, var: str = "x") -> "OreOperator":
        return cls((f,), var)

    @classmethod
    def x(cls, var: str = "x") -> "OreOperator":
        return cls((Poly.x(),), var)

    @classmethod
    def from_theta_poly(cls, p: Poly, f=1, var: str = "x") -> "OreOperator":
        """f(x) * p(theta)."""
        f = RatFunc.coerce(f)
        return cls([f * a for a in p.c], var)

    @classmethod
    def from_graded(cls, parts: Mapping[int, Poly], var: str = "x") -> "OreOperator":
        """sum_k x^k P_k(theta); k may be negative."""
        n = max((p.degree for p in parts.values()), default=-1) + 1
        coeffs = [RatFunc(0)] * n
        for k, p in parts.items():
            xk = RatFunc(Poly([0] * k + [1])) if k >= 0 else RatFunc(1, Poly([0] * (-k) + [1]))
            for i, a in enumerate(p.c):
                coeffs[i] = coeffs[i] + xk * a
        return cls(coeffs, var)

    # basic data -----------------------------------------------------------
    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> RatFunc:
        return self.coeffs[-1]

    def __getitem__(self, i: int) -> RatFunc:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else RatFunc(0)

    def _check(self, o: "OreOperator"):
        if o.var != self.var:
            raise ValueError(f"operators in {self.var} and {o.var}")

    def _coerce(self, o):
        if isinstance(o, OreOperator):
            self._check(o)
            return o
        if isinstance(o, (int, Fraction, Poly, RatFunc)):
            return OreOperator.scalar(o, self.var)
        return None

    # arithmetic -----------------------------------------------------------
    def __add__(self, o):
        o = self._coerce(o)
        if o is None:
            return NotImplemented
        n = max(len(self.coeffs), len(o.coeffs))
        return OreOperator([self[i] + o[i] for i in range(n)], self.var)

    __radd__ = __add__

    def __neg__(self):
        return OreOperator([-a for a in self.coeffs], self.var)

    def __sub__(self, o):
        o = self._coerce(o)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        o = self._coerce(o)
        if o is None:
            return NotImplemented
        if self.is_zero() or o.is_zero():
            return OreOperator((), self.var)
        out = [RatFunc(0)] * (self.order + o.order + 1)
        for j, b in enumerate(o.coeffs):
            if b.is_zero():
                continue
            # theta^k(b) for k = 0..order of self
            derivs = [b]
            for _ in range(self.order):
                derivs.append(derivs[-1].euler())
            for i, a in enumerate(self.coeffs):
                if a.is_zero():
                    continue
                for k in range(i + 1):
                    if not derivs[k].is_zero():
                        out[i - k + j] = out[i - k + j] + a * derivs[k] * comb(i, k)
        return OreOperator(out, self.var)

    def __rmul__(self, o):
        o = self._coerce(o)
        if o is None:
            return NotImplemented
        return o * self

    def __pow__(self, k: int) -> "OreOperator":
        out = OreOperator.scalar(1, self.var)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, o):
        if not isinstance(o, OreOperator):
            return NotImplemented
        return self.var == o.var and self.coeffs == o.coeffs

    def __hash__(self):
        return hash((self.var, self.coeffs))

    def monic(self) -> "OreOperator":
        lc = self.leading()
        return OreOperator([a / lc for a in self.coeffs], self.var)

    def clear_denominators(self) -> "OreOperator":
        """Left multiple by the lcm of coefficient denominators; coefficients become polynomials."""
        den = Poly((1,))
        for a in self.coeffs:
            den = den * a.den // poly_gcd(den, a.den)
        return OreOperator([a * den for a in self.coeffs], self.var)

    def is_polynomial(self) -> bool:
        return all(a.is_polynomial() for a in self.coeffs)

    def conjugate_by_power(self, s) -> "OreOperator":
        """x^(-s) * self * x^s, i.e. theta replaced by theta + s."""
        out = OreOperator((), self.var)
        shift = OreOperator((s, 1), self.var)
        for i, a in enumerate(self.coeffs):
            out = out + OreOperator.scalar(a, self.var) * shift ** i
        return out

    # division -------------------------------------------------------------
    def right_divide(self, P: "OreOperator") -> tuple["OreOperator", "OreOperator"]:
        """(q, r) with self = q * P + r and order(r) < order(P)."""
        self._check(P)
        if P.is_zero():
            raise ZeroDivisionError("division by the zero operator")
        q = OreOperator((), self.var)
        r = self
        lp = P.leading()
        while not r.is_zero() and r.order >= P.order:
            k = r.order - P.order
            t = OreOperator([RatFunc(0)] * k + [r.leading() / lp], self.var)
            q = q + t
            r = r - t * P
        return q, r

    # series action --------------------------------------------------------
    def x_degree(self) -> int:
        return max((max(a.num.degree, a.den.degree) for a in self.coeffs), default=0)

    def apply(self, s: TruncatedSeries) -> TruncatedSeries:
        """Apply to a power series; the result is kept to order N - x_degree."""
        if s.var != self.var:
            raise ValueError(f"series in {s.var}, operator in {self.var}")
        N = s.order
        out = TruncatedSeries.zero(N, s.var)
        cur = s
        for i, a in enumerate(self.coeffs):
            if i:
                cur = cur.euler()
            if a.is_zero():
                continue
            if a.den(0) == 0:
                raise ValueError("coefficient has a pole at 0; use a Laurent shift first")
            out = out + TruncatedSeries.from_ratfunc(a, N, s.var) * cur
        return out.truncate(N - self.x_degree())

    def graded(self) -> dict[int, Poly]:
        """{k: P_k} with self = sum_k x^k P_k(theta); coefficients must be Laurent polynomials."""
        parts: dict[int, list] = {}
        for i, a in enumerate(self.coeffs):
            den = a.den
            if den.degree > 0 and any(den.c[:-1]):
                raise ValueError("coefficient is not a Laurent polynomial")
            shift = den.degree
            scale = den.lead()
            for j, b in enumerate(a.num.c):
                if b:
                    parts.setdefault(j - shift, [Fraction(0)] * len(self.coeffs))[i] += b / scale
        return {k: Poly(v) for k, v in sorted(parts.items())}

    def change_variable(self, k: int, c, m: int, new_var: str) -> "OreOperator":
        """Substitute x^k = c * y^m; then theta_x = (k/m) theta_y.

        Every coefficient must be a function of x^k.
        """
        c = Fraction(c)
        if m > 0:
            val = RatFunc(Poly([0] * m + [c]))
        else:
            val = RatFunc(Poly((c,)), Poly([0] * (-m) + [1]))
        scale = Fraction(k, m)
        out = OreOperator((), new_var)
        th = OreOperator((0, scale), new_var)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            out = out + OreOperator.scalar(a.substitute_power(k, val), new_var) * th ** i
        return out

    def to_str(self, theta: str | None = None) -> str:
        th = theta or ("D" if self.var == "z" else "Q" if self.var == "psi" else "theta")
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            a = self.coeffs[i]
            if a.is_zero():
                continue
            t = "" if i == 0 else (th if i == 1 else f"{th}^{i}")
            cs = a.to_str(self.var)
            if t and cs == "1":
                parts.append(t)
            elif t:
                parts.append(f"({cs})*{t}")
            else:
                parts.append(f"({cs})")
        return " + ".join(parts) or "0"

    def __repr__(self):
        return f"OreOperator[{self.var}]({self.to_str()})"


def theta_poly(coeffs: Sequence) -> Poly:
    return Poly(coeffs)


def _lin(a) -> Poly:
    """theta + a."""
    return Poly((Fraction(a), 1))


# built-in operators -------------------------------------------------------

def L_z() -> OreOperator:
    """D^4 - 3^6 z (D + 1/3)^2 (D + 2/3)^2 in z, D = z d/dz."""
    th = Poly.x()
    P0 = th ** 4
    P1 = -729 * _lin(Fraction(1, 3)) ** 2 * _lin(Fraction(2, 3)) ** 2
    return OreOperator.from_graded({0: P0, 1: P1}, "z")


def L_psi() -> OreOperator:
    """(1/6^4)(Q^4 - psi^-6 (Q - 2)^2 (Q - 4)^2) in psi, Q = psi d/dpsi."""
    Q = Poly.x()
    return OreOperator.from_graded({0: Q ** 4 * Fraction(1, 1296),
                                    -6: -(_lin(-2) ** 2 * _lin(-4) ** 2) * Fraction(1, 1296)},
                                   "psi")


def R_unnormalized() -> OreOperator:
    """psi^6 (Q + 2)^4 - Q^2 (Q - 2)^2."""
    Q = Poly.x()
    return OreOperator.from_graded({6: _lin(2) ** 4, 0: -(Q ** 2 * _lin(-2) ** 2)}, "psi")


def R() -> OreOperator:
    """psi^6/(1 - psi^6) (Q+2)^4 - 1/(1 - psi^6) Q^2 (Q-2)^2, exactly as defined.

    Its leading coefficient is (psi^6 - 1)/(1 - psi^6) = -1; ``R().monic()``
    is the normalized operator whose expansion starts Q^4 - (8psi^6+4)/(1-psi^6) Q^3.
    """
    Q = Poly.x()
    one_minus = Poly([1, 0, 0, 0, 0, 0, -1])
    a = OreOperator.from_theta_poly(_lin(2) ** 4, RatFunc(Poly([0] * 6 + [1]), one_minus), "psi")
    b = OreOperator.from_theta_poly(Q ** 2 * _lin(-2) ** 2, RatFunc(Poly((1,)), one_minus), "psi")
    return a - b


def R_printed_expansion() -> OreOperator:
    """Q^4 - (8p+4)/(1-p) Q^3 - (24p-4)/(1-p) Q^2 - 32p/(1-p) Q - 16p/(1-p), p = psi^6."""
    p6 = Poly([0] * 6 + [1])
    den = Poly([1, 0, 0, 0, 0, 0, -1])
    return OreOperator([RatFunc(-16 * p6, den), RatFunc(-32 * p6, den),
                        RatFunc(-(24 * p6 - 4), den), RatFunc(-(8 * p6 + 4), den), 1], "psi")


def psi_to_z(op: OreOperator) -> OreOperator:
    """psi^6 = 3^-6 z^-1, Q = -6 D."""
    if op.var != "psi":
        raise ValueError("expected an operator in psi")
    return op.change_variable(6, Fraction(1, 729), -1, "z")


def z_to_psi(op: OreOperator) -> OreOperator:
    """z = 3^-6 psi^-6, D = -Q/6."""
    if op.var != "z":
        raise ValueError("expected an operator in z")
    return op.change_variable(1, Fraction(1, 729), -6, "psi")


BUILTINS = {"L": L_z, "L_z": L_z, "L_psi": L_psi, "R": R, "R_monic": lambda: R().monic(),
            "R_unnormalized": R_unnormalized}
