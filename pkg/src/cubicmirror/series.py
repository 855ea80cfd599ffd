"""Truncated power series with exact rational coefficients."""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .polynomial import Poly, RatFunc


class TruncatedSeries:
    """sum_{n=0}^{order} c_n x^n, exact modulo x^(order+1)."""
    __slots__ = ("coeffs", "order", "var")

    def __init__(self, coeffs: Sequence, order: int | None = None, var: str = "x"):
        c = [Fraction(a) for a in coeffs]
        if order is None:
            order = len(c) - 1
        if order < -1:
            raise ValueError("order must be >= -1")
        c = c[:order + 1] + [Fraction(0)] * max(0, order + 1 - len(c))
        self.coeffs = tuple(c)
        self.order = order
        self.var = var

    @classmethod
    def zero(cls, order: int, var: str = "x") -> "TruncatedSeries":
        return cls((), order, var)

    @classmethod
    def one(cls, order: int, var: str = "x") -> "TruncatedSeries":
        return cls((1,), order, var)

    @classmethod
    def from_function(cls, fn, order: int, var: str = "x") -> "TruncatedSeries":
        return cls([fn(n) for n in range(order + 1)], order, var)

    @classmethod
    def from_poly(cls, p: Poly, order: int, var: str = "x") -> "TruncatedSeries":
        return cls(p.c, order, var)

    @classmethod
    def from_ratfunc(cls, f: RatFunc, order: int, var: str = "x") -> "TruncatedSeries":
        den = cls.from_poly(f.den, order, var)
        return cls.from_poly(f.num, order, var) * den.inverse()

    def __getitem__(self, n: int) -> Fraction:
        if n > self.order:
            raise IndexError(f"coefficient {n} is beyond the truncation order {self.order}")
        return self.coeffs[n] if n >= 0 else Fraction(0)

    def _match(self, o):
        if isinstance(o, (int, Fraction)):
            return TruncatedSeries((o,), self.order, self.var)
        if not isinstance(o, TruncatedSeries):
            return None
        if o.var != self.var:
            raise ValueError(f"series in {self.var} and {o.var}")
        return o

    def __add__(self, o):
        o = self._match(o)
        if o is None:
            return NotImplemented
        n = min(self.order, o.order)
        return TruncatedSeries([self.coeffs[i] + o.coeffs[i] for i in range(n + 1)], n, self.var)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries([-a for a in self.coeffs], self.order, self.var)

    def __sub__(self, o):
        o = self._match(o)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        if isinstance(o, (int, Fraction)):
            return TruncatedSeries([a * o for a in self.coeffs], self.order, self.var)
        o = self._match(o)
        if o is None:
            return NotImplemented
        n = min(self.order, o.order)
        out = [Fraction(0)] * (n + 1)
        for i in range(n + 1):
            a = self.coeffs[i]
            if a:
                for j in range(n + 1 - i):
                    b = o.coeffs[j]
                    if b:
                        out[i + j] += a * b
        return TruncatedSeries(out, n, self.var)

    __rmul__ = __mul__

    def inverse(self) -> "TruncatedSeries":
        if self.order < 0:
            return self
        c0 = self.coeffs[0]
        if c0 == 0:
            raise ZeroDivisionError("series with zero constant term has no inverse")
        n = self.order
        inv = [Fraction(0)] * (n + 1)
        inv[0] = 1 / c0
        for k in range(1, n + 1):
            s = sum((self.coeffs[j] * inv[k - j] for j in range(1, k + 1) if self.coeffs[j]),
                    Fraction(0))
            inv[k] = -s / c0
        return TruncatedSeries(inv, n, self.var)

    def __truediv__(self, o):
        if isinstance(o, (int, Fraction)):
            return self * (1 / Fraction(o))
        return self * self._match(o).inverse()

    def euler(self) -> "TruncatedSeries":
        """x d/dx."""
        return TruncatedSeries([n * a for n, a in enumerate(self.coeffs)], self.order, self.var)

    def shift(self, k: int) -> "TruncatedSeries":
        """Multiply by x^k (k >= 0); the known order grows by k."""
        if k < 0:
            raise ValueError("negative shifts leave the power series ring")
        return TruncatedSeries((0,) * k + self.coeffs, self.order + k, self.var)

    def truncate(self, order: int) -> "TruncatedSeries":
        return TruncatedSeries(self.coeffs, min(order, self.order), self.var)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def valuation(self) -> int | None:
        for i, a in enumerate(self.coeffs):
            if a:
                return i
        return None

    def __eq__(self, o):
        if not isinstance(o, TruncatedSeries):
            return NotImplemented
        n = min(self.order, o.order)
        return self.var == o.var and self.coeffs[:n + 1] == o.coeffs[:n + 1]

    def __hash__(self):
        return hash((self.var, self.coeffs))

    def __repr__(self):
        shown = [f"{a}*{self.var}^{i}" for i, a in enumerate(self.coeffs[:6]) if a]
        return f"TruncatedSeries({' + '.join(shown) or '0'} + O({self.var}^{self.order + 1}))"

    def to_json(self) -> dict:
        return {"var": self.var, "order": self.order,
                "coeffs": [f"{a.numerator}/{a.denominator}" for a in self.coeffs]}
