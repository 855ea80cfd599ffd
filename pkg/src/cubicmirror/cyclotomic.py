"""Exact arithmetic in Q(zeta_6) = Q[z]/(z^2 - z + 1).

An element is a + b*z with rational a, b.  Since z^2 = z - 1 we get z^3 = -1
and z^6 = 1.  The field is Q(sqrt(-3)) with sqrt(-3) = 2z - 1.
"""
from __future__ import annotations

import re
from fractions import Fraction
from math import isqrt


def _rsqrt(q: Fraction) -> Fraction | None:
    """Square root of a nonnegative rational, or None if it is not a square."""
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


class CyclotomicNumber:
    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        if isinstance(a, CyclotomicNumber):
            a, b = a.a, a.b + b
        self.a = Fraction(a)
        self.b = Fraction(b)

    @classmethod
    def coerce(cls, x) -> "CyclotomicNumber":
        return x if isinstance(x, CyclotomicNumber) else cls(x)

    # arithmetic -----------------------------------------------------------
    def __add__(self, o):
        if not isinstance(o, (CyclotomicNumber, int, Fraction)):
            return NotImplemented
        o = CyclotomicNumber.coerce(o)
        return CyclotomicNumber(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicNumber(-self.a, -self.b)

    def __sub__(self, o):
        if not isinstance(o, (CyclotomicNumber, int, Fraction)):
            return NotImplemented
        return self + (-CyclotomicNumber.coerce(o))

    def __rsub__(self, o):
        return CyclotomicNumber.coerce(o) - self

    def __mul__(self, o):
        if not isinstance(o, (CyclotomicNumber, int, Fraction)):
            return NotImplemented
        o = CyclotomicNumber.coerce(o)
        a, b, c, d = self.a, self.b, o.a, o.b
        # (a + bz)(c + dz) = ac + (ad + bc) z + bd (z - 1)
        return CyclotomicNumber(a * c - b * d, a * d + b * c + b * d)

    __rmul__ = __mul__

    def conj(self) -> "CyclotomicNumber":
        # complex conjugation sends z to 1 - z
        return CyclotomicNumber(self.a + self.b, -self.b)

    def norm(self) -> Fraction:
        return self.a * self.a + self.a * self.b + self.b * self.b

    def trace(self) -> Fraction:
        return 2 * self.a + self.b

    def inverse(self) -> "CyclotomicNumber":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in Q(zeta_6)")
        c = self.conj()
        return CyclotomicNumber(c.a / n, c.b / n)

    def __truediv__(self, o):
        if not isinstance(o, (CyclotomicNumber, int, Fraction)):
            return NotImplemented
        return self * CyclotomicNumber.coerce(o).inverse()

    def __rtruediv__(self, o):
        return CyclotomicNumber.coerce(o) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out, base = CyclotomicNumber(1), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def sqrt(self) -> "CyclotomicNumber | None":
        """A square root inside the field, or None when there is none."""
        if self.is_zero():
            return CyclotomicNumber(0)
        n = _rsqrt(self.norm())
        if n is None:
            return None
        t2 = self.trace() + 2 * n
        if t2 == 0:
            # alpha = y*sqrt(-3) with alpha^2 = -3y^2 = self (self is rational)
            y = _rsqrt(-self.a / 3) if self.b == 0 else None
            return None if y is None else CyclotomicNumber(-y, 2 * y)
        t = _rsqrt(t2)
        if t is None:
            return None
        return (self + n) / t

    # comparison / hashing -------------------------------------------------
    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_rational(self) -> bool:
        return self.b == 0

    def __eq__(self, o):
        if isinstance(o, (int, Fraction)):
            return self.b == 0 and self.a == o
        if isinstance(o, CyclotomicNumber):
            return self.a == o.a and self.b == o.b
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b))

    def __bool__(self):
        return not self.is_zero()

    # io ---------------------------------------------------------------------
    def __repr__(self):
        return f"CyclotomicNumber({self})"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        zb = "z6" if self.b == 1 else ("-z6" if self.b == -1 else f"{self.b}*z6")
        if self.a == 0:
            return zb
        sep = "" if zb.startswith("-") else "+"
        return f"{self.a}{sep}{zb}"

    def to_json(self) -> dict:
        return {"a": _q(self.a), "b": _q(self.b)}

    @classmethod
    def from_json(cls, d: dict) -> "CyclotomicNumber":
        return cls(Fraction(d["a"]), Fraction(d["b"]))


def _q(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


ZETA = CyclotomicNumber(0, 1)
ONE = CyclotomicNumber(1)
ZERO = CyclotomicNumber(0)


def mu6() -> list[CyclotomicNumber]:
    """The sixth roots of unity 1, z, ..., z^5."""
    return [ZETA ** k for k in range(6)]


_TERM = re.compile(r"([+-]?)([^+-]*)")
_RAT = r"\d+(?:/\d+)?"


def parse(text: str) -> CyclotomicNumber:
    """Parse literals such as '2', '-1/2', 'z6', '1/2+3/4*z6', '-z6', '2*z6-1'."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty cyclotomic literal")
    a = Fraction(0)
    b = Fraction(0)
    pos = 0
    seen = False
    while pos < len(s):
        m = _TERM.match(s, pos)
        sign, body = m.group(1), m.group(2)
        if not body:
            raise ValueError(f"malformed cyclotomic literal: {text!r}")
        k = -1 if sign == "-" else 1
        if re.search(r"/0+(?!\d)", body):
            raise ValueError(f"zero denominator in cyclotomic literal: {text!r}")
        if re.fullmatch(_RAT, body):
            a += k * Fraction(body)
        elif body == "z6":
            b += k
        elif re.fullmatch(_RAT + r"\*z6", body):
            b += k * Fraction(body[:-3])
        elif re.fullmatch(r"z6\*" + _RAT, body):
            b += k * Fraction(body[3:])
        else:
            raise ValueError(f"malformed cyclotomic literal: {text!r}")
        pos = m.end()
        seen = True
    if not seen:
        raise ValueError(f"malformed cyclotomic literal: {text!r}")
    return CyclotomicNumber(a, b)
