"""Dense univariate polynomials and rational functions over Q."""
from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Sequence


def _fr(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class Poly:
    """c[0] + c[1] x + ... with exact rational coefficients (trailing zeros stripped)."""
    __slots__ = ("c",)

    def __init__(self, coeffs: Sequence = ()):
        c = [_fr(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.c = tuple(c)

    @classmethod
    def x(cls) -> "Poly":
        return cls((0, 1))

    @classmethod
    def const(cls, a) -> "Poly":
        return cls((a,))

    @classmethod
    def from_roots(cls, roots: Sequence) -> "Poly":
        p = cls((1,))
        for r in roots:
            p = p * cls((-_fr(r), 1))
        return p

    @property
    def degree(self) -> int:
        return len(self.c) - 1  # -1 for the zero polynomial

    def is_zero(self) -> bool:
        return not self.c

    def lead(self) -> Fraction:
        return self.c[-1] if self.c else Fraction(0)

    def __getitem__(self, k: int) -> Fraction:
        return self.c[k] if 0 <= k < len(self.c) else Fraction(0)

    def _coerce(self, o):
        if isinstance(o, Poly):
            return o
        if isinstance(o, (int, Fraction)):
            return Poly((o,))
        return None

    def __add__(self, o):
        o = self._coerce(o)
        if o is None:
            return NotImplemented
        n = max(len(self.c), len(o.c))
        return Poly([self[i] + o[i] for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return Poly([-a for a in self.c])

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
        if not self.c or not o.c:
            return Poly()
        out = [Fraction(0)] * (len(self.c) + len(o.c) - 1)
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(o.c):
                    out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        out = Poly((1,))
        for _ in range(k):
            out = out * self
        return out

    def __divmod__(self, o: "Poly"):
        if o.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        q = [Fraction(0)] * max(len(self.c) - len(o.c) + 1, 0)
        r = list(self.c)
        lo = o.lead()
        for k in range(len(q) - 1, -1, -1):
            f = r[k + len(o.c) - 1] / lo
            q[k] = f
            if f:
                for j, b in enumerate(o.c):
                    r[k + j] -= f * b
        return Poly(q), Poly(r)

    def __floordiv__(self, o):
        return divmod(self, o)[0]

    def __mod__(self, o):
        return divmod(self, o)[1]

    def __eq__(self, o):
        o = self._coerce(o)
        return o is not None and self.c == o.c

    def __hash__(self):
        return hash(self.c)

    def __call__(self, x):
        acc = x * 0 if not isinstance(x, (int, Fraction)) else Fraction(0)
        for a in reversed(self.c):
            acc = acc * x + a
        return acc

    def derivative(self) -> "Poly":
        return Poly([i * a for i, a in enumerate(self.c)][1:])

    def shift(self, s) -> "Poly":
        """p(x + s)."""
        s = _fr(s)
        out = [Fraction(0)] * len(self.c)
        for i, a in enumerate(self.c):
            for j in range(i + 1):
                out[j] += a * comb(i, j) * s ** (i - j)
        return Poly(out)

    def scale_var(self, s) -> "Poly":
        """p(s x)."""
        s = _fr(s)
        return Poly([a * s ** i for i, a in enumerate(self.c)])

    def monic(self) -> "Poly":
        return Poly([a / self.lead() for a in self.c])

    def valuation(self) -> int:
        """Order of vanishing at 0 (0 for the zero polynomial)."""
        for i, a in enumerate(self.c):
            if a:
                return i
        return 0

    def rational_roots(self) -> dict[Fraction, int]:
        """Rational roots with multiplicities (rational root test on the primitive form)."""
        roots: dict[Fraction, int] = {}
        p = self
        if p.is_zero():
            raise ValueError("the zero polynomial has every number as a root")
        v = p.valuation()
        if v:
            roots[Fraction(0)] = v
            p = Poly(p.c[v:])
        den = 1
        for a in p.c:
            den = den * a.denominator // _gcd(den, a.denominator)
        ints = [int(a * den) for a in p.c]
        a0, an = abs(ints[0]), abs(ints[-1])
        for num in _divisors(a0):
            for d in _divisors(an):
                for r in (Fraction(num, d), Fraction(-num, d)):
                    while p.degree > 0 and p(r) == 0:
                        roots[r] = roots.get(r, 0) + 1
                        p = p // Poly((-r, 1))
        return dict(sorted(roots.items()))

    def to_str(self, var: str = "x") -> str:
        if not self.c:
            return "0"
        parts = []
        for i in range(len(self.c) - 1, -1, -1):
            a = self.c[i]
            if not a:
                continue
            mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
            if mono and abs(a) == 1:
                body = mono
            else:
                body = str(abs(a)) + ("*" + mono if mono else "")
            parts.append(("-" if a < 0 else "+") + body)
        s = "".join(parts)
        return s[1:] if s.startswith("+") else s

    def __repr__(self):
        return f"Poly({self.to_str()})"


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def _divisors(n: int) -> list[int]:
    if n == 0:
        return [0]
    out = []
    i = 1
    while i * i <= n:
        if n % i == 0:
            out.append(i)
            if i * i != n:
                out.append(n // i)
        i += 1
    return sorted(out)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    # monic remainders keep the rational coefficients small
    if b.is_zero():
        return a.monic() if not a.is_zero() else a
    if a.is_zero():
        return b.monic()
    a, b = a.monic(), b.monic()
    while not b.is_zero():
        r = a % b
        a, b = b, (r.monic() if not r.is_zero() else r)
    return a


class RatFunc:
    """num/den in lowest terms with a monic denominator."""
    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if isinstance(num, RatFunc):
            raise TypeError("use RatFunc arithmetic instead of nesting")
        if not isinstance(num, Poly):
            num = Poly((num,))
        den = Poly((1,)) if den is None else (den if isinstance(den, Poly) else Poly((den,)))
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            self.num, self.den = Poly(), Poly((1,))
            return
        g = poly_gcd(num, den)
        if g.degree > 0:
            num, den = num // g, den // g
        lc = den.lead()
        self.num = Poly([a / lc for a in num.c])
        self.den = Poly([a / lc for a in den.c])

    @classmethod
    def x(cls) -> "RatFunc":
        return cls(Poly.x())

    @classmethod
    def coerce(cls, o) -> "RatFunc":
        if isinstance(o, RatFunc):
            return o
        if isinstance(o, Poly):
            return cls(o)
        return cls(Poly((o,)))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def __add__(self, o):
        o = RatFunc.coerce(o)
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, o):
        return self + (-RatFunc.coerce(o))

    def __rsub__(self, o):
        return RatFunc.coerce(o) - self

    def __mul__(self, o):
        o = RatFunc.coerce(o)
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = RatFunc.coerce(o)
        if o.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RatFunc(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, o):
        return RatFunc.coerce(o) / self

    def __pow__(self, k: int):
        if k < 0:
            return RatFunc(self.den ** (-k), self.num ** (-k))
        return RatFunc(self.num ** k, self.den ** k)

    def __eq__(self, o):
        if isinstance(o, (int, Fraction, Poly, RatFunc)):
            o = RatFunc.coerce(o)
            return self.num == o.num and self.den == o.den
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def __call__(self, x):
        d = self.den(x)
        if d == 0:
            raise ZeroDivisionError(f"pole at {x}")
        return self.num(x) / d

    def has_pole_at(self, x) -> bool:
        return self.den(x) == 0

    def derivative(self) -> "RatFunc":
        return RatFunc(self.num.derivative() * self.den - self.num * self.den.derivative(),
                       self.den * self.den)

    def euler(self) -> "RatFunc":
        """x d/dx applied to the function."""
        return RatFunc.x() * self.derivative()

    def shift(self, s) -> "RatFunc":
        return RatFunc(self.num.shift(s), self.den.shift(s))

    def substitute_power(self, k: int, value_of_xk: "RatFunc") -> "RatFunc":
        """Rewrite f(x), a function of x^k only, as f evaluated with x^k -> value."""
        out = []
        for p in (self.num, self.den):
            if any(a and i % k for i, a in enumerate(p.c)):
                raise ValueError(f"not a function of x^{k}")
            acc = RatFunc(0)
            for i, a in enumerate(p.c):
                if a:
                    acc = acc + value_of_xk ** (i // k) * a
            out.append(acc)
        return out[0] / out[1]

    def to_str(self, var: str = "x") -> str:
        if self.den == Poly((1,)):
            return self.num.to_str(var)
        return f"({self.num.to_str(var)})/({self.den.to_str(var)})"

    def __repr__(self):
        return f"RatFunc({self.to_str()})"
