"""Dense univariate polynomials and rational functions over Q.

Coefficients are Fractions stored lowest degree first with no trailing zeros.
Rational functions are kept reduced with a monic denominator.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence


def _trim(c: list[Fraction]) -> tuple[Fraction, ...]:
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


class Poly:
    __slots__ = ("c",)

    def __init__(self, coeffs: Iterable = ()):
        self.c = _trim([Fraction(x) for x in coeffs])

    # -- constructors -----------------------------------------------------
    @classmethod
    def const(cls, a) -> "Poly":
        return cls([a])

    @classmethod
    def x(cls) -> "Poly":
        return cls([0, 1])

    @classmethod
    def coerce(cls, a) -> "Poly":
        return a if isinstance(a, Poly) else cls([a])

    # -- basic data -------------------------------------------------------
    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.c) - 1

    def is_zero(self) -> bool:
        return not self.c

    @property
    def lead(self) -> Fraction:
        return self.c[-1] if self.c else Fraction(0)

    def __getitem__(self, k: int) -> Fraction:
        return self.c[k] if 0 <= k < len(self.c) else Fraction(0)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly([other])
        if not isinstance(other, Poly):
            return NotImplemented
        return self.c == other.c

    def __hash__(self):
        return hash(self.c)

    def __repr__(self) -> str:
        return f"Poly({[str(x) for x in self.c]})"

    def __str__(self) -> str:
        return self.to_string()

    def to_string(self, var: str = "t") -> str:
        if not self.c:
            return "0"
        terms = []
        for k in range(len(self.c) - 1, -1, -1):
            a = self.c[k]
            if a == 0:
                continue
            mon = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            if mon and abs(a) == 1:
                s = mon
            elif mon:
                s = f"{abs(a)}*{mon}"
            else:
                s = str(abs(a))
            terms.append(("-" if a < 0 else "+", s))
        out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sg, s in terms[1:]:
            out += f" {sg} {s}"
        return out

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other) -> "Poly":
        o = Poly.coerce(other)
        n = max(len(self.c), len(o.c))
        return Poly([self[k] + o[k] for k in range(n)])

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly([-x for x in self.c])

    def __sub__(self, other) -> "Poly":
        return self + (-Poly.coerce(other))

    def __rsub__(self, other) -> "Poly":
        return Poly.coerce(other) - self

    def __mul__(self, other) -> "Poly":
        o = Poly.coerce(other)
        if not self.c or not o.c:
            return Poly()
        out = [Fraction(0)] * (len(self.c) + len(o.c) - 1)
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(o.c):
                    out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        out, base = Poly([1]), self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def divmod(self, d: "Poly") -> tuple["Poly", "Poly"]:
        d = Poly.coerce(d)
        if d.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.c)
        q = [Fraction(0)] * max(len(r) - len(d.c) + 1, 0)
        for k in range(len(r) - len(d.c), -1, -1):
            f = r[k + len(d.c) - 1] / d.lead
            q[k] = f
            if f:
                for j, b in enumerate(d.c):
                    r[k + j] -= f * b
        return Poly(q), Poly(r[:len(d.c) - 1])

    def __floordiv__(self, d) -> "Poly":
        return self.divmod(d)[0]

    def __mod__(self, d) -> "Poly":
        return self.divmod(d)[1]

    def exact_div(self, d) -> "Poly":
        q, r = self.divmod(d)
        if not r.is_zero():
            raise ValueError("division is not exact")
        return q

    def monic(self) -> "Poly":
        return Poly([x / self.lead for x in self.c]) if self.c else self

    def __call__(self, a):
        out = Fraction(0) if not isinstance(a, (Poly, RatFunc)) else Poly()
        for x in reversed(self.c):
            out = out * a + x
        return out

    def compose(self, q: "Poly") -> "Poly":
        out = Poly()
        for x in reversed(self.c):
            out = out * q + x
        return out

    def derivative(self) -> "Poly":
        return Poly([k * self.c[k] for k in range(1, len(self.c))])

    def reverse(self, n: int) -> "Poly":
        """t^n p(1/t) for n >= deg p."""
        if n < self.degree:
            raise ValueError("reversal degree below the polynomial degree")
        return Poly(list(reversed(list(self.c) + [Fraction(0)] * (n + 1 - len(self.c)))))

    def valuation(self, place: "Poly") -> int:
        """Order of vanishing along an irreducible polynomial place."""
        if self.is_zero():
            raise ValueError("valuation of zero")
        v, p = 0, self
        while True:
            q, r = p.divmod(place)
            if not r.is_zero():
                return v
            v, p = v + 1, q


def _int_primitive(p: Poly) -> list[int]:
    d = 1
    for x in p.c:
        d = d * x.denominator // _igcd(d, x.denominator)
    return [int(x * d) for x in reversed(p.c)]


def _igcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd; uses sympy's dense integer gcd (Euclid over Q swells coefficients)."""
    if a.is_zero():
        return b.monic() if not b.is_zero() else b
    if b.is_zero():
        return a.monic()
    if a.degree == 0 or b.degree == 0:
        return Poly([1])
    from sympy.polys.domains import ZZ
    from sympy.polys.euclidtools import dup_gcd
    g = dup_gcd([ZZ(x) for x in _int_primitive(a)], [ZZ(x) for x in _int_primitive(b)], ZZ)
    return Poly([Fraction(int(x)) for x in reversed(g)]).monic()


class RatFunc:
    """Quotient num/den of polynomials, reduced, denominator monic."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = Poly.coerce(num)
        den = Poly([1]) if den is None else Poly.coerce(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        g = gcd(num, den) if not num.is_zero() else den
        if g.degree > 0:
            num, den = num.exact_div(g), den.exact_div(g)
        if num.is_zero():
            den = Poly([1])
        lc = den.lead
        self.num = Poly([x / lc for x in num.c])
        self.den = Poly([x / lc for x in den.c])

    @classmethod
    def coerce(cls, a) -> "RatFunc":
        return a if isinstance(a, RatFunc) else cls(a)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_poly(self) -> bool:
        return self.den.degree == 0

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, Poly)):
            other = RatFunc(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self) -> str:
        return f"RatFunc({self.num!r}, {self.den!r})"

    def to_string(self, var: str = "t") -> str:
        if self.is_poly():
            return self.num.to_string(var)
        return f"({self.num.to_string(var)})/({self.den.to_string(var)})"

    __str__ = to_string

    def __add__(self, other) -> "RatFunc":
        o = RatFunc.coerce(other)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den)

    def __sub__(self, other) -> "RatFunc":
        return self + (-RatFunc.coerce(other))

    def __rsub__(self, other) -> "RatFunc":
        return RatFunc.coerce(other) - self

    def __mul__(self, other) -> "RatFunc":
        o = RatFunc.coerce(other)
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RatFunc":
        o = RatFunc.coerce(other)
        if o.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RatFunc(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other) -> "RatFunc":
        return RatFunc.coerce(other) / self

    def __pow__(self, n: int) -> "RatFunc":
        if n < 0:
            return RatFunc(1) / (self ** (-n))
        return RatFunc(self.num ** n, self.den ** n)

    def valuation(self, place: Poly) -> int:
        if self.is_zero():
            raise ValueError("valuation of zero")
        return self.num.valuation(place) - self.den.valuation(place)


def poly_from_sympy(expr, var) -> Poly:
    import sympy
    p = sympy.Poly(sympy.expand(expr), var)
    cs = [Fraction(int(sympy.fraction(c)[0]), int(sympy.fraction(c)[1])) for c in reversed(p.all_coeffs())]
    return Poly(cs)


def poly_to_sympy(p: Poly, var):
    import sympy
    return sum((sympy.Rational(c.numerator, c.denominator) * var ** k for k, c in enumerate(p.c)),
               sympy.Integer(0))


def parse_poly(text: str, var: str = "t") -> Poly:
    """Parse a polynomial string such as ``(t^2-1)^2`` in one variable."""
    import sympy
    v = sympy.Symbol(var)
    expr = sympy.sympify(text.replace("^", "**"), locals={var: v})
    if expr.free_symbols - {v}:
        raise ValueError(f"unexpected symbols in {text!r}")
    return poly_from_sympy(expr, v)


def factor_places(p: Poly) -> list[tuple[Poly, int]]:
    """Monic irreducible factors over Q with multiplicity."""
    import sympy
    t = sympy.Symbol("t")
    _, facs = sympy.factor_list(poly_to_sympy(p, t), t)
    out = [(poly_from_sympy(f, t).monic(), int(e)) for f, e in facs]
    out = [(f, e) for f, e in out if f.degree > 0]
    return sorted(out, key=lambda fe: (fe[0].degree, fe[0].c))
