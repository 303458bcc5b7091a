"""Exact verification of birational maps between elliptic surfaces.

The function field of a surface y^2 + a1 x y + a3 y = x^3 + ... over Q(x, t)
is the quadratic extension K[y]/(y^2 - s y - r) with s = -(a1 x + a3) and
r = x^3 + a2 x^2 + a4 x + a6.  Elements are kept as pairs A + B y with A, B
in the rational function field K = Q(x, t) (sympy sparse fractions), so a
map verifies iff the target equation evaluates to the pair (0, 0).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping

import sympy
from sympy.polys.domains import QQ
from sympy.polys.fields import field

from .weier import FnFieldCurve


@dataclass(frozen=True)
class SurfaceModel:
    """A Weierstrass curve together with the names of its coordinates."""

    curve: FnFieldCurve
    x: str = "x"
    y: str = "y"

    @property
    def param(self) -> str:
        return self.curve.var

    @property
    def name(self) -> str:
        return self.curve.name


class QuadElement:
    """A + B y in K[y]/(y^2 - s y - r)."""

    __slots__ = ("A", "B", "ring")

    def __init__(self, A, B, ring: "QuadRing"):
        self.A, self.B, self.ring = A, B, ring

    def __add__(self, o):
        o = self.ring.coerce(o)
        return QuadElement(self.A + o.A, self.B + o.B, self.ring)

    __radd__ = __add__

    def __neg__(self):
        return QuadElement(-self.A, -self.B, self.ring)

    def __sub__(self, o):
        return self + (-self.ring.coerce(o))

    def __rsub__(self, o):
        return self.ring.coerce(o) - self

    def __mul__(self, o):
        o = self.ring.coerce(o)
        s, r = self.ring.s, self.ring.r
        bd = self.B * o.B
        return QuadElement(self.A * o.A + bd * r, self.A * o.B + self.B * o.A + bd * s, self.ring)

    __rmul__ = __mul__

    def norm(self):
        s, r = self.ring.s, self.ring.r
        return self.A * self.A + self.A * self.B * s - self.B * self.B * r

    def inverse(self):
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("division by an element that vanishes on the surface")
        return QuadElement((self.A + self.B * self.ring.s) / n, -self.B / n, self.ring)

    def __truediv__(self, o):
        return self * self.ring.coerce(o).inverse()

    def __rtruediv__(self, o):
        return self.ring.coerce(o) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out, base = self.ring.one, self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def is_zero(self) -> bool:
        return self.A == 0 and self.B == 0


class QuadRing:
    """Function field of a surface model."""

    def __init__(self, model: SurfaceModel):
        self.model = model
        self.K, self.X, self.T = field(f"{model.x},{model.param}", QQ)
        c = model.curve
        a1, a2, a3, a4, a6 = (self.poly_in_t(a) for a in c.coeffs)
        X = self.X
        self.s = -(a1 * X + a3)
        self.r = X ** 3 + a2 * X ** 2 + a4 * X + a6
        self.one = QuadElement(self.K(1), self.K(0), self)
        self.symbols = {model.x: QuadElement(X, self.K(0), self),
                        model.y: QuadElement(self.K(0), self.K(1), self),
                        model.param: QuadElement(self.T, self.K(0), self)}

    def poly_in_t(self, p):
        out = self.K(0)
        for k, c in enumerate(p.c):
            out += self.K(sympy.Rational(c.numerator, c.denominator)) * self.T ** k
        return out

    def coerce(self, a) -> QuadElement:
        if isinstance(a, QuadElement):
            return a
        return QuadElement(self.K(a), self.K(0), self)

    def evaluate(self, expr, env: Mapping[str, QuadElement] | None = None) -> QuadElement:
        """Evaluate a sympy expression (or string) with the ring's symbols."""
        env = dict(self.symbols if env is None else env)
        if isinstance(expr, str):
            expr = sympy.sympify(expr.replace("^", "**"),
                                 locals={k: sympy.Symbol(k) for k in env})
        return _eval(expr, env, self)


def _eval(e, env, ring):
    if e.is_Symbol:
        if e.name not in env:
            raise ValueError(f"unknown symbol {e.name}")
        return env[e.name]
    if e.is_Rational:
        return ring.coerce(ring.K(e))
    if e.is_Add:
        out = ring.coerce(0)
        for a in e.args:
            out = out + _eval(a, env, ring)
        return out
    if e.is_Mul:
        out = ring.one
        for a in e.args:
            out = out * _eval(a, env, ring)
        return out
    if e.is_Pow and e.exp.is_Integer:
        return _eval(e.base, env, ring) ** int(e.exp)
    raise ValueError(f"unsupported expression {e}")


def _curve_equation(curve: FnFieldCurve, x, y, t, ring):
    a1, a2, a3, a4, a6 = (_horner(a, t, ring) for a in curve.coeffs)
    return y * y + a1 * x * y + a3 * y - (x * x * x + a2 * x * x + a4 * x + a6)


def _horner(p, t, ring):
    out = ring.coerce(0)
    for c in reversed(p.c):
        out = out * t + ring.coerce(ring.K(sympy.Rational(c.numerator, c.denominator)))
    return out


@dataclass(frozen=True)
class BirationalMap:
    """(x, y, t) of the target written in the source coordinates."""

    source: SurfaceModel
    target: SurfaceModel
    x: str
    y: str
    param: str
    name: str = ""
    let: tuple[tuple[str, str], ...] = ()   # abbreviations in source coordinates


def source_env(m: BirationalMap, ring: QuadRing) -> dict[str, QuadElement]:
    env = dict(ring.symbols)
    for k, e in m.let:
        env[k] = ring.evaluate(e, env)
    return env


@lru_cache(maxsize=None)
def map_images(m: BirationalMap) -> tuple[QuadRing, dict[str, QuadElement]]:
    ring = QuadRing(m.source)
    env = source_env(m, ring)
    images = {m.target.x: ring.evaluate(m.x, env), m.target.y: ring.evaluate(m.y, env),
              m.target.param: ring.evaluate(m.param, env)}
    return ring, images


def verify_birational_map(m: BirationalMap) -> bool:
    """True iff the target equation vanishes identically on the source surface."""
    ring, img = map_images(m)
    t = m.target
    val = _curve_equation(t.curve, img[t.x], img[t.y], img[t.param], ring)
    return val.is_zero()


def verify_identity(m: BirationalMap, lhs: str, rhs: str) -> bool:
    """Check lhs (target coordinates, pulled back) == rhs (source coordinates)."""
    ring, img = map_images(m)
    a = ring.evaluate(lhs, img)
    b = ring.evaluate(rhs, source_env(m, ring))
    return (a - b).is_zero()


def verify_elliptic_parameter(m: BirationalMap, param_expr: str, expected: str | None = None) -> bool:
    """The parameter function, written on the target, pulls back to ``expected``.

    ``expected`` defaults to the source's own parameter variable.
    """
    return verify_identity(m, param_expr, expected or m.source.param)


def verify_parametrized_component(curve: FnFieldCurve, u: str, x: str, y: str, var: str = "z") -> bool:
    """True iff (u(z), x(z), y(z)) satisfies the curve equation identically in z."""
    K, z = field(var, QQ)
    loc = {var: sympy.Symbol(var)}

    def ev(s):
        e = sympy.sympify(str(s).replace("^", "**"), locals=loc)
        if e.free_symbols - {loc[var]}:
            raise ValueError(f"unexpected symbols in {s!r}")
        return K.from_expr(e) if e.free_symbols else K(e)

    uu, xx, yy = ev(u), ev(x), ev(y)

    def h(p):
        out = K(0)
        for c in reversed(p.c):
            out = out * uu + K(sympy.Rational(c.numerator, c.denominator))
        return out

    a1, a2, a3, a4, a6 = (h(a) for a in curve.coeffs)
    val = yy ** 2 + a1 * xx * yy + a3 * yy - (xx ** 3 + a2 * xx ** 2 + a4 * xx + a6)
    return val == 0
