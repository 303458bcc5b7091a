"""Elliptic curves over Q(t) in long Weierstrass form.

    y^2 + a1 x y + a3 y = x^3 + a2 x^2 + a4 x + a6,   a_i in Q[t]

Provides the chord-tangent group law on points with rational-function
coordinates, exact torsion closure, and Kodaira fiber types at every place
(irreducible polynomials and infinity) from the valuations of c4, c6 and the
discriminant after minimalization.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .poly import Poly, RatFunc, factor_places, parse_poly

INF = "inf"


@dataclass(frozen=True)
class FnFieldCurve:
    a1: Poly
    a2: Poly
    a3: Poly
    a4: Poly
    a6: Poly
    var: str = "t"
    name: str = ""

    def __post_init__(self):
        for k in ("a1", "a2", "a3", "a4", "a6"):
            object.__setattr__(self, k, Poly.coerce(getattr(self, k)))
        if self.discriminant.is_zero():
            raise ValueError("singular Weierstrass equation: discriminant vanishes identically")

    @classmethod
    def from_strings(cls, coeffs: dict[str, str], var: str = "t", name: str = "") -> "FnFieldCurve":
        vals = {k: parse_poly(str(coeffs.get(k, "0")), var) for k in ("a1", "a2", "a3", "a4", "a6")}
        unknown = set(coeffs) - set(vals)
        if unknown:
            raise ValueError(f"unknown coefficient names {sorted(unknown)}")
        return cls(var=var, name=name, **vals)

    @property
    def coeffs(self) -> tuple[Poly, ...]:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    # -- invariants -------------------------------------------------------
    @property
    def b2(self) -> Poly:
        return self.a1 ** 2 + 4 * self.a2

    @property
    def b4(self) -> Poly:
        return 2 * self.a4 + self.a1 * self.a3

    @property
    def b6(self) -> Poly:
        return self.a3 ** 2 + 4 * self.a6

    @property
    def b8(self) -> Poly:
        a1, a2, a3, a4, a6 = self.coeffs
        return a1 ** 2 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 ** 2 - a4 ** 2

    @property
    def c4(self) -> Poly:
        return self.b2 ** 2 - 24 * self.b4

    @property
    def c6(self) -> Poly:
        return -self.b2 ** 3 + 36 * self.b2 * self.b4 - 216 * self.b6

    @property
    def discriminant(self) -> Poly:
        b2, b4, b6, b8 = self.b2, self.b4, self.b6, self.b8
        return -b2 ** 2 * b8 - 8 * b4 ** 3 - 27 * b6 ** 2 + 9 * b2 * b4 * b6

    # -- points -----------------------------------------------------------
    def equation(self, x, y) -> RatFunc:
        a1, a2, a3, a4, a6 = (RatFunc(a) for a in self.coeffs)
        return y * y + a1 * x * y + a3 * y - (x * x * x + a2 * x * x + a4 * x + a6)

    def contains(self, p: "CurvePoint") -> bool:
        return p.is_zero or self.equation(p.x, p.y).is_zero()

    def point(self, x, y, name: str = "") -> "CurvePoint":
        p = CurvePoint(RatFunc.coerce(_as_rf(x)), RatFunc.coerce(_as_rf(y)), name)
        if not self.contains(p):
            raise ValueError(f"point {name or (x, y)} is not on the curve")
        return p

    def point_from_strings(self, x: str, y: str, name: str = "") -> "CurvePoint":
        return self.point(parse_ratfunc(x, self.var), parse_ratfunc(y, self.var), name)

    def zero(self) -> "CurvePoint":
        return CurvePoint(None, None, "O")

    def neg(self, p: "CurvePoint") -> "CurvePoint":
        if p.is_zero:
            return p
        return CurvePoint(p.x, -p.y - RatFunc(self.a1) * p.x - RatFunc(self.a3))

    def add(self, p: "CurvePoint", q: "CurvePoint") -> "CurvePoint":
        return group_law(self, p, q)

    def mul(self, n: int, p: "CurvePoint") -> "CurvePoint":
        if n < 0:
            return self.mul(-n, self.neg(p))
        out, base = self.zero(), p
        while n:
            if n & 1:
                out = self.add(out, base)
            base = self.add(base, base)
            n >>= 1
        return out

    def rescale(self, lam) -> "FnFieldCurve":
        """The isomorphic model a_i -> lam^i a_i (x -> lam^2 x, y -> lam^3 y)."""
        lam = Poly.coerce(lam)
        a1, a2, a3, a4, a6 = self.coeffs
        return FnFieldCurve(lam * a1, lam ** 2 * a2, lam ** 3 * a3, lam ** 4 * a4, lam ** 6 * a6,
                            self.var, self.name)

    def change_coordinates(self, r=0, s=0, t=0) -> "FnFieldCurve":
        """Model after x = x' + r, y = y' + s x' + t (r, s, t polynomials)."""
        r, s, t = Poly.coerce(r), Poly.coerce(s), Poly.coerce(t)
        a1, a2, a3, a4, a6 = self.coeffs
        n1 = a1 + 2 * s
        n2 = a2 - s * a1 + 3 * r - s * s
        n3 = a3 + r * a1 + 2 * t
        n4 = a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t
        n6 = a6 + r * a4 + r * r * a2 + r ** 3 - t * a3 - t * t - r * t * a1
        return FnFieldCurve(n1, n2, n3, n4, n6, self.var, self.name)


def _as_rf(a):
    if isinstance(a, (RatFunc, Poly)):
        return a
    return Poly([a])


def parse_ratfunc(text: str, var: str = "t") -> RatFunc:
    import sympy
    from .poly import poly_from_sympy
    v = sympy.Symbol(var)
    expr = sympy.sympify(str(text).replace("^", "**"), locals={var: v})
    if expr.free_symbols - {v}:
        raise ValueError(f"unexpected symbols in {text!r}")
    n, d = sympy.fraction(sympy.together(expr))
    return RatFunc(poly_from_sympy(n, v), poly_from_sympy(d, v))


@dataclass(frozen=True)
class CurvePoint:
    x: RatFunc | None
    y: RatFunc | None
    name: str = ""

    @property
    def is_zero(self) -> bool:
        return self.x is None

    def key(self) -> tuple:
        return ("O",) if self.is_zero else (self.x, self.y)

    def __eq__(self, other) -> bool:
        return isinstance(other, CurvePoint) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())


def group_law(c: FnFieldCurve, p: CurvePoint, q: CurvePoint) -> CurvePoint:
    """Chord-tangent addition on the long Weierstrass model."""
    for pt in (p, q):
        if not c.contains(pt):
            raise ValueError(f"point {pt.name or pt.key()} is not on the curve")
    if p.is_zero:
        return q
    if q.is_zero:
        return p
    a1, a2, a3, a4, a6 = (RatFunc(a) for a in c.coeffs)
    x1, y1, x2, y2 = p.x, p.y, q.x, q.y
    if x1 == x2:
        if (y1 + y2 + a1 * x2 + a3).is_zero():
            return c.zero()
        den = 2 * y1 + a1 * x1 + a3
        lam = (3 * x1 * x1 + 2 * a2 * x1 + a4 - a1 * y1) / den
        nu = (-x1 * x1 * x1 + a4 * x1 + 2 * a6 - a3 * y1) / den
    else:
        lam = (y2 - y1) / (x2 - x1)
        nu = (y1 * x2 - y2 * x1) / (x2 - x1)
    x3 = lam * lam + a1 * lam - a2 - x1 - x2
    y3 = -(lam + a1) * x3 - nu - a3
    return CurvePoint(x3, y3)


# ---------------------------------------------------------------------------
# torsion

@dataclass
class TorsionGroup:
    elements: list[CurvePoint]
    table: list[list[int]]
    invariants: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def index(self, p: CurvePoint) -> int:
        return self.elements.index(p)

    def element_order(self, i: int) -> int:
        k, j = 1, i
        while j != 0:
            j = self.table[j][i]
            k += 1
        return k

    def is_associative(self) -> bool:
        t, n = self.table, len(self.table)
        return all(t[t[a][b]][c] == t[a][t[b][c]] for a in range(n) for b in range(n) for c in range(n))

    def is_commutative(self) -> bool:
        t, n = self.table, len(self.table)
        return all(t[a][b] == t[b][a] for a in range(n) for b in range(n))


def _invariants_from_orders(orders: Sequence[int]) -> tuple[int, ...]:
    """Invariant factors of a finite abelian group from its element orders."""
    n = len(orders)
    primes = sorted({p for p in range(2, n + 1) if n % p == 0 and all(p % q for q in range(2, p))})
    per_prime: list[list[int]] = []
    for p in primes:
        # |G[p^k]| = p^(sum_i min(k, e_i)) determines the exponents e_i
        sizes, k = [1], 1
        while True:
            s = sum(1 for o in orders if (p ** k) % o == 0)
            sizes.append(s)
            if s == sizes[-2] and k > 1:
                break
            k += 1
        logs = []
        for s in sizes:
            e = 0
            while s > 1:
                s //= p
                e += 1
            logs.append(e)
        # number of cyclic factors with exponent >= k is logs[k] - logs[k-1]
        cnt = [logs[k] - logs[k - 1] for k in range(1, len(logs))]
        exps = []
        for k in range(len(cnt)):
            nxt = cnt[k + 1] if k + 1 < len(cnt) else 0
            exps += [k + 1] * (cnt[k] - nxt)
        per_prime.append(sorted((p ** e for e in exps), reverse=True))
    width = max((len(x) for x in per_prime), default=0)
    inv = []
    for i in range(width):
        d = 1
        for x in per_prime:
            if i < len(x):
                d *= x[i]
        inv.append(d)
    return tuple(sorted(d for d in inv if d > 1))


def specialize(c: FnFieldCurve, p: CurvePoint, t0) -> tuple[FnFieldCurve, CurvePoint]:
    """The fiber curve over Q at parameter value t0 and the image of p."""
    t0 = Fraction(t0)
    e = FnFieldCurve(*(Poly([a(t0)]) for a in c.coeffs), var=c.var)
    if p.is_zero:
        return e, p
    vals = []
    for f in (p.x, p.y):
        if f.den(t0) == 0:
            raise ValueError(f"point has a pole at {t0}")
        vals.append(RatFunc(f.num(t0) / f.den(t0)))
    return e, CurvePoint(vals[0], vals[1])


def specialized_order(c: FnFieldCurve, p: CurvePoint, max_order: int = 12) -> tuple[int, Fraction]:
    """Order of p at a smooth rational fiber, 0 if larger than ``max_order``.

    Specialization is injective on torsion in characteristic 0 and rational
    torsion has order at most 12, so 0 proves that p has infinite order.
    """
    disc = c.discriminant
    t0 = Fraction(2)
    while True:
        try:
            if disc(t0) != 0:
                e, q = specialize(c, p, t0)
                break
        except ValueError:
            pass
        t0 += 1
    acc = q
    for n in range(1, max_order + 1):
        if acc.is_zero:
            return n, t0
        acc = group_law(e, acc, q)
    return 0, t0


def torsion_structure(c: FnFieldCurve, candidates: Iterable[CurvePoint], limit: int = 64) -> TorsionGroup:
    """Subgroup generated by the candidates, by exact group-law closure."""
    gens = [p for p in candidates]
    for p in gens:
        if not c.contains(p):
            raise ValueError(f"candidate {p.name or p.key()} is not on the curve")
        n, t0 = specialized_order(c, p)
        if n == 0:
            raise ValueError(f"candidate {p.name or p.key()} has infinite order "
                             f"(its specialization at {c.var} = {t0} is not torsion)")
    elems = [c.zero()]
    seen = {elems[0]}
    frontier = list(elems)
    while frontier:
        new = []
        for a in frontier:
            for g in gens:
                s = c.add(a, g)
                if s not in seen:
                    seen.add(s)
                    elems.append(s)
                    new.append(s)
                    if len(elems) > limit:
                        raise ValueError("closure exceeds the limit; the candidates are not all torsion")
        frontier = new
    idx = {e: i for i, e in enumerate(elems)}
    table = [[idx[c.add(a, b)] for b in elems] for a in elems]
    grp = TorsionGroup(elems, table, ())
    orders = [grp.element_order(i) for i in range(len(elems))]
    grp.invariants = _invariants_from_orders(orders)
    return grp


# ---------------------------------------------------------------------------
# Kodaira fibers

@dataclass(frozen=True)
class PlaceFiber:
    place: str
    degree: int
    kodaira: str
    valuations: tuple[int, int, int]          # minimal model (c4, c6, disc); 99 for a zero c4/c6
    raw_valuations: tuple[int, int, int]

    @property
    def euler(self) -> int:
        return euler_number(self.kodaira) * self.degree


_ZERO_VAL = 99


def euler_number(kodaira: str) -> int:
    if kodaira.startswith("I") and kodaira[1:2].isdigit():
        n = int(kodaira[1:].rstrip("*"))
        return n + 6 if kodaira.endswith("*") else n
    return {"II": 2, "III": 3, "IV": 4, "IV*": 8, "III*": 9, "II*": 10}[kodaira]


def classify_valuations(v4: int, v6: int, vd: int) -> str:
    """Kodaira type from minimal (v(c4), v(c6), v(disc)) in residue characteristic 0."""
    if vd == 0:
        return "I0"
    if v4 == 0:
        return f"I{vd}"
    if vd == 2:
        return "II"
    if vd == 3:
        return "III"
    if vd == 4:
        return "IV"
    if vd == 6:
        return "I0*"
    if v4 == 2 and v6 == 3 and vd > 6:
        return f"I{vd - 6}*"
    if vd == 8:
        return "IV*"
    if vd == 9:
        return "III*"
    if vd == 10:
        return "II*"
    raise ValueError(f"valuations {(v4, v6, vd)} do not occur on a minimal model")


def _val(p: Poly, place) -> int:
    if p.is_zero():
        return _ZERO_VAL
    return p.valuation(place)


def weight_index(c: FnFieldCurve) -> int:
    """Least k with deg a_i <= i k: the model extends over infinity after the weight-k twist."""
    k = 0
    for i, a in zip((1, 2, 3, 4, 6), c.coeffs):
        if not a.is_zero():
            k = max(k, -(-a.degree // i))
    return k


def place_valuations(c: FnFieldCurve, place) -> tuple[int, int, int]:
    """Valuations of (c4, c6, disc) at a place, before minimalization."""
    if place == INF:
        k = weight_index(c)
        return tuple(_ZERO_VAL if p.is_zero() else w * k - p.degree
                     for p, w in ((c.c4, 4), (c.c6, 6), (c.discriminant, 12)))
    return (_val(c.c4, place), _val(c.c6, place), _val(c.discriminant, place))


def minimalize(v: tuple[int, int, int]) -> tuple[int, int, int]:
    v4, v6, vd = v
    while v4 >= 4 and v6 >= 6 and vd >= 12:
        v4, v6, vd = v4 - 4, v6 - 6, vd - 12
    return (min(v4, _ZERO_VAL), min(v6, _ZERO_VAL), vd)


def _place_poly(c: FnFieldCurve, place) -> Poly:
    if isinstance(place, str):
        if place == INF:
            return place
        place = parse_poly(place, c.var)
    p = Poly.coerce(place)
    if p.degree < 1:
        raise ValueError("a place must be a nonconstant polynomial or infinity")
    from .poly import factor_places
    fs = factor_places(p)
    if len(fs) != 1 or fs[0][1] != 1:
        raise ValueError(f"place {p.to_string(c.var)} is not irreducible")
    return p.monic()


def kodaira_at(c: FnFieldCurve, place) -> PlaceFiber:
    pl = _place_poly(c, place)
    raw = place_valuations(c, pl)
    v = minimalize(raw)
    name = INF if pl == INF else pl.to_string(c.var)
    deg = 1 if pl == INF else pl.degree
    return PlaceFiber(name, deg, classify_valuations(*v), v, raw)


def singular_fibers(c: FnFieldCurve) -> list[PlaceFiber]:
    """All singular fibers, finite places sorted by degree then coefficients, infinity last."""
    out = [kodaira_at(c, f) for f, _ in factor_places(c.discriminant)]
    out.append(kodaira_at(c, INF))
    return [f for f in out if f.kodaira != "I0"]


def euler_sum(fibers: Iterable[PlaceFiber]) -> int:
    return sum(f.euler for f in fibers)


def fiber_multiset(fibers: Iterable[PlaceFiber]) -> Counter:
    out: Counter = Counter()
    for f in fibers:
        out[f.kodaira] += f.degree
    return out
