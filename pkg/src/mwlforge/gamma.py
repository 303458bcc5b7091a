"""The intersection graph of torsion sections and fiber components of E_u.

E_u has torsion (Z/2)^2 x Z/3 generated by A2, A22 (order 2) and P3
(order 3), I6 fibers at u = 1, -1, oo and I2 fibers at u = 3, -3, 0.  A
torsion section a P3 + B meets component Theta_{v, j} with j the sum of the
component indices of its summands (the component group map is additive).

New fibrations are given by two fiber divisors built from these curves.  For
a curve S that is a section of the new fibration (S . F = 1) we read off the
component it meets in each reducible new fiber, its intersection with the new
zero section, and pairwise intersections, which is all the Shioda height
formula needs.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Sequence

from .mwl import FiberSpec, SectionSpec, contribution

PLACES_I6 = ("1", "-1", "inf")
PLACES_I2 = ("3", "-3", "0")

# component index met by each generator, per place of E_u
_GEN_INDEX = {
    "P3": {"1": 2, "-1": 2, "inf": 2, "3": 0, "-3": 0, "0": 0},
    "A2": {"1": 3, "-1": 3, "inf": 0, "3": 1, "-3": 1, "0": 0},
    "A22": {"1": 0, "-1": 3, "inf": 3, "3": 1, "-3": 0, "0": 1},
}


def fiber_size(place: str) -> int:
    return 6 if place in PLACES_I6 else 2


@dataclass(frozen=True)
class Torsion:
    """a P3 + b A2 + c A22 with a mod 3, b, c mod 2."""

    a: int
    b: int
    c: int

    def index(self, place: str) -> int:
        n = fiber_size(place)
        g = _GEN_INDEX
        return (self.a * g["P3"][place] + self.b * g["A2"][place] + self.c * g["A22"][place]) % n

    @property
    def name(self) -> str:
        parts = []
        if self.a:
            parts.append("P3" if self.a == 1 else "2P3")
        two = {(1, 0): "A2", (0, 1): "A22", (1, 1): "A23"}.get((self.b, self.c))
        if two:
            parts.append(two)
        return "+".join(parts) if parts else "O"


@dataclass(frozen=True)
class Component:
    place: str
    j: int

    @property
    def name(self) -> str:
        return f"Theta[{self.place},{self.j}]"


Curve = Torsion | Component


def all_torsion() -> list[Torsion]:
    return [Torsion(a, b, c) for a, b, c in product(range(3), range(2), range(2))]


def all_components() -> list[Component]:
    return [Component(v, j) for v in PLACES_I6 + PLACES_I2 for j in range(fiber_size(v))]


def parse_curve(name: str) -> Curve:
    """'O', 'P3', '2P3+A22', 'A23', 'Theta[-1,4]' ..."""
    s = name.replace(" ", "")
    if s.startswith("Theta["):
        v, j = s[6:-1].split(",")
        v = "inf" if v in ("oo", "inf", "infinity") else v
        if v not in PLACES_I6 + PLACES_I2:
            raise ValueError(f"no reducible fiber at u = {v}")
        j = int(j)
        if not 0 <= j < fiber_size(v):
            raise ValueError(f"component index {j} out of range at u = {v}")
        return Component(v, j)
    if s in ("O", "0"):
        return Torsion(0, 0, 0)
    a = b = c = 0
    for term in s.split("+"):
        if term == "P3":
            a += 1
        elif term == "2P3":
            a += 2
        elif term == "A2":
            b += 1
        elif term == "A22":
            c += 1
        elif term == "A23":
            b, c = b + 1, c + 1
        else:
            raise ValueError(f"unknown curve term {term!r}")
    return Torsion(a % 3, b % 2, c % 2)


def intersect(s: Curve, t: Curve) -> int:
    """Intersection number of two curves of the graph."""
    if isinstance(s, Torsion) and isinstance(t, Torsion):
        return -2 if s == t else 0
    if isinstance(s, Component) and isinstance(t, Torsion):
        s, t = t, s
    if isinstance(s, Torsion):
        return int(s.index(t.place) == t.j)
    if s.place != t.place:
        return 0
    n = fiber_size(s.place)
    if s.j == t.j:
        return -2
    if n == 2:
        return 2
    return int((s.j - t.j) % n in (1, n - 1))


@dataclass(frozen=True)
class Divisor:
    terms: tuple[tuple[Curve, int], ...]

    @classmethod
    def parse(cls, spec: Sequence[tuple[str, int]]) -> "Divisor":
        return cls(tuple((parse_curve(n), m) for n, m in spec))

    def dot(self, c: Curve) -> int:
        return sum(m * intersect(c, t) for t, m in self.terms)

    def dot_divisor(self, other: "Divisor") -> int:
        return sum(m * other.dot(t) for t, m in self.terms)

    @property
    def curves(self) -> list[Curve]:
        return [t for t, _ in self.terms]


@dataclass(frozen=True)
class NewFiber:
    """A reducible fiber of the new fibration.

    For an I_n fiber the divisor lists the components in cyclic order; for
    I_n* it carries multiplicities 1 and 2.  ``residual`` marks a
    fiber (such as an I2) of which only some components lie in the graph; the
    missing component R is handled through S.R = 1 - sum of the others.
    """

    kodaira: str
    position: str
    divisor: Divisor
    residual: bool = False


@dataclass
class FibrationData:
    key: str
    zero: Curve
    fibers: list[NewFiber]
    class_divisor: Divisor          # a full fiber, used to test S.F = 1

    def is_section(self, s: Curve) -> bool:
        return self.class_divisor.dot(s) == 1


def _simple(f: NewFiber) -> list[Curve]:
    return [c for c, m in f.divisor.terms if m == 1]


def component_met(f: NewFiber, s: Curve) -> Curve | str:
    hits = [c for c in _simple(f) if intersect(s, c) == 1 and c != s]
    mult2 = [c for c, m in f.divisor.terms if m > 1 and intersect(s, c) != 0 and c != s]
    if s in f.divisor.curves:
        raise ValueError(f"{s} is a fiber component, not a section")
    if mult2:
        raise ValueError(f"section meets a multiple component of {f.position}")
    if f.residual:
        if len(hits) > 1:
            raise ValueError("section meets several components")
        return hits[0] if hits else "R"
    if len(hits) != 1:
        raise ValueError(f"section meets {len(hits)} simple components of {f.position}")
    return hits[0]


def _adjacent(a: Curve, b: Curve) -> bool:
    return intersect(a, b) > 0


def component_indices(f: NewFiber, zero: Curve) -> dict:
    """Kodaira indices of the simple components of a new fiber."""
    theta0 = component_met(f, zero)
    k = f.kodaira
    if f.residual:
        if k != "I2":
            raise ValueError("only I2 fibers may have a residual component")
        others = [c for c in _simple(f) if c != theta0] + (["R"] if theta0 != "R" else [])
        return {theta0: 0, others[0]: 1}
    comps = f.divisor.curves
    if not k.endswith("*"):
        n = len(comps)
        i0 = comps.index(theta0)
        return {comps[(i0 + d) % n]: d for d in range(n)}
    # D type: theta0 and the near component share their double neighbour
    simple = _simple(f)
    doubles = [c for c, m in f.divisor.terms if m == 2]

    def nb(c):
        return [d for d in doubles if _adjacent(c, d)][0]

    near = [c for c in simple if c != theta0 and nb(c) == nb(theta0)]
    far = [c for c in simple if c != theta0 and c not in near]
    if len(near) != 1 or len(far) != 2:
        far, near = (far + near), []
        if len(far) != 3:
            raise ValueError("unexpected I_n* shape")
    out = {theta0: 0}
    if near:
        out[near[0]] = 1
        out[far[0]], out[far[1]] = 2, 3
    else:
        # I0*: all three other simple components are symmetric
        for i, c in enumerate(far):
            out[c] = i + 1
    return out


def section_data(fd: FibrationData, name: str, curve: Curve, relation: str = "") -> SectionSpec:
    if not fd.is_section(curve):
        raise ValueError(f"{name} is not a section of fibration {fd.key}")
    meets = {}
    for f in fd.fibers:
        idx = component_indices(f, fd.zero)
        meets[f.position] = idx[component_met(f, curve)]
    sz = 0 if curve == fd.zero else intersect(curve, fd.zero)
    return SectionSpec(name, meets, sz)


def fiber_specs(fd: FibrationData) -> list[FiberSpec]:
    return [FiberSpec(f.kodaira, f.position) for f in fd.fibers]


def height(fd: FibrationData, curve: Curve) -> Fraction:
    if curve == fd.zero:
        return Fraction(0)
    s = section_data(fd, "", curve)
    return 4 + 2 * s.meets_zero - sum(contribution(f, s.meets[f.position], s.meets[f.position])
                                      for f in fiber_specs(fd))


def pairing(fd: FibrationData, a: Curve, b: Curve) -> Fraction:
    if a == fd.zero or b == fd.zero:
        return Fraction(0)
    if a == b:
        return height(fd, a)
    sa, sb = section_data(fd, "", a), section_data(fd, "", b)
    s = sum(contribution(f, sa.meets[f.position], sb.meets[f.position]) for f in fiber_specs(fd))
    return 2 + sa.meets_zero + sb.meets_zero - intersect(a, b) - s


# ---------------------------------------------------------------------------
# the three fibrations

def _div(*terms) -> Divisor:
    return Divisor.parse([(t, 1) if isinstance(t, str) else t for t in terms])


@lru_cache(maxsize=None)
def fibration(key: str) -> FibrationData:
    if key == "36":
        d_inf = _div("Theta[-1,1]", ("Theta[-1,0]", 2), "Theta[-1,5]", ("O", 2),
                     ("Theta[1,0]", 2), "Theta[1,1]", "Theta[1,5]")
        d_0 = _div("P3", "Theta[inf,5]", ("Theta[inf,4]", 2), ("Theta[inf,3]", 2),
                   ("Theta[inf,2]", 2), "Theta[inf,1]", "2P3")
        d_q = _div(("A2", 2), "Theta[1,3]", "Theta[-1,3]", "Theta[3,1]", "Theta[-3,1]")
        d_m1 = _div("Theta[0,1]")
        fibers = [NewFiber("I2*", "w=0", d_0), NewFiber("I2*", "w=inf", d_inf),
                  NewFiber("I0*", "w=-1/4", d_q), NewFiber("I2", "w=-1", d_m1, residual=True)]
        return FibrationData("36", parse_curve("Theta[1,4]"), fibers, d_inf)
    if key == "40":
        d8 = _div("A2", "Theta[-1,3]", "Theta[-1,2]", "P3", "Theta[inf,2]", "Theta[inf,1]",
                  "A23+2P3", "Theta[-3,1]")
        d10 = _div("Theta[1,4]", "Theta[1,5]", "Theta[1,0]", "O", "Theta[-1,0]", "Theta[-1,5]",
                   "P3+A22", "Theta[inf,5]", "Theta[inf,4]", "2P3")
        return FibrationData("40", parse_curve("Theta[inf,3]"),
                             [NewFiber("I8", "I8", d8), NewFiber("I10", "I10", d10)], d8)
    if key == "40bis":
        d8 = _div("A23+2P3", "Theta[0,1]", "P3+A22", "Theta[inf,5]", "Theta[inf,4]",
                  "Theta[inf,3]", "Theta[inf,2]", "Theta[inf,1]")
        d10 = _div("Theta[-1,2]", "Theta[-1,3]", "A2", "Theta[1,3]", "Theta[1,4]", "Theta[1,5]",
                   "Theta[1,0]", "O", "Theta[-1,0]", "Theta[-1,1]")
        return FibrationData("40bis", parse_curve("Theta[1,1]"),
                             [NewFiber("I8", "I8", d8), NewFiber("I10", "I10", d10)], d8)
    raise ValueError(f"unknown fibration {key!r}")


FIBRATIONS = ("36", "40", "40bis")


def fiber_divisors_are_fibers(fd: FibrationData) -> bool:
    """Each divisor has self-intersection 0 and meets every graph curve in F.D = F.F'."""
    full = [f for f in fd.fibers if not f.residual]
    for f in full:
        if f.divisor.dot_divisor(f.divisor) != 0:
            return False
        for g in full:
            if f.divisor.dot_divisor(g.divisor) != 0:
                return False
        for c in all_torsion() + all_components():
            if f.divisor.dot(c) != fd.class_divisor.dot(c):
                return False
    return True
