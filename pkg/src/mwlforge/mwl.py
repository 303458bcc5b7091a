"""Shioda height machinery for sections O + kF + omega.

A section is recorded by which component of each reducible fiber it meets,
its intersection with the zero section and, when it comes from the lattice
side, its glue vector omega.  Heights use

    <P, Q> = 2 + P.O + Q.O - P.Q - sum_v contr_v(P, Q),

and for lattice sections P.O = k - 2 and P.Q = -2 + k_P + k_Q + <omega_P, omega_Q>.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Mapping, Sequence

from .exact import (RatMatrix, bilinear, det, lcm, solve_integer, solve_rational)
from .lattice_enum import closest_vectors, fincke_pohst
from .rootlat import parse_type

_KODAIRA = re.compile(r"^(I)(\d+)(\*?)$|^(II|III|IV)(\*?)$")


@dataclass(frozen=True)
class FiberSpec:
    """A reducible (or any) Kodaira fiber at a named place."""

    kodaira: str
    position: str = ""

    def __post_init__(self):
        if not _KODAIRA.match(self.kodaira):
            raise ValueError(f"unknown Kodaira symbol {self.kodaira!r}")

    @property
    def is_star(self) -> bool:
        return self.kodaira.endswith("*")

    @property
    def n(self) -> int | None:
        m = _KODAIRA.match(self.kodaira)
        return int(m.group(2)) if m.group(1) else None

    @property
    def component_count(self) -> int:
        k = self.kodaira
        if k.startswith("I") and k[1:2].isdigit():
            n = self.n
            return n + 5 if self.is_star else max(n, 1)
        return {"II": 1, "III": 2, "IV": 3, "IV*": 7, "III*": 8, "II*": 9}[k]

    @property
    def simple_components(self) -> int:
        """Number of multiplicity-one components (the component group order)."""
        k = self.kodaira
        if k.startswith("I") and k[1:2].isdigit():
            return 4 if self.is_star else max(self.n, 1)
        return {"II": 1, "III": 2, "IV": 3, "IV*": 3, "III*": 2, "II*": 1}[k]

    @property
    def euler(self) -> int:
        k = self.kodaira
        if k.startswith("I") and k[1:2].isdigit():
            return self.n + 6 if self.is_star else self.n
        return {"II": 2, "III": 3, "IV": 4, "IV*": 8, "III*": 9, "II*": 10}[k]

    @property
    def root_type(self) -> str | None:
        k = self.kodaira
        if k.startswith("I") and k[1:2].isdigit():
            if self.is_star:
                return f"D{self.n + 4}"
            return f"A{self.n - 1}" if self.n > 1 else None
        return {"II": None, "III": "A1", "IV": "A2", "IV*": "E6", "III*": "E7", "II*": "E8"}[k]


def dictionary_ade_kodaira(root_type: str) -> str:
    fam, n = parse_type(root_type)
    if fam == "A":
        return f"I{n + 1}"
    if fam == "D":
        return f"I{n - 4}*"
    return {6: "IV*", 7: "III*", 8: "II*"}[n]


def contribution(fiber: FiberSpec, i: int, j: int) -> Fraction:
    """Local correction contr_v for sections meeting simple components i and j."""
    m = fiber.simple_components
    if not (0 <= i < m and 0 <= j < m):
        raise ValueError(f"component index out of range for {fiber.kodaira}: {i}, {j}")
    if i == 0 or j == 0:
        return Fraction(0)
    i, j = min(i, j), max(i, j)
    k = fiber.kodaira
    if k.startswith("I") and k[1:2].isdigit():
        n = fiber.n
        if not fiber.is_star:
            return Fraction(i * (n - j), n)
        if i == j:
            return Fraction(1) if i == 1 else 1 + Fraction(n, 4)
        return Fraction(1, 2) if i == 1 else Fraction(1, 2) + Fraction(n, 4)
    if k == "III":
        return Fraction(1, 2)
    if k == "IV":
        return Fraction(2, 3) if i == j else Fraction(1, 3)
    if k == "IV*":
        return Fraction(4, 3) if i == j else Fraction(2, 3)
    if k == "III*":
        return Fraction(3, 2)
    raise ValueError(f"{k} has no nonzero simple components")


@dataclass(frozen=True)
class SectionSpec:
    name: str
    meets: Mapping[str, int]
    meets_zero: int = 0
    k: int | None = None
    omega: tuple[Fraction, ...] | None = field(default=None, repr=False)
    labels: tuple[int, ...] | None = None
    order: int | None = None
    gram: RatMatrix | None = field(default=None, repr=False, compare=False)

    @property
    def in_N(self) -> bool:
        return self.labels is not None and not any(self.labels)


def _meet(p: SectionSpec, fiber: FiberSpec) -> int:
    if fiber.position not in p.meets:
        raise KeyError(f"section {p.name} has no data for fiber {fiber.position}")
    return p.meets[fiber.position]


def contributions(p: SectionSpec, fibers: Sequence[FiberSpec]) -> dict[str, Fraction]:
    return {f.position: contribution(f, _meet(p, f), _meet(p, f)) for f in fibers}


def height(p: SectionSpec, fibers: Sequence[FiberSpec]) -> Fraction:
    return 4 + 2 * p.meets_zero - sum(contributions(p, fibers).values())


def intersection(p: SectionSpec, q: SectionSpec) -> Fraction:
    """P.Q for lattice sections, from omega and k."""
    if p.omega is None or q.omega is None or p.k is None or q.k is None or p.gram is None:
        raise ValueError("P.Q must be supplied for sections without lattice data")
    return -2 + p.k + q.k + bilinear(p.omega, q.omega, p.gram)


def pairing(p: SectionSpec, q: SectionSpec, fibers: Sequence[FiberSpec],
            pq: int | Fraction | None = None) -> Fraction:
    """Height pairing; ``pq`` is P.Q, derived from lattice data when omitted."""
    if p is q:
        return height(p, fibers)
    if pq is None:
        pq = intersection(p, q)
    s = sum((contribution(f, _meet(p, f), _meet(q, f)) for f in fibers), Fraction(0))
    return 2 + p.meets_zero + q.meets_zero - Fraction(pq) - s


def height_matrix(sections: Sequence[SectionSpec], fibers: Sequence[FiberSpec],
                  intersections: Mapping[tuple[str, str], int] | None = None) -> RatMatrix:
    def pq(a, b):
        if intersections is None:
            return None
        return intersections.get((a.name, b.name), intersections.get((b.name, a.name)))

    return RatMatrix([[pairing(a, b, fibers, pq(a, b)) if a is not b else height(a, fibers)
                       for b in sections] for a in sections])


def express_in_basis(target: SectionSpec, basis: Sequence[SectionSpec], fibers: Sequence[FiberSpec],
                     intersections: Mapping[tuple[str, str], int] | None = None) -> tuple[int, ...]:
    M = height_matrix(basis, fibers, intersections)
    if det(M) == 0:
        raise ValueError("basis height matrix is singular")

    def pq(a, b):
        if intersections is None:
            return None
        return intersections.get((a.name, b.name), intersections.get((b.name, a.name)))

    rhs = [pairing(target, b, fibers, pq(target, b)) for b in basis]
    c = solve_rational(M, rhs)
    if any(x.denominator != 1 for x in c):
        raise ValueError(f"{target.name} is not an integral combination of the basis: {c}")
    c = tuple(int(x) for x in c)
    quad = sum((c[i] * c[j] * M[i, j] for i in range(len(c)) for j in range(len(c))), Fraction(0))
    if quad != height(target, fibers):
        raise ValueError(f"height of {target.name} disagrees with its basis expression")
    return c


# ---------------------------------------------------------------------------
# lattice-side sections

def fibers_of_frame(frame) -> list[FiberSpec]:
    names = [c.name for c in frame.root_components]
    out = []
    for i, c in enumerate(frame.root_components):
        pos = c.name if names.count(c.name) == 1 else f"{c.name}({names[:i + 1].count(c.name)})"
        out.append(FiberSpec(dictionary_ade_kodaira(c.name), pos))
    return out


def _node_to_index(family: str, rank: int, node: int) -> int:
    """Kodaira component index of the simple component dual to Bourbaki node (1-based)."""
    if family == "A":
        return node
    if family == "D":
        if node == 1:
            return 1
        if node == rank - 1:
            return 2
        if node == rank:
            return 3
    if family == "E":
        if rank == 6 and node in (1, 6):
            return 1 if node == 1 else 2
        if rank == 7 and node == 7:
            return 1
    raise ValueError("node is not a multiplicity-one node")


def meets_from_omega(frame, omega: Sequence) -> dict[str, int] | None:
    """Component met in each reducible fiber, or None when omega is not admissible."""
    out = {}
    for comp, fib in zip(frame.root_components, fibers_of_frame(frame)):
        ps = [frame.pair(omega, r) for r in comp.simple_roots]
        if any(p not in (0, 1) for p in ps):
            return None
        hit = [i for i, p in enumerate(ps) if p]
        if sum(comp.marks[i] for i in hit) > 1:
            return None
        out[fib.position] = _node_to_index(comp.family, comp.rank, hit[0] + 1) if hit else 0
    return out


def section_from_vector(frame, omega: Sequence, name: str = "") -> SectionSpec:
    omega = tuple(Fraction(x) for x in omega)
    if not frame.contains(omega):
        raise ValueError("omega is not in W")
    meets = meets_from_omega(frame, omega)
    if meets is None:
        raise ValueError("omega does not meet every reducible fiber in one simple component")
    n2 = frame.pair(omega, omega)
    if n2.denominator != 1 or n2 % 2:
        raise ValueError("omega has non-even norm")
    k = int(-n2 / 2)
    labels = frame.glue_labels(omega)
    order = frame.lattice.order(labels) if any(labels) else 0
    return SectionSpec(name, meets, k - 2, k, omega, labels, order, frame.lattice.gram)


def _local_candidates(frame, comp_index: int, label: int) -> list[tuple[Fraction, ...]]:
    """Admissible local parts of omega in one Niemeier component, best first."""
    lat = frame.lattice
    comp = lat.components[comp_index]
    sl = lat.slice(comp_index)
    G = comp.gram
    t_loc = [lat.local(comp_index, t) for t in frame.embedding.images
             if any(lat.local(comp_index, t))]
    rcomps = [c for c in frame.root_components
              if any(any(x for x in lat.local(comp_index, r)) for r in c.simple_roots)]
    r_loc = [[lat.local(comp_index, r) for r in c.simple_roots] for c in rcomps]

    def admissible(v):
        if any(comp.pair(v, t) != 0 for t in t_loc):
            return False
        for c, rs in zip(rcomps, r_loc):
            ps = [comp.pair(v, r) for r in rs]
            if any(p not in (0, 1) for p in ps):
                return False
            if sum(c.marks[i] for i, p in enumerate(ps) if p) > 1:
                return False
        return True

    rep = comp.glue_representative(label)
    if admissible(rep):
        return [rep]
    options = [[None] + [i for i, m in enumerate(c.marks) if m == 1] for c in rcomps]
    found: list[tuple[Fraction, tuple[Fraction, ...]]] = []
    for pattern in product(*options):
        rows, rhs = [], []
        for t in t_loc:
            rows.append([int(x) for x in G @ t])
            rhs.append(-comp.pair(rep, t))
        for choice, rs in zip(pattern, r_loc):
            for i, r in enumerate(rs):
                rows.append([int(x) for x in G @ r])
                rhs.append(int(choice == i) - comp.pair(rep, r))
        if any(x.denominator != 1 for x in rhs):
            continue
        sol = solve_integer(rows, [int(x) for x in rhs], comp.rank)
        if sol is None:
            continue
        x0, K = sol
        v0 = tuple(a + b for a, b in zip(rep, x0))
        if K:
            Q = [[-comp.pair(a, b) for b in K] for a in K]
            c = [-comp.pair(v0, a) for a in K]
            ystar = solve_rational(Q, [-x for x in c])
            pts = closest_vectors(Q, ystar)
            vs = [tuple(v0[j] + sum(y[i] * K[i][j] for i in range(len(K))) for j in range(comp.rank))
                  for y in pts]
        else:
            vs = [v0]
        for v in vs:
            if admissible(v):
                found.append((-comp.pair(v, v), v))
    found.sort()
    return [v for _, v in found]


def section_for_class(frame, labels: Sequence[int], name: str = "") -> SectionSpec:
    lat = frame.lattice
    omega: list[Fraction] = []
    for i, lab in enumerate(labels):
        cands = _local_candidates(frame, i, lab)
        if not cands:
            raise ValueError(f"no admissible representative in class {tuple(labels)}")
        omega.extend(cands[0])
    sec = section_from_vector(frame, omega, name)
    order = lat.order(labels) if any(labels) else 1
    return SectionSpec(sec.name, sec.meets, sec.meets_zero, sec.k, sec.omega, tuple(labels), order,
                       sec.gram)


def sections_from_cosets(frame) -> list[SectionSpec]:
    """One section per class of W/N, built from an admissible glue vector."""
    out = []
    for labels in frame.wn_classes:
        out.append(section_for_class(frame, labels, "[" + ",".join(map(str, labels)) + "]"))
    return out


def lattice_height(frame, p: SectionSpec) -> Fraction:
    """Height via orthogonal projection (independent of the contribution table)."""
    return frame.height_pairing(p.omega, p.omega)


# ---------------------------------------------------------------------------
# binary forms

@dataclass(frozen=True)
class QformResult:
    transform: tuple[tuple[int, int], tuple[int, int]] | None
    witness: str = ""

    @property
    def equivalent(self) -> bool:
        return self.transform is not None


def _as_gram(g) -> list[list[Fraction]]:
    rows = g.rows if isinstance(g, RatMatrix) else g
    m = [[Fraction(x) for x in r] for r in rows]
    if len(m) != 2 or any(len(r) != 2 for r in m) or m[0][1] != m[1][0]:
        raise ValueError("expected a symmetric 2x2 Gram matrix")
    if m[0][0] <= 0 or det(m) <= 0:
        raise ValueError("form is not positive definite")
    return m


def representations(g, value) -> list[tuple[int, int]]:
    """All integer (x, y) with (x, y) g (x, y)^T = value (complete, g positive definite)."""
    m = _as_gram(g)
    value = Fraction(value)
    out = []
    for v in fincke_pohst(m, value):
        if bilinear(v, v, m) == value:
            out.append(v)
    return sorted(out, key=lambda v: (sum(map(abs, v)), tuple(-x for x in v)))


def modular_obstruction(g, value, max_modulus: int = 50) -> int | None:
    """Smallest modulus showing that ``value`` is not represented by g, if any."""
    m = _as_gram(g)
    value = Fraction(value)
    d = 1
    for x in (m[0][0], m[0][1], m[1][1], value):
        d = lcm(d, x.denominator)
    a, b, c, t = (int(m[0][0] * d), int(2 * m[0][1] * d), int(m[1][1] * d), int(value * d))
    for q in range(2, max_modulus + 1):
        if all((a * x * x + b * x * y + c * y * y - t) % q for x in range(q) for y in range(q)):
            return q
    return None


def qform_equivalent(g1, g2, search_bound: int = 50) -> QformResult:
    """Integer M with det M = +-1 and M g1 M^T = g2, or None with a witness.

    The search is complete: representations of the diagonal entries of g2 by g1
    form finite sets.  ``search_bound`` caps the modulus tried when looking for a
    congruence obstruction to report.
    """
    m1, m2 = _as_gram(g1), _as_gram(g2)
    if det(m1) != det(m2):
        return QformResult(None, f"determinants differ: {det(m1)} != {det(m2)}")
    for src, dst, tag in ((m2, m1, "g2"), (m1, m2, "g1")):
        for k in range(2):
            if not representations(src, dst[k][k]):
                q = modular_obstruction(src, dst[k][k], search_bound)
                why = f" (no solutions modulo {q})" if q else " (exhaustive enumeration)"
                return QformResult(None, f"{dst[k][k]} is not represented by the form of {tag}" + why)
    rows0 = representations(m1, m2[0][0])
    rows1 = representations(m1, m2[1][1])
    for r0 in rows0:
        for r1 in rows1:
            if abs(r0[0] * r1[1] - r0[1] * r1[0]) != 1:
                continue
            if bilinear(r0, r1, m1) == m2[0][1]:
                return QformResult((tuple(r0), tuple(r1)))
    return QformResult(None, "no unimodular transform among the complete representation sets")
