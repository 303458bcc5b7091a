"""Section tables for the three frames of the surface.

Each row is a section O + kF + omega with omega given componentwise by a
small expression language, evaluated in the Niemeier component:

    alpha<j>     dual basis vector, <alpha_j, r_i> = delta_ij
    omega<j>     fundamental weight -alpha_j
    a<i> d<i> e<i>   simple root i of the component
    [k]          minimal vector of glue class k pairing nonnegatively
                 with the simple roots (a dual basis vector)
    delta, deltabar, deltatilde   the D_n glue vectors [1], [2], [3] in that form

with integer or rational coefficients, e.g. ``alpha1+a1+a2`` or
``[1]+d4+d6`` or ``2delta``.  Everything else (meets, k, heights,
pairings, orders, relations) is computed.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Sequence

from .exact import RatMatrix, coords_in_basis, det, solve_rational
from .frame import Frame, named_frame
from .mwl import (SectionSpec, contribution, fibers_of_frame, height, lattice_height,
                  pairing, section_from_vector)
from .rootlat import RootLattice

_TERM = re.compile(r"\s*([+-]?)\s*(\d+(?:/\d+)?)?\s*\*?\s*"
                   r"(alpha\d+|omega\d+|deltabar|deltatilde|delta|\[\d+\]|[ade]\d+|0)\s*")
_D_GLUE = {"delta": 1, "deltabar": 2, "deltatilde": 3}


def dual_glue_vector(comp: RootLattice, label: int) -> tuple[Fraction, ...]:
    """The vector alpha_j lying in glue class ``label`` (zero for label 0)."""
    return tuple(-x for x in comp.glue_representative(comp.neg_label(label)))


def parse_local(comp: RootLattice, expr: str) -> tuple[Fraction, ...]:
    """Evaluate a local omega expression in one root lattice component."""
    expr = expr.strip()
    out = [Fraction(0)] * comp.rank
    pos = 0
    if not expr:
        raise ValueError("empty expression")
    while pos < len(expr):
        m = _TERM.match(expr, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse {expr!r} at position {pos}")
        if pos > 0 and not m.group(1):
            raise ValueError(f"missing operator in {expr!r} at position {pos}")
        sign = -1 if m.group(1) == "-" else 1
        coef = sign * Fraction(m.group(2) or 1)
        sym = m.group(3)
        if sym == "0":
            vec = [Fraction(0)] * comp.rank
        elif sym.startswith("alpha"):
            vec = comp.dual_basis_vector(int(sym[5:]))
        elif sym.startswith("omega"):
            vec = comp.fundamental_weight(int(sym[5:]))
        elif sym.startswith("["):
            vec = dual_glue_vector(comp, int(sym[1:-1]))
        elif sym in _D_GLUE:
            if comp.family != "D":
                raise ValueError(f"{sym} only makes sense on a D component")
            vec = dual_glue_vector(comp, _D_GLUE[sym])
        else:
            if sym[0] != comp.labels[0][0]:
                raise ValueError(f"root {sym} does not belong to {comp.name}")
            i = int(sym[1:])
            if not 1 <= i <= comp.rank:
                raise ValueError(f"root index {i} out of range for {comp.name}")
            vec = [Fraction(int(k == i - 1)) for k in range(comp.rank)]
        out = [a + coef * b for a, b in zip(out, vec)]
        pos = m.end()
    return tuple(out)


def parse_omega(frame: Frame, parts: Sequence[str]) -> tuple[Fraction, ...]:
    lat = frame.lattice
    if len(parts) != len(lat.components):
        raise ValueError(f"expected {len(lat.components)} component expressions, got {len(parts)}")
    out: list[Fraction] = []
    for comp, e in zip(lat.components, parts):
        out.extend(parse_local(comp, e))
    return tuple(out)


@dataclass(frozen=True)
class RowDef:
    name: str
    omega: tuple[str, ...]


@dataclass(frozen=True)
class TableDef:
    key: str
    frame: str
    rows: tuple[RowDef, ...]
    basis: tuple[str, ...]              # free generators used for relations
    torsion: tuple[str, ...] = ()       # torsion generators used for relations
    pair_with: tuple[str, ...] = ()     # columns <row, X>


def _rows(spec) -> tuple[RowDef, ...]:
    return tuple(RowDef(n, tuple(p.strip() for p in o.split(","))) for n, o in spec)


TABLES: dict[str, TableDef] = {
    "d64": TableDef(
        "d64", "d64-i1",
        _rows([
            ("Q1", "0,[2],[3],[1]"),
            ("Q3", "0,[3],[1],[2]"),
            ("Q2", "0,[1]+d4+d6,[2],[3]"),
            ("W1", "[1],0,[3],[2]"),
            ("W1+Q1", "[1],[2],0,[3]"),
            ("W1+Q3", "[1],[3],[2],0"),
            ("W1+Q2", "[1],[1]+d4+d6,[1],[1]"),
        ]),
        basis=("W1",), torsion=("Q1", "Q3")),
    "a92d6-i1": TableDef(
        "a92d6-i1", "a92d6-i1",
        _rows([
            ("V1", "alpha9,alpha8,delta"),
            ("V2", "alpha8,alpha6,0"),
            ("V3", "alpha7,alpha4,delta"),
            ("V4", "alpha6,alpha2,0"),
            ("V5", "alpha5,0,delta"),
            ("V6", "alpha4,alpha8,0"),
            ("V7", "alpha3,alpha6,delta"),
            ("V8", "alpha2,alpha4,0"),
            ("V9", "alpha1+a1+a2,alpha2,delta"),
            ("V11", "a1+2a2+a3,0,0"),
            ("V12", "0,0,2delta"),
        ]),
        basis=("V1", "V2"), pair_with=("V1", "V2")),
    "a92d6-i2": TableDef(
        "a92d6-i2", "a92d6-i2",
        _rows([
            ("Z1", "alpha4,alpha3,deltatilde"),
            ("Z2", "alpha8,alpha6,0"),
            ("Z3", "alpha2,alpha9,deltatilde"),
            ("Z4", "alpha6,alpha2,0"),
            ("Z5", "0,alpha5,deltatilde"),
            ("Z6", "alpha4,alpha8,0"),
            ("Z7", "alpha8,alpha1,deltatilde"),
            ("Z8", "alpha2,alpha4,0"),
            ("Z9", "alpha6,alpha7,deltatilde"),
            ("Z11", "a1+2a2+a3,0,0"),
            ("Z12", "0,0,2deltatilde"),
        ]),
        basis=("Z1", "Z2"), pair_with=("Z1", "Z2")),
}


@dataclass
class TableRow:
    name: str
    omega: tuple[str, ...]
    section: SectionSpec
    contributions: dict[str, Fraction]
    height: Fraction
    lattice_height: Fraction
    pairings: dict[str, Fraction] = field(default_factory=dict)
    relation: dict[str, int] = field(default_factory=dict)

    @property
    def order(self) -> int:
        return self.section.order


@dataclass
class TableResult:
    key: str
    frame: Frame
    fibers: list
    rows: list[TableRow]

    def row(self, name: str) -> TableRow:
        for r in self.rows:
            if r.name == name:
                return r
        raise KeyError(name)


def in_root_lattice(frame: Frame, v: Sequence) -> bool:
    R = frame.W_root_basis
    if not any(v):
        return True
    c = coords_in_basis(v, R) if R else None
    return c is not None and all(x.denominator == 1 for x in c)


def lattice_relation(frame: Frame, target: Sequence, free: Sequence[Sequence],
                     torsion: Sequence[tuple[Sequence, int]] = ()) -> tuple[int, ...]:
    """Integers (c, t) with target = sum c_i free_i + sum t_j tors_j in W / W_root.

    The free coefficients come from the height pairing, the torsion ones from
    a search over the torsion orders; the final identity is checked as a
    membership in the root lattice.
    """
    if free:
        M = RatMatrix([[frame.height_pairing(a, b) for b in free] for a in free])
        if det(M) == 0:
            raise ValueError("free generators are dependent")
        c = solve_rational(M, [frame.height_pairing(target, b) for b in free])
        if any(x.denominator != 1 for x in c):
            raise ValueError(f"not an integral combination of the free generators: {c}")
        c = [int(x) for x in c]
    else:
        c = []
    base = [Fraction(x) - sum((ci * f[j] for ci, f in zip(c, free)), Fraction(0))
            for j, x in enumerate(target)]
    for t in product(*[range(o) for _, o in torsion]):
        rest = [x - sum((ti * g[j] for ti, (g, _) in zip(t, torsion)), Fraction(0))
                for j, x in enumerate(base)]
        if in_root_lattice(frame, rest):
            return tuple(c) + tuple(t)
    raise ValueError("no relation found modulo the root lattice")


def torsion_order_of(frame: Frame, v: Sequence, limit: int = 12) -> int:
    for k in range(1, limit + 1):
        if in_root_lattice(frame, [k * x for x in v]):
            return k
    return 0


@lru_cache(maxsize=None)
def compute_table(key: str) -> TableResult:
    """Build a table (cached per process; treat the result as read-only)."""
    tdef = TABLES[key]
    frame = named_frame(tdef.frame)
    fibers = fibers_of_frame(frame)
    secs = {}
    for rd in tdef.rows:
        omega = parse_omega(frame, rd.omega)
        secs[rd.name] = section_from_vector(frame, omega, rd.name)
    rows = []
    free = [secs[n].omega for n in tdef.basis]
    tors = []
    for n in tdef.torsion:
        o = torsion_order_of(frame, secs[n].omega)
        if o == 0:
            raise ValueError(f"{n} is not torsion")
        tors.append((secs[n].omega, o))
    names = tdef.basis + tdef.torsion
    for rd in tdef.rows:
        s = secs[rd.name]
        contr = {f.position: contribution(f, s.meets[f.position], s.meets[f.position]) for f in fibers}
        prs = {q: pairing(s, secs[q], fibers) if q != rd.name else height(s, fibers)
               for q in tdef.pair_with}
        rel = lattice_relation(frame, s.omega, free, tors)
        rows.append(TableRow(rd.name, rd.omega, s, contr, height(s, fibers),
                             lattice_height(frame, s), prs,
                             {n: c for n, c in zip(names, rel) if c}))
    return TableResult(key, frame, fibers, rows)


# generating pairs of the two A9^2 D6 frames and their reduced forms

MW_FORMS: dict[str, RatMatrix] = {
    "a92d6-i1": RatMatrix([[Fraction(61, 40), Fraction(1, 20)], [Fraction(1, 20), Fraction(1, 10)]]),
    "a92d6-i2": RatMatrix([[Fraction(1, 10), Fraction(0)], [Fraction(0), Fraction(3, 2)]]),
}

GENERATING_PAIRS: dict[str, tuple[tuple[str, str], ...]] = {
    "a92d6-i1": tuple(("V2", x) for x in ("V1", "V3", "V7", "V9", "V5")) + (("V1", "V3"), ("V1", "V9")),
    "a92d6-i2": tuple(("Z2", x) for x in ("Z1", "Z3", "Z7", "Z9", "Z5")) + (("Z1", "Z3"), ("Z1", "Z9")),
}


def pair_gram(table: TableResult, a: str, b: str) -> RatMatrix:
    """Lattice-side height Gram of two rows of a table."""
    om = [table.row(a).section.omega, table.row(b).section.omega]
    return RatMatrix([[table.frame.height_pairing(x, y) for y in om] for x in om])
