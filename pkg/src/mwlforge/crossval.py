"""Heights of the Weierstrass-side fibrations from transcribed meets data.

The data file records, for each new fibration, which component of each
reducible fiber a section meets (or the resulting contributions), its height
and its expression in the generators.  Intersections with the new zero
section and between sections come from the graph of E_u.  The resulting
height Gram of the generators is compared with the lattice side.
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from pathlib import Path

from . import gamma
from .exact import RatMatrix, det, solve_rational
from .mwl import FiberSpec, SectionSpec, contribution, height, pairing, qform_equivalent

DATA_ENV = "MWLFORGE_DATA"

LATTICE_TABLE = {"36": "d64", "40": "a92d6-i1", "40bis": "a92d6-i2"}
LATTICE_FRAME = {"36": "d64-i1", "40": "a92d6-i1", "40bis": "a92d6-i2"}


def meets_path() -> Path | None:
    p = os.environ.get(DATA_ENV)
    return Path(p) if p else None


def load_meets(path: str | Path | None = None) -> dict:
    path = path or meets_path()
    if path is not None:
        return json.loads(Path(path).read_text())
    return json.loads(resources.files("mwlforge").joinpath("data/meets.json").read_text())


@dataclass
class SectionCheck:
    curve: str
    name: str
    meets: dict[str, int]
    meets_zero: int
    contributions: list[Fraction]
    height: Fraction
    table_height: Fraction
    graph_meets: dict[str, int]
    relation: dict[str, int] = field(default_factory=dict)
    table_relation: dict[str, int] | None = None

    @property
    def height_ok(self) -> bool:
        return self.height == self.table_height

    @property
    def meets_ok(self) -> bool:
        return self.meets == self.graph_meets

    @property
    def relation_ok(self) -> bool:
        return self.table_relation is None or self.relation == self.table_relation

    @property
    def ok(self) -> bool:
        return self.height_ok and self.meets_ok


@dataclass
class FibrationCheck:
    key: str
    fibers: list[FiberSpec]
    sections: list[SectionCheck]
    generators: list[str]
    generator_names: list[str]
    gram: RatMatrix
    listed_pairings: list[tuple[str, str, Fraction, Fraction]]

    @property
    def ok(self) -> bool:
        """Heights, meets and listed pairings agree (relations are reported separately)."""
        return all(s.ok for s in self.sections) and all(a == b for *_, a, b in self.listed_pairings)

    def relation_mismatches(self) -> list[SectionCheck]:
        return [s for s in self.sections if not s.relation_ok]


def _index_from_contribution(f: FiberSpec, c: Fraction, graph_index: int) -> int:
    """Turn a self-contribution into a component index.

    The value fixes the index up to the symmetries of the fiber (i vs n - i
    for I_n, the two far components of I_n*); the graph index picks the
    representative when it is compatible.
    """
    cands = [i for i in range(f.simple_components) if contribution(f, i, i) == c]
    if not cands:
        raise ValueError(f"{c} is not a contribution of {f.kodaira}")
    return graph_index if graph_index in cands else cands[0]


def check_fibration(key: str, data: dict | None = None) -> FibrationCheck:
    data = (data or load_meets())[key]
    fd = gamma.fibration(key)
    fibers = [FiberSpec(k, p) for k, p in data["fibers"]]
    graph_fibers = gamma.fiber_specs(fd)
    if [(f.kodaira, f.position) for f in fibers] != [(f.kodaira, f.position) for f in graph_fibers]:
        raise ValueError(f"fiber list of {key} disagrees with the graph")
    zero = gamma.parse_curve(data["zero"])
    if zero != fd.zero:
        raise ValueError(f"zero section of {key} disagrees with the graph")

    def spec(curve_name: str, row: dict) -> tuple[SectionSpec, dict]:
        c = gamma.parse_curve(curve_name)
        g = gamma.section_data(fd, curve_name, c) if c != fd.zero else \
            SectionSpec(curve_name, {f.position: 0 for f in fibers}, -2)
        if "indices" in row:
            meets = {f.position: int(i) for f, i in zip(fibers, row["indices"])}
        else:
            meets = {f.position: _index_from_contribution(f, Fraction(x), g.meets[f.position])
                     for f, x in zip(fibers, row["contributions"])}
        return SectionSpec(curve_name, meets, g.meets_zero), dict(g.meets)

    rows = {r["curve"]: r for r in data["sections"]}
    gens = data["generators"]
    gnames = data.get("generator_names", gens)
    gen_specs = [spec(g, rows[g])[0] if g in rows else gamma.section_data(fd, g, gamma.parse_curve(g))
                 for g in gens]

    def pq(a: str, b: str) -> int:
        return gamma.intersect(gamma.parse_curve(a), gamma.parse_curve(b))

    def pair(s: SectionSpec, t: SectionSpec) -> Fraction:
        if s.name == t.name:
            return height(s, fibers)
        return pairing(s, t, fibers, pq(s.name, t.name))

    gram = RatMatrix([[pair(a, b) for b in gen_specs] for a in gen_specs])
    checks = []
    for r in data["sections"]:
        s, gm = spec(r["curve"], r)
        is_zero = gamma.parse_curve(r["curve"]) == fd.zero
        h = Fraction(0) if is_zero else height(s, fibers)
        contr = [contribution(f, s.meets[f.position], s.meets[f.position]) for f in fibers]
        rel = {}
        if not is_zero and det(gram) != 0:
            rhs = [pair(s, g) for g in gen_specs]
            c = solve_rational(gram, rhs)
            if all(x.denominator == 1 for x in c):
                rel = {n: int(x) for n, x in zip(gnames, c) if x}
            else:
                rel = {"non-integral": 1}
        table_rel = r.get("relation")
        if table_rel is not None:
            table_rel = {k: int(v) for k, v in table_rel.items()}
        checks.append(SectionCheck(r["curve"], r.get("name", ""), dict(s.meets), s.meets_zero,
                                   contr, h, Fraction(r["height"]), gm, rel, table_rel))
    listed = []
    for a, b, v in data.get("pairings", []):
        if a not in rows or b not in rows:
            raise ValueError(f"pairing row {a}, {b} refers to unknown sections")
        listed.append((a, b, pair(spec(a, rows[a])[0], spec(b, rows[b])[0]), Fraction(v)))
    return FibrationCheck(key, fibers, checks, gens, gnames, gram, listed)


@lru_cache(maxsize=None)
def lattice_gram(key: str) -> RatMatrix:
    """Lattice-side Gram of the sections named as the generators of a fibration."""
    from .tables import compute_table
    data = load_meets()[key]
    names = [data["lattice_names"][n] for n in data.get("generator_names", data["generators"])]
    t = compute_table(LATTICE_TABLE[key])
    frame = t.frame
    om = [t.row(n).section.omega for n in names]
    return RatMatrix([[frame.height_pairing(a, b) for b in om] for a in om])


def cross_oracle(key: str) -> dict:
    """Compare the Shioda Gram of the generators with both lattice-side Grams."""
    from .frame import named_frame
    chk = check_fibration(key)
    lat = lattice_gram(key)
    frame = named_frame(LATTICE_FRAME[key])
    mw = frame.mw_lattice_gram
    if chk.gram.nrows == 1:
        equiv = chk.gram == mw
    else:
        equiv = qform_equivalent(chk.gram, mw).equivalent
    return {"key": key, "shioda_gram": chk.gram, "lattice_gram": lat, "frame_mw_gram": mw,
            "equal_to_lattice_sections": chk.gram == lat, "equivalent_to_frame": equiv,
            "det": det(chk.gram), "sections_ok": chk.ok}


def fiber_discriminant(f: FiberSpec) -> int:
    """|disc| of the root lattice of a reducible fiber (A_{n-1}: n, D_m: 4, E_k: 9 - k)."""
    rt = f.root_type
    if rt is None:
        return 1
    fam, n = rt[0], int(rt[1:])
    return {"A": n + 1, "D": 4, "E": 9 - n}[fam]


def disc_identity(key: str) -> Fraction:
    """disc NS = -prod disc(fibers) det(MWL) / |tors|^2 on the Weierstrass side.

    The torsion order is the number of height-zero sections listed for the
    fibration (the zero section included), so nothing here uses the lattice side.
    """
    chk = check_fibration(key)
    prod = 1
    for f in chk.fibers:
        prod *= fiber_discriminant(f)
    tors = len({tuple(sorted(s.meets.items())) for s in chk.sections if s.height == 0}) or 1
    return -prod * det(chk.gram) / tors ** 2
