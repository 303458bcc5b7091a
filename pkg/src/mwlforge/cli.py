"""Command line front end.

    mwlforge frame --lattice D64 --embedding i1
    mwlforge tables --table a92d6-i1 --format text
    mwlforge fibers --model Eu
    mwlforge verify-maps [--map fib36]
    mwlforge verify-auts --lattice A92D6
    mwlforge qform [--g1 "61/40,1/20;1/20,1/10" --g2 "1/10,0;0,3/2"]

JSON is the canonical output (exact rationals as "num/den" strings); the
text format is an aligned rendering for reading.  Exit status is 0 when all
consistency checks pass, 1 on an invariant failure and 2 on bad input.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Sequence

from .exact import RatMatrix, det

COMMANDS = ("frame", "tables", "fibers", "verify-maps", "verify-auts", "qform")
LATTICES = {"D64": "d64", "A92D6": "a92d6"}
EMBEDDINGS = ("i1", "i2")
LATTICE_TABLES = ("d64", "a92d6-i1", "a92d6-i2")
GRAPH_TABLES = ("36", "40", "40bis")
FORMATS = ("json", "text")


class BadInput(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    lattice: str | None = None
    embedding: str | None = None
    table: str | None = None
    model: str | None = None
    map: str | None = None
    g1: str | None = None
    g2: str | None = None
    format: str = "json"
    output: str | None = None

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise BadInput(f"unknown command {self.command!r}")
        if self.format not in FORMATS:
            raise BadInput(f"unknown format {self.format!r}")
        c = self.command
        if c in ("frame", "verify-auts"):
            if self.lattice not in LATTICES:
                raise BadInput(f"--lattice must be one of {sorted(LATTICES)}")
        if c == "frame" and self.embedding not in EMBEDDINGS:
            raise BadInput(f"--embedding must be one of {list(EMBEDDINGS)}")
        if c == "tables" and self.table not in LATTICE_TABLES + GRAPH_TABLES:
            raise BadInput(f"--table must be one of {list(LATTICE_TABLES + GRAPH_TABLES)}")
        if c == "fibers":
            from .models import model_names
            if self.model not in model_names():
                raise BadInput(f"--model must be one of {model_names()}")
        if c == "verify-maps" and self.map is not None:
            from .models import map_names
            if self.map not in map_names():
                raise BadInput(f"--map must be one of {map_names()}")
        if c == "qform":
            if (self.g1 is None) != (self.g2 is None):
                raise BadInput("--g1 and --g2 go together")
            if self.g1 is not None:
                parse_gram(self.g1)
                parse_gram(self.g2)


# ---------------------------------------------------------------------------
# serialization

def frac(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, ensure_ascii=False) + "\n"


def parse_gram(text: str) -> RatMatrix:
    try:
        rows = [[Fraction(v.strip()) for v in r.split(",")] for r in text.split(";")]
    except (ValueError, ZeroDivisionError) as e:
        raise BadInput(f"cannot parse Gram matrix {text!r}: {e}") from None
    if len(rows) != 2 or any(len(r) != 2 for r in rows) or rows[0][1] != rows[1][0]:
        raise BadInput(f"expected a symmetric 2x2 matrix as 'a,b;b,c', got {text!r}")
    if rows[0][0] <= 0 or det(rows) <= 0:
        raise BadInput("Gram matrix is not positive definite")
    return RatMatrix(rows)


# ---------------------------------------------------------------------------
# reports: counts stay ints, exact rationals are "num/den" strings

def _q(x) -> str:
    return frac(x)


def _gram(m: RatMatrix) -> list[list[str]]:
    return [[_q(v) for v in r] for r in m.rows]


def frame_report(lattice: str, embedding: str) -> dict:
    from .frame import named_frame
    f = named_frame(f"{LATTICES[lattice]}-{embedding}")
    checks = {
        "disc_identity": f.disc_check == -12,
        "index_from_dets": f.det_N == f.det_W * f.wn_order ** 2,
        "rank_from_roots": f.mw_rank == len(f.W_basis) - len(f.W_root_basis),
    }
    return {
        "command": "frame", "lattice": f.lattice.name, "embedding": f.embedding.name,
        "root_types": f.root_types, "torsion": list(f.torsion), "mw_rank": f.mw_rank,
        "det_N": _q(f.det_N), "det_W": _q(f.det_W), "wn_invariants": list(f.wn_invariants),
        "wn_order": f.wn_order, "mw_gram": _gram(f.mw_lattice_gram),
        "disc_trivial": _q(f.disc_trivial), "disc_check": _q(f.disc_check),
        "checks": checks, "ok": all(checks.values()),
    }


def lattice_table_report(key: str) -> dict:
    from .tables import TABLES, compute_table, torsion_order_of
    t = compute_table(key)
    rows, tors = [], []
    for r in t.rows:
        s = r.section
        tors.append(torsion_order_of(t.frame, s.omega))
        rows.append({
            "name": r.name, "omega": list(r.omega),
            "meets": {f.position: s.meets[f.position] for f in t.fibers},
            "k": s.k, "contributions": {p: _q(c) for p, c in r.contributions.items()},
            "height": _q(r.height), "lattice_height": _q(r.lattice_height),
            "pairings": {q: _q(v) for q, v in r.pairings.items()},
            "order": r.order, "torsion_order": tors[-1], "relation": dict(r.relation),
        })
    checks = {
        "heights_agree": all(r.height == r.lattice_height for r in t.rows),
        "torsion_iff_height_zero": all((o != 0) == (r.height == 0) for r, o in zip(t.rows, tors)),
    }
    return {"command": "tables", "table": key, "frame": TABLES[key].frame,
            "fibers": [{"kodaira": f.kodaira, "position": f.position} for f in t.fibers],
            "rows": rows, "checks": checks, "ok": all(checks.values())}


def graph_table_report(key: str) -> dict:
    from .crossval import check_fibration, cross_oracle, disc_identity
    c = check_fibration(key)
    x = cross_oracle(key)
    rows = []
    for s in c.sections:
        rows.append({
            "name": s.curve, "meets": dict(s.meets), "meets_zero": s.meets_zero,
            "contributions": [_q(v) for v in s.contributions],
            "height": _q(s.height), "table_height": _q(s.table_height),
            "relation": dict(s.relation),
            "table_relation": None if s.table_relation is None else dict(s.table_relation),
        })
    d = disc_identity(key)
    checks = {
        "heights_match_table": all(s.height_ok for s in c.sections),
        "meets_match_graph": all(s.meets_ok for s in c.sections),
        "listed_pairings": all(a == b for *_, a, b in c.listed_pairings),
        "gram_equals_lattice_sections": x["equal_to_lattice_sections"],
        "gram_equivalent_to_frame": x["equivalent_to_frame"],
        "disc_identity": d == -12,
    }
    return {"command": "tables", "table": key,
            "fibers": [{"kodaira": f.kodaira, "position": f.position} for f in c.fibers],
            "generators": dict(zip(c.generator_names, c.generators)),
            "gram": _gram(c.gram), "lattice_gram": _gram(x["lattice_gram"]),
            "det": _q(x["det"]), "disc_check": _q(d), "rows": rows,
            "relation_mismatches": [s.curve for s in c.relation_mismatches()],
            "checks": checks, "ok": all(checks.values())}


def fibers_report(name: str) -> dict:
    from .models import curve, expected_fibers
    from .weier import euler_sum, singular_fibers
    c = curve(name)
    fibs = singular_fibers(c)
    by_place = {f.place: f.kodaira for f in fibs}
    exp = expected_fibers(name)
    checks = {"euler_sum_24": euler_sum(fibs) == 24}
    if exp is not None:
        checks["matches_expected"] = by_place == exp
    return {"command": "fibers", "model": name, "param": c.var,
            "fibers": [{"place": f.place, "degree": f.degree, "kodaira": f.kodaira,
                        "euler": f.euler} for f in fibs],
            "kodaira_by_place": by_place, "euler_sum": euler_sum(fibs),
            "checks": checks, "ok": all(checks.values())}


def maps_report(which: str | None = None) -> dict:
    from .birational import verify_birational_map, verify_identity, verify_parametrized_component
    from .models import birational_map, components, curve, map_names, map_parameters
    maps = []
    for key in ([which] if which else map_names()):
        m = birational_map(key)
        params = [{"on_target": p["on_target"], "equals": p["equals"],
                   "holds": verify_identity(m, p["on_target"], p["equals"])}
                  for p in map_parameters(key)]
        maps.append({"name": key, "source": m.source.name, "target": m.target.name,
                     "birational": verify_birational_map(m), "parameters": params})
    comps = []
    if which is None:
        for key, d in components().items():
            comps.append({"name": key, "curve": d["curve"],
                          "holds": verify_parametrized_component(curve(d["curve"]), d["u"], d["x"],
                                                                 d["y"], d.get("var", "z"))})
    ok = all(m["birational"] and all(p["holds"] for p in m["parameters"]) for m in maps) \
        and all(c["holds"] for c in comps)
    return {"command": "verify-maps", "maps": maps, "components": comps, "ok": ok}


def auts_report(lattice: str) -> dict:
    from .niemeier import a92d6_automorphism_report, d64_automorphism_report
    rep = d64_automorphism_report() if lattice == "D64" else a92d6_automorphism_report()
    return {"command": "verify-auts", **rep}


def _transform(res) -> list | None:
    return None if res.transform is None else [list(r) for r in res.transform]


def qform_report(g1: str | None = None, g2: str | None = None) -> dict:
    from .mwl import qform_equivalent
    if g1 is not None:
        a, b = parse_gram(g1), parse_gram(g2)
        res = qform_equivalent(a, b)
        return {"command": "qform", "g1": _gram(a), "g2": _gram(b), "equivalent": res.equivalent,
                "transform": _transform(res), "witness": res.witness, "ok": True}
    from .frame import named_frame
    from .tables import GENERATING_PAIRS, MW_FORMS, compute_table, pair_gram
    frames, ok = [], True
    for key, form in MW_FORMS.items():
        f = named_frame(key)
        t = compute_table(key)
        res = qform_equivalent(form, f.mw_lattice_gram)
        pairs = []
        for a, b in GENERATING_PAIRS[key]:
            r = qform_equivalent(form, pair_gram(t, a, b))
            pairs.append({"pair": [a, b], "gram": _gram(pair_gram(t, a, b)),
                          "transform": _transform(r)})
            ok &= r.equivalent
        ok &= res.equivalent
        frames.append({"frame": key, "form": _gram(form), "mw_gram": _gram(f.mw_lattice_gram),
                       "transform": _transform(res), "generating_pairs": pairs})
    cross = qform_equivalent(MW_FORMS["a92d6-i1"], MW_FORMS["a92d6-i2"])
    ok &= not cross.equivalent
    return {"command": "qform", "frames": frames,
            "embeddings_equivalent": cross.equivalent, "witness": cross.witness, "ok": ok}


def run(config: RunConfig) -> tuple[int, dict]:
    """Run one command; returns (exit status, report)."""
    try:
        config.validate()
    except BadInput as e:
        return 2, {"error": str(e), "kind": "bad-input", "ok": False}
    c = config.command
    try:
        if c == "frame":
            rep = frame_report(config.lattice, config.embedding)
        elif c == "tables":
            rep = lattice_table_report(config.table) if config.table in LATTICE_TABLES \
                else graph_table_report(config.table)
        elif c == "fibers":
            rep = fibers_report(config.model)
        elif c == "verify-maps":
            rep = maps_report(config.map)
        elif c == "verify-auts":
            rep = auts_report(config.lattice)
        else:
            rep = qform_report(config.g1, config.g2)
    except (BadInput, FileNotFoundError, json.JSONDecodeError, KeyError) as e:
        return 2, {"error": f"{type(e).__name__}: {e}", "kind": "bad-input", "ok": False}
    except (ValueError, AssertionError) as e:
        return 1, {"error": f"{type(e).__name__}: {e}", "kind": "invariant", "ok": False}
    return (0 if rep["ok"] else 1), rep


# ---------------------------------------------------------------------------
# text rendering

def _cell(v) -> str:
    if isinstance(v, dict):
        return " ".join(f"{k}:{_cell(x)}" for k, x in v.items()) or "-"
    if isinstance(v, list):
        return "[" + ", ".join(_cell(x) for x in v) + "]"
    return "-" if v is None else str(v)


def _is_table(v) -> bool:
    return isinstance(v, list) and bool(v) and all(isinstance(x, dict) for x in v)


def _aligned(rows: list[dict]) -> list[str]:
    cols = [k for k in rows[0] if not _is_table(rows[0][k])]
    cells = [[_cell(r.get(k)) for k in cols] for r in rows]
    w = [max(len(c), *(len(r[i]) for r in cells)) for i, c in enumerate(cols)]
    out = ["  ".join(c.ljust(w[i]) for i, c in enumerate(cols)).rstrip()]
    out.append("  ".join("-" * x for x in w))
    out += ["  ".join(r[i].ljust(w[i]) for i in range(len(cols))).rstrip() for r in cells]
    return out


def _render(report: dict, indent: str) -> list[str]:
    lines = []
    for k, v in report.items():
        if _is_table(v):
            lines.append(f"{indent}{k}:")
            lines += [indent + "  " + s for s in _aligned(v)]
            for row in v:
                nested = {kk: vv for kk, vv in row.items() if _is_table(vv)}
                if nested:
                    head = next(iter(row.values()))
                    lines.append(f"{indent}  [{_cell(head)}]")
                    lines += _render(nested, indent + "    ")
        else:
            lines.append(f"{indent}{k}: {_cell(v)}")
    return lines


def render_text(report: dict) -> str:
    return "\n".join(_render(report, "")) + "\n"


def render(report: dict, fmt: str) -> str:
    return dumps(report) if fmt == "json" else render_text(report)


# ---------------------------------------------------------------------------

def load_schema(command: str) -> dict:
    name = command.replace("-", "_")
    return json.loads(resources.files("mwlforge").joinpath(f"data/schemas/{name}.json").read_text())


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mwlforge", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--format", choices=FORMATS, default="json")
        sp.add_argument("--output", "-o", help="write the report here instead of stdout")

    sp = sub.add_parser("frame", help="frame lattice of an embedding of A5 + A1")
    sp.add_argument("--lattice", required=True)
    sp.add_argument("--embedding", required=True)
    common(sp)
    sp = sub.add_parser("tables", help="section tables")
    sp.add_argument("--table", required=True, help=", ".join(LATTICE_TABLES + GRAPH_TABLES))
    common(sp)
    sp = sub.add_parser("fibers", help="singular fibers of a Weierstrass model")
    sp.add_argument("--model", required=True)
    common(sp)
    sp = sub.add_parser("verify-maps", help="birational maps and parametrized components")
    sp.add_argument("--map")
    common(sp)
    sp = sub.add_parser("verify-auts", help="glue code automorphisms")
    sp.add_argument("--lattice", required=True)
    common(sp)
    sp = sub.add_parser("qform", help="equivalence of binary height forms")
    sp.add_argument("--g1")
    sp.add_argument("--g2")
    common(sp)
    return p


def config_from_args(argv: Sequence[str] | None = None) -> RunConfig:
    a = build_parser().parse_args(argv)
    return RunConfig(**{k: v for k, v in vars(a).items()})


def main(argv: Sequence[str] | None = None) -> int:
    try:
        cfg = config_from_args(argv)
    except SystemExit as e:     # argparse usage errors
        return 2 if e.code else 0
    status, report = run(cfg)
    text = render(report, cfg.format)
    if cfg.output:
        Path(cfg.output).write_text(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
