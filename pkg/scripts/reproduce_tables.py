"""Regenerate the section tables of the lattice frames and the Weierstrass fibrations.

Writes one JSON report and one text rendering per table, and compares the
lattice tables against the golden files when they are present.

    python scripts/reproduce_tables.py --out-dir out/tables
"""
from __future__ import annotations

import argparse
import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from mwlforge import cli

ROOT = Path(__file__).resolve().parent.parent


@dataclass
class TablesConfig:
    out_dir: Path = Path("out/tables")
    tables: list[str] = field(default_factory=lambda: list(cli.LATTICE_TABLES + cli.GRAPH_TABLES))
    golden_dir: Path = ROOT / "tests" / "golden"


def golden_diff(report: dict, golden: dict) -> list[str]:
    rows = {r["name"]: r for r in report["rows"]}
    out = []
    for g in golden["rows"]:
        r = rows.get(g["name"])
        if r is None:
            out.append(f"{g['name']}: missing")
            continue
        if Fraction(r["height"]) != Fraction(g["height"]):
            out.append(f"{g['name']}: height {r['height']} vs {g['height']}")
        if r["k"] != g["k"]:
            out.append(f"{g['name']}: k {r['k']} vs {g['k']}")
        if r["relation"] != g["relation"]:
            out.append(f"{g['name']}: relation {r['relation']} vs {g['relation']}")
    return out


def main(cfg: TablesConfig) -> int:
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    bad = 0
    for key in cfg.tables:
        status, rep = cli.run(cli.RunConfig("tables", table=key))
        (cfg.out_dir / f"{key}.json").write_text(cli.dumps(rep))
        (cfg.out_dir / f"{key}.txt").write_text(cli.render_text(rep))
        note = ""
        gpath = cfg.golden_dir / f"table_{key}.json"
        if status == 0 and gpath.exists():
            diff = golden_diff(rep, json.loads(gpath.read_text()))
            note = "golden ok" if not diff else "golden DIFF: " + "; ".join(diff)
            bad += bool(diff)
        if rep.get("relation_mismatches"):
            note += f" relation sign differs for {rep['relation_mismatches']}"
        print(f"{key:10s} status={status} rows={len(rep.get('rows', []))} {note}".rstrip())
        bad += status != 0
    return 1 if bad else 0


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--out-dir", type=Path, default=TablesConfig.out_dir)
    p.add_argument("--tables", nargs="*", default=None)
    a = p.parse_args()
    cfg = TablesConfig(out_dir=a.out_dir)
    if a.tables:
        cfg.tables = a.tables
    raise SystemExit(main(cfg))
