"""Compare the two routes to the Mordell-Weil Gram of each fibration.

Route 1: Shioda heights on the Weierstrass side, from the transcribed
component data and the torsion/component graph of E_u.  Route 2: the
orthogonal projection in the frame lattice, both for the named table
sections and for the reduced basis of the frame.

    python scripts/cross_oracle.py [--fibrations 36 40]
"""
from __future__ import annotations

import argparse
from dataclasses import dataclass, field

from mwlforge.crossval import LATTICE_FRAME, cross_oracle, disc_identity
from mwlforge.gamma import FIBRATIONS
from mwlforge.crossval import check_fibration


@dataclass
class OracleConfig:
    fibrations: list[str] = field(default_factory=lambda: list(FIBRATIONS))


def fmt(m) -> str:
    return "[" + "; ".join(", ".join(str(x) for x in r) for r in m.rows) + "]"


def main(cfg: OracleConfig) -> int:
    ok = True
    for key in cfg.fibrations:
        o = cross_oracle(key)
        c = check_fibration(key)
        d = disc_identity(key)
        print(f"fibration #{key} (frame {LATTICE_FRAME[key]})")
        print(f"  fibers          {[f.kodaira for f in c.fibers]}")
        print(f"  generators      {dict(zip(c.generator_names, c.generators))}")
        print(f"  Shioda gram     {fmt(o['shioda_gram'])}")
        print(f"  lattice gram    {fmt(o['lattice_gram'])}")
        print(f"  frame MW gram   {fmt(o['frame_mw_gram'])}")
        print(f"  det             {o['det']}")
        print(f"  disc identity   {d}")
        print(f"  equal / equiv   {o['equal_to_lattice_sections']} / {o['equivalent_to_frame']}")
        mism = c.relation_mismatches()
        for s in mism:
            print(f"  relation of {s.curve}: computed {s.relation}, recorded {s.table_relation}")
        ok &= o["sections_ok"] and o["equal_to_lattice_sections"] and o["equivalent_to_frame"] and d == -12
    print("all routes agree" if ok else "DISAGREEMENT")
    return 0 if ok else 1


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--fibrations", nargs="*", default=list(FIBRATIONS))
    raise SystemExit(main(OracleConfig(p.parse_args().fibrations)))
