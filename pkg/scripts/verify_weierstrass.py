"""Fiber types, torsion and birational maps of the Weierstrass models.

    python scripts/verify_weierstrass.py [--skip-maps]
"""
from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

from mwlforge import models
from mwlforge.birational import (verify_birational_map, verify_identity,
                                 verify_parametrized_component)
from mwlforge.weier import euler_sum, fiber_multiset, singular_fibers, specialized_order, torsion_structure


@dataclass
class WeierConfig:
    maps: bool = True


def main(cfg: WeierConfig) -> int:
    ok = True
    for name in models.model_names():
        c = models.curve(name)
        fs = singular_fibers(c)
        ms = dict(sorted(fiber_multiset(fs).items()))
        print(f"{name}: fibers {ms}, euler sum {euler_sum(fs)}")
        for f in fs:
            print(f"    {f.place:28s} {f.kodaira:4s} valuations {f.valuations}")
        ok &= euler_sum(fs) == 24
        exp = models.expected_fibers(name)
        if exp is not None:
            ok &= {f.place: f.kodaira for f in fs} == exp
        pts = models.points(name)
        gens = models.torsion_generators(name)
        if gens:
            g = torsion_structure(c, [pts[k] for k in gens])
            print(f"    torsion invariants {g.invariants}, order {g.order}")
        for k, p in pts.items():
            if k not in gens:
                n, t0 = specialized_order(c, p)
                print(f"    {k}: order {'infinite' if n == 0 else n} (specialized at {c.var} = {t0})")
    if cfg.maps:
        for key in models.map_names():
            t0 = time.perf_counter()
            m = models.birational_map(key)
            good = verify_birational_map(m)
            params = [verify_identity(m, p["on_target"], p["equals"]) for p in models.map_parameters(key)]
            ok &= good and all(params)
            print(f"map {key}: {m.source.name} -> {m.target.name} {good}, parameters {params} "
                  f"({time.perf_counter() - t0:.1f}s)")
        for key, d in models.components().items():
            good = verify_parametrized_component(models.curve(d["curve"]), d["u"], d["x"], d["y"], d["var"])
            ok &= good
            print(f"component {key}: {good}")
    return 0 if ok else 1


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--skip-maps", action="store_true")
    raise SystemExit(main(WeierConfig(maps=not p.parse_args().skip_maps)))
