"""Loading the Weierstrass models, points and maps from the bundled data file."""
from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources

from .birational import BirationalMap, SurfaceModel
from .weier import CurvePoint, FnFieldCurve


@lru_cache(maxsize=None)
def load_models() -> dict:
    return json.loads(resources.files("mwlforge").joinpath("data/models.json").read_text())


@lru_cache(maxsize=None)
def model(name: str) -> SurfaceModel:
    d = load_models()["curves"]
    if name not in d:
        raise KeyError(f"unknown model {name!r}; known: {sorted(d)}")
    c = d[name]
    curve = FnFieldCurve.from_strings(c["coefficients"], c["param"], name)
    return SurfaceModel(curve, c["x"], c["y"])


def curve(name: str) -> FnFieldCurve:
    return model(name).curve


def model_names() -> list[str]:
    return list(load_models()["curves"])


def expected_fibers(name: str) -> dict[str, str] | None:
    return load_models()["curves"][name].get("expected_fibers")


def points(name: str) -> dict[str, CurvePoint]:
    c = curve(name)
    return {k: c.point_from_strings(x, y, k) for k, (x, y) in load_models()["points"].get(name, {}).items()}


def torsion_generators(name: str) -> list[str]:
    return load_models()["torsion_generators"].get(name, [])


def birational_map(key: str) -> BirationalMap:
    d = load_models()["maps"][key]
    return BirationalMap(model(d["source"]), model(d["target"]), d["x"], d["y"], d["u"], key,
                         tuple(d.get("let", {}).items()))


def map_names() -> list[str]:
    return list(load_models()["maps"])


def map_parameters(key: str) -> list[dict]:
    return load_models()["maps"][key].get("parameters", [])


def components() -> dict[str, dict]:
    return load_models()["components"]
