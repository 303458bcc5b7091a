import copy
import json
from fractions import Fraction

import pytest

from mwlforge import crossval, gamma
from mwlforge.exact import RatMatrix, det
from mwlforge.mwl import qform_equivalent


# -- the torsion/component graph --------------------------------------------

def test_graph_sizes():
    assert len(gamma.all_torsion()) == 12
    assert len(gamma.all_components()) == 3 * 6 + 3 * 2


def test_components_form_cycles():
    for v in gamma.PLACES_I6 + gamma.PLACES_I2:
        n = gamma.fiber_size(v)
        comps = [gamma.Component(v, j) for j in range(n)]
        fiber = gamma.Divisor(tuple((c, 1) for c in comps))
        for c in comps:
            assert fiber.dot(c) == 0


def test_torsion_sections_meet_one_component_per_fiber():
    for s in gamma.all_torsion():
        for v in gamma.PLACES_I6 + gamma.PLACES_I2:
            hits = [j for j in range(gamma.fiber_size(v)) if gamma.intersect(s, gamma.Component(v, j))]
            assert len(hits) == 1


def test_parse_curve():
    assert gamma.parse_curve("A2+A22") == gamma.parse_curve("A23")
    assert gamma.parse_curve("P3+P3") == gamma.parse_curve("2P3")
    assert gamma.parse_curve("Theta[oo,3]") == gamma.Component("inf", 3)
    with pytest.raises(ValueError):
        gamma.parse_curve("Theta[2,0]")
    with pytest.raises(ValueError):
        gamma.parse_curve("B7")


@pytest.mark.parametrize("key", gamma.FIBRATIONS)
def test_fiber_divisors_are_fibers(key):
    assert gamma.fiber_divisors_are_fibers(gamma.fibration(key))


# -- Shioda heights against the recorded data --------------------------------

GRAMS = {
    "36": [["3/2"]],
    "40": [["61/40", "1/20"], ["1/20", "1/10"]],
    "40bis": [["1/10", "0"], ["0", "3/2"]],
}


@pytest.mark.parametrize("key", gamma.FIBRATIONS)
def test_check_fibration(key):
    c = crossval.check_fibration(key)
    assert c.ok
    assert all(s.height_ok and s.meets_ok for s in c.sections)
    assert c.gram == RatMatrix([[Fraction(x) for x in r] for r in GRAMS[key]])


@pytest.mark.parametrize("key", ["36", "40"])
def test_relations_consistent(key):
    assert crossval.check_fibration(key).relation_mismatches() == []


def test_40bis_relation_sign():
    """Four recorded relations carry the opposite sign of Z5 to what the meets give."""
    c = crossval.check_fibration("40bis")
    bad = {s.curve for s in c.relation_mismatches()}
    assert bad == {"Theta[1,2]", "Theta[3,0]", "P3+A2", "2P3+A2"}
    for s in c.relation_mismatches():
        flipped = {k: (-v if k == "Z5" else v) for k, v in s.table_relation.items()}
        assert s.relation == flipped
        # the heights do not see the sign since <Z1, Z5> = 0
        assert s.height_ok


@pytest.mark.parametrize("key", gamma.FIBRATIONS)
def test_cross_oracle(key):
    o = crossval.cross_oracle(key)
    assert o["sections_ok"]
    assert o["equal_to_lattice_sections"]
    assert o["equivalent_to_frame"]
    assert o["shioda_gram"] == o["lattice_gram"]


def test_40_and_40bis_have_inequivalent_grams():
    a = crossval.check_fibration("40").gram
    b = crossval.check_fibration("40bis").gram
    assert det(a) == det(b) == Fraction(3, 20)
    assert not qform_equivalent(a, b).equivalent


@pytest.mark.parametrize("key", gamma.FIBRATIONS)
def test_disc_identity(key):
    assert crossval.disc_identity(key) == -12


def test_fiber_discriminants():
    from mwlforge.mwl import FiberSpec
    vals = [crossval.fiber_discriminant(FiberSpec(k, "x")) for k in ("I8", "I2*", "I0*", "I2", "IV*")]
    assert vals == [8, 4, 4, 2, 3]


def test_corrupted_height_detected():
    data = copy.deepcopy(crossval.load_meets())
    data["40"]["sections"][1]["height"] = "7"
    c = crossval.check_fibration("40", data)
    assert not c.ok


def test_wrong_zero_rejected():
    data = copy.deepcopy(crossval.load_meets())
    data["36"]["zero"] = "O"
    with pytest.raises(ValueError):
        crossval.check_fibration("36", data)


def test_data_env_override(tmp_path, monkeypatch):
    data = copy.deepcopy(crossval.load_meets())
    data["36"]["sections"][0]["height"] = "99"
    p = tmp_path / "meets.json"
    p.write_text(json.dumps(data))
    monkeypatch.setenv(crossval.DATA_ENV, str(p))
    assert crossval.load_meets()["36"]["sections"][0]["height"] == "99"
    assert not crossval.check_fibration("36").ok
