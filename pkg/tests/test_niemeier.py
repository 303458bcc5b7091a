"""Niemeier lattices N(D6^4) and N(A9^2 D6) and their glue automorphisms."""
import pytest

from mwlforge.frame import a92d6_embedding, d64_embedding
from mwlforge.niemeier import (GlueAutomorphism, a92d6_automorphism_report, a92d6_named, compose,
                               d64_automorphism_report, d64_g, embedding_orbit_equivalent,
                               is_glue_automorphism, make_niemeier_a92d6, make_niemeier_d64,
                               transposition)


@pytest.fixture(scope="module")
def d64():
    return make_niemeier_d64()


@pytest.fixture(scope="module")
def a92d6():
    return make_niemeier_a92d6()


def test_codes_are_valid(d64, a92d6):
    assert d64.validate() == []
    assert a92d6.validate() == []
    assert len(d64.glue_code) == 16
    assert len(a92d6.glue_code) == 20
    assert len(a92d6.glue_code) ** 2 == a92d6.root_det


def test_code_closed_and_even(d64, a92d6):
    for L in (d64, a92d6):
        code = L.code_set
        for a in L.glue_code:
            for b in L.glue_code:
                assert L.add(a, b) in code
            v = L.representative(a)
            assert L.pair(v, v).denominator == 1 and L.pair(v, v) % 2 == 0


def test_lattice_basis_is_unimodular(d64, a92d6):
    from mwlforge.exact import det, gram_of
    for L in (d64, a92d6):
        assert abs(det(gram_of(L.basis, L.gram))) == 1


def test_tau_g_every_transposition(d64):
    g = d64_g(d64)
    ident = GlueAutomorphism.identity(d64).key
    for i in range(4):
        for j in range(i + 1, 4):
            tg = compose(transposition(d64, i, j), g)
            assert compose(tg, tg).key == ident
            assert is_glue_automorphism(tg, d64)
            assert {tg.apply_labels(d64, v) for v in d64.glue_code} == d64.code_set


def test_bare_transposition_is_not_an_automorphism(d64):
    assert not is_glue_automorphism(transposition(d64, 2, 3), d64)


def test_a92d6_named_automorphisms(a92d6):
    n = a92d6_named(a92d6)
    for k in ("gamma", "h1h", "h2h"):
        assert is_glue_automorphism(n[k], a92d6)
    for k in ("h", "g", "gamma1"):
        assert not is_glue_automorphism(n[k], a92d6)


def test_embedding_identifications(d64, a92d6):
    swap = compose(transposition(d64, 2, 3), d64_g(d64))
    assert embedding_orbit_equivalent(d64_embedding("i1"), d64_embedding("i2"), d64, [swap])
    n = a92d6_named(a92d6)
    assert embedding_orbit_equivalent(a92d6_embedding("i1", 0, 1), a92d6_embedding("i2", 1, 9),
                                      a92d6, [n["h2h"]])
    assert embedding_orbit_equivalent(a92d6_embedding("i1", 1, 1), a92d6_embedding("i2", 0, 9),
                                      a92d6, [n["h1h"]])
    # i1 and i2 in the same A9 copy are not related by these automorphisms
    assert not embedding_orbit_equivalent(a92d6_embedding("i1"), a92d6_embedding("i2"), a92d6,
                                          [n["h1h"], n["h2h"], n["gamma"]])


def test_reports():
    assert d64_automorphism_report()["ok"]
    assert a92d6_automorphism_report()["ok"]
