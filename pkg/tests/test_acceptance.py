"""The eight acceptance criteria, one test each.

A PASS/FAIL line per criterion is printed in the terminal summary (see
conftest.py).  Run directly with ``python tests/test_acceptance.py``.
"""
from fractions import Fraction
from itertools import product

from hypothesis import given
from hypothesis import strategies as st

from mwlforge import crossval, gamma, models
from mwlforge.birational import (verify_birational_map, verify_identity,
                                 verify_parametrized_component)
from mwlforge.exact import (RatMatrix, det, int_det, int_matmul, integer_kernel,
                            quotient_invariants, rank, saturate, snf)
from mwlforge.frame import FRAME_NAMES, a92d6_embedding, d64_embedding, named_frame
from mwlforge.mwl import (fibers_of_frame, height, lattice_height, pairing, qform_equivalent,
                          sections_from_cosets)
from mwlforge.niemeier import (GlueAutomorphism, a92d6_named, compose, d64_g,
                               embedding_orbit_equivalent, is_glue_automorphism,
                               make_niemeier_a92d6, make_niemeier_d64, transposition)
from mwlforge.tables import (GENERATING_PAIRS, MW_FORMS, TABLES, compute_table, pair_gram,
                             torsion_order_of)
from mwlforge.weier import euler_sum, singular_fibers, torsion_structure

from test_tables import golden

F = Fraction


def _maps(m, g):
    """M g M^T for an integer 2x2 transform."""
    M = RatMatrix([[F(x) for x in r] for r in m])
    return M @ RatMatrix(g.rows if isinstance(g, RatMatrix) else g) @ M.T


def test_criterion_1_frame_d64():
    """Frame D6^4: A1+D4+D6+D6, torsion (2,2), rank 1, height 3/2, |W/N| = 8"""
    for name in ("d64-i1", "d64-i2"):
        f = named_frame(name)
        assert sorted(f.root_types) == ["A1", "D4", "D6", "D6"]
        assert f.torsion == (2, 2)
        assert f.mw_rank == 1
        assert f.mw_lattice_gram == RatMatrix([[F(3, 2)]])
        assert f.det_N == 12 * 4 ** 3
        assert f.wn_order == 8
        assert F(f.det_N, f.det_W) == 8 ** 2


def test_criterion_2_frames_a92d6():
    """Frames A9^2D6: A7+A9, no torsion, rank 2, MW forms, generating pairs, inequivalence"""
    forms = {"a92d6-i1": RatMatrix([[F(61, 40), F(1, 20)], [F(1, 20), F(1, 10)]]),
             "a92d6-i2": RatMatrix([[F(1, 10), F(0)], [F(0), F(3, 2)]])}
    for key, form in forms.items():
        assert MW_FORMS[key] == form
        f = named_frame(key)
        assert sorted(f.root_types) == ["A7", "A9"]
        assert f.torsion == ()
        assert f.mw_rank == 2
        r = qform_equivalent(form, f.mw_lattice_gram)
        assert r.equivalent and _maps(r.transform, form) == f.mw_lattice_gram
        t = compute_table(key)
        assert len(GENERATING_PAIRS[key]) == 7
        for a, b in GENERATING_PAIRS[key]:
            g = pair_gram(t, a, b)
            r = qform_equivalent(form, g)
            assert r.transform is not None, (key, a, b)
            assert _maps(r.transform, form) == g
    cross = qform_equivalent(forms["a92d6-i1"], forms["a92d6-i2"])
    assert cross.transform is None and "not represented" in cross.witness
    assert not qform_equivalent(named_frame("a92d6-i1").mw_lattice_gram,
                                named_frame("a92d6-i2").mw_lattice_gram).equivalent


def test_criterion_3_tables():
    """Tables regenerated cell-for-cell, <V1,V2> = 1/20, det 3/20, Z12 = 2Z1-6Z2 of height 6"""
    for key in sorted(TABLES):
        g = golden(key)
        t = compute_table(key)
        assert [r.name for r in t.rows] == [r["name"] for r in g["rows"]]
        for row in g["rows"]:
            c = t.row(row["name"])
            assert c.section.k == row["k"], (key, row["name"])
            assert c.height == c.lattice_height == F(row["height"]), (key, row["name"])
            assert c.relation == row["relation"], (key, row["name"])
            if "contributions" in row:
                assert c.contributions == {p: F(v) for p, v in row["contributions"].items()}
            else:
                assert [c.section.meets[p] for p in g["fibers"]] == [row[p] for p in g["fibers"]]
                a, b = g["pair_with"]
                assert (c.pairings[a], c.pairings[b]) == (F(row["pair1"]), F(row["pair2"]))
                assert c.order == row["order"]
    t = compute_table("a92d6-i1")
    v1, v2 = t.row("V1"), t.row("V2")
    assert v1.pairings["V2"] == F(1, 20)
    assert det(pair_gram(t, "V1", "V2")) == F(3, 20)
    t = compute_table("a92d6-i2")
    z1, z2, z12 = t.row("Z1"), t.row("Z2"), t.row("Z12")
    assert z12.relation == {"Z1": 2, "Z2": -6}
    assert 4 * z1.height - 24 * z1.pairings["Z2"] + 36 * z2.height == z12.height == 6


def test_criterion_4_disc_identity():
    """Discriminant identity gives -12 for every frame and every Weierstrass fibration"""
    for name in FRAME_NAMES:
        assert named_frame(name).disc_check == -12, name
    for key in gamma.FIBRATIONS:
        assert crossval.disc_identity(key) == -12, key
    f = named_frame("d64-i1")
    assert f.disc_trivial == 4 * 4 * 4 * 2
    assert f.torsion_order ** 2 == 16
    assert -f.disc_trivial * det(f.mw_lattice_gram) / f.torsion_order ** 2 == -12


def test_criterion_5_automorphisms():
    """Automorphisms: tau.g involutions on the D6^4 code, gamma/h1h/h2h on N(A9^2D6), orbit pairings"""
    d64, a92 = make_niemeier_d64(), make_niemeier_a92d6()
    assert len(d64.glue_code) == 16
    g = d64_g(d64)
    ident = GlueAutomorphism.identity(d64).key
    for i, j in ((i, j) for i in range(4) for j in range(i + 1, 4)):
        tg = compose(transposition(d64, i, j), g)
        assert compose(tg, tg).key == ident
        assert {tg.apply_labels(d64, v) for v in d64.glue_code} == d64.code_set
        assert is_glue_automorphism(tg, d64)
    swap = compose(transposition(d64, 2, 3), g)
    assert embedding_orbit_equivalent(d64_embedding("i1"), d64_embedding("i2"), d64, [swap])
    # the glue code of N(A9^2D6) has 20 elements (10 x 2), not 200
    assert len(a92.glue_code) == 20
    n = a92d6_named(a92)
    for k in ("gamma", "h1h", "h2h"):
        assert is_glue_automorphism(n[k], a92)
        assert {n[k].apply_labels(a92, v) for v in a92.glue_code} == a92.code_set
    assert embedding_orbit_equivalent(a92d6_embedding("i1", 0, 1), a92d6_embedding("i2", 1, 9),
                                      a92, [n["h2h"]])
    assert embedding_orbit_equivalent(a92d6_embedding("i1", 1, 1), a92d6_embedding("i2", 0, 9),
                                      a92, [n["h1h"]])


def test_criterion_6_weierstrass():
    """Weierstrass: E_u torsion Z/2 x Z/6, fiber lists, Euler sums 24, birational maps verify"""
    c = models.curve("Eu")
    pts = models.points("Eu")
    grp = torsion_structure(c, [pts[k] for k in models.torsion_generators("Eu")])
    assert grp.order == 12 and grp.invariants == (2, 6)
    assert len(grp.table) == 12 and all(len(r) == 12 for r in grp.table)
    assert grp.is_associative() and grp.is_commutative()
    for name in ("Eu", "Ew"):
        fs = singular_fibers(models.curve(name))
        assert {f.place: f.kodaira for f in fs} == models.expected_fibers(name)
    for name in models.model_names():
        assert euler_sum(singular_fibers(models.curve(name))) == 24, name
    for key in models.map_names():
        m = models.birational_map(key)
        assert verify_birational_map(m), key
        for p in models.map_parameters(key):
            assert verify_identity(m, p["on_target"], p["equals"]), (key, p)
    comp = models.components()["fib36_w_minus_1"]
    assert verify_parametrized_component(models.curve(comp["curve"]), comp["u"], comp["x"],
                                         comp["y"], comp["var"])


def test_criterion_7_cross_oracle():
    """Cross-oracle: Shioda heights from the meets data equal the lattice-side Grams"""
    for key in gamma.FIBRATIONS:
        o = crossval.cross_oracle(key)
        assert o["sections_ok"], key
        assert o["shioda_gram"] == o["lattice_gram"], key
        assert o["equivalent_to_frame"], key
    assert crossval.cross_oracle("36")["shioda_gram"] == RatMatrix([[F(3, 2)]])
    o = crossval.cross_oracle("40bis")
    assert o["shioda_gram"] == RatMatrix([[F(1, 10), F(0)], [F(0), F(3, 2)]])
    assert o["det"] == crossval.cross_oracle("40")["det"] == F(3, 20)


# -- criterion 8 ------------------------------------------------------------------

small = st.integers(-5, 5)
mats = st.integers(1, 4).flatmap(lambda m: st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=m, max_size=m)))


def _snf_ok(a):
    r = snf(a)
    d = [[r.diagonal[i] if i == j and i < len(r.diagonal) else 0 for j in range(len(a[0]))]
         for i in range(len(a))]
    assert int_matmul(int_matmul([list(x) for x in r.left], a), [list(x) for x in r.right]) == d
    assert abs(int_det(r.left)) == abs(int_det(r.right)) == 1
    nz = [x for x in r.diagonal if x]
    assert all(nz[i + 1] % nz[i] == 0 for i in range(len(nz) - 1))


def _kernel_ok(a):
    n = len(a[0])
    K = integer_kernel(a, n)
    assert len(K) == n - rank(a)
    assert all(sum(x * y for x, y in zip(r, v)) == 0 for r in a for v in K)
    if K:
        assert quotient_invariants(K, saturate(K, n)) == ()


def _saturate_ok(a):
    n = len(a[0])
    if rank(a) == 0:
        return
    s = saturate(a, n)
    assert saturate(s, n) == s


@given(mats)
def _random_exact(a):
    _snf_ok(a)
    _kernel_ok(a)
    _saturate_ok(a)


@given(st.sampled_from(sorted(TABLES)), st.data())
def _random_bilinear(key, data):
    t = compute_table(key)
    picks = data.draw(st.lists(st.sampled_from(t.rows), min_size=1, max_size=3))
    cs = data.draw(st.lists(st.integers(-4, 4), min_size=len(picks), max_size=len(picks)))
    x = data.draw(st.sampled_from(t.rows))
    dim = len(x.section.omega)
    v = [sum((c * r.section.omega[j] for c, r in zip(cs, picks)), F(0)) for j in range(dim)]
    lhs = t.frame.height_pairing(v, x.section.omega)
    rhs = sum((c * t.frame.height_pairing(r.section.omega, x.section.omega)
               for c, r in zip(cs, picks)), F(0))
    assert lhs == rhs


def test_criterion_8_properties():
    """Property suites: torsion iff height 0, bilinearity, saturate, SNF, kernel saturation"""
    # torsion <=> height 0: every coset of W/N and every table row
    for name in FRAME_NAMES:
        f = named_frame(name)
        fibers = fibers_of_frame(f)
        for s in sections_from_cosets(f):
            tors = torsion_order_of(f, s.omega) > 0
            assert tors == (lattice_height(f, s) == 0) == (height(s, fibers) == 0)
    for key in sorted(TABLES):
        t = compute_table(key)
        for r in t.rows:
            assert (torsion_order_of(t.frame, r.section.omega) > 0) == (r.height == 0)
    # bilinearity over every table relation, both height formulas
    for key in sorted(TABLES):
        t = compute_table(key)
        for r in t.rows:
            for x in t.rows:
                for pair in (lambda a, b: t.frame.height_pairing(a.section.omega, b.section.omega),
                             lambda a, b: height(a.section, t.fibers) if a is b
                             else pairing(a.section, b.section, t.fibers)):
                    rhs = sum((c * pair(t.row(g), x) for g, c in r.relation.items()), F(0))
                    assert pair(r, x) == rhs, (key, r.name, x.name)
    _random_bilinear()
    # exact algebra: exhaustive 2x2 and 1x3, then randomized
    for e in product(range(-2, 3), repeat=4):
        a = [[e[0], e[1]], [e[2], e[3]]]
        _snf_ok(a)
        _kernel_ok(a)
        _saturate_ok(a)
    for row in product(range(-2, 3), repeat=3):
        _kernel_ok([list(row)])
    _random_exact()


if __name__ == "__main__":
    import sys
    import pytest
    sys.exit(pytest.main([__file__, "-q"]))
