"""Structural properties: torsion iff height zero, bilinearity over relations."""
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mwlforge.crossval import check_fibration
from mwlforge.frame import FRAME_NAMES, named_frame
from mwlforge.gamma import FIBRATIONS
from mwlforge.mwl import height, lattice_height, pairing, sections_from_cosets
from mwlforge.tables import TABLES, compute_table, torsion_order_of


# -- torsion iff height zero ---------------------------------------------------

@pytest.mark.parametrize("name", FRAME_NAMES)
def test_torsion_iff_height_zero_cosets(name):
    f = named_frame(name)
    from mwlforge.mwl import fibers_of_frame
    fibers = fibers_of_frame(f)
    for s in sections_from_cosets(f):
        tors = torsion_order_of(f, s.omega) > 0
        assert tors == (lattice_height(f, s) == 0) == (height(s, fibers) == 0)


@pytest.mark.parametrize("key", sorted(TABLES))
def test_torsion_iff_height_zero_tables(key):
    t = compute_table(key)
    for r in t.rows:
        assert (torsion_order_of(t.frame, r.section.omega) > 0) == (r.height == 0)


@pytest.mark.parametrize("key", FIBRATIONS)
def test_torsion_iff_height_zero_graph_sections(key):
    c = check_fibration(key)
    for s in c.sections:
        if s.height == 0:
            assert s.relation == {}
        else:
            assert s.relation


@pytest.mark.parametrize("name", FRAME_NAMES)
@given(data=st.data())
def test_torsion_iff_height_zero_random(name, data):
    f = named_frame(name)
    W = f.W_basis
    c = data.draw(st.lists(st.integers(-3, 3), min_size=len(W), max_size=len(W)))
    v = [sum((ci * w[j] for ci, w in zip(c, W)), Fraction(0)) for j in range(len(W[0]))]
    h = f.height_pairing(v, v)
    assert h >= 0
    assert (torsion_order_of(f, v, limit=4) > 0) == (h == 0)


# -- bilinearity over relations ---------------------------------------------------

def _lattice_pair(t, a, b):
    return t.frame.height_pairing(t.row(a).section.omega, t.row(b).section.omega)


def _shioda_pair(t, a, b):
    ra, rb = t.row(a).section, t.row(b).section
    return height(ra, t.fibers) if a == b else pairing(ra, rb, t.fibers)


@pytest.mark.parametrize("key", sorted(TABLES))
@pytest.mark.parametrize("pair", [_lattice_pair, _shioda_pair])
def test_bilinear_over_table_relations(key, pair):
    t = compute_table(key)
    names = [r.name for r in t.rows]
    for r in t.rows:
        for x in names:
            lhs = pair(t, r.name, x)
            rhs = sum((c * pair(t, g, x) for g, c in r.relation.items()), Fraction(0))
            assert lhs == rhs, (r.name, x)


@pytest.mark.parametrize("key", FIBRATIONS)
def test_bilinear_over_graph_relations(key):
    c = check_fibration(key)
    G = c.gram
    idx = {n: i for i, n in enumerate(c.generator_names)}
    for s in c.sections:
        if not s.relation:
            continue
        v = [0] * len(idx)
        for n, k in s.relation.items():
            v[idx[n]] = k
        h = sum(v[i] * v[j] * G.rows[i][j] for i in range(len(v)) for j in range(len(v)))
        assert h == s.height == s.table_height


@pytest.mark.parametrize("key", sorted(TABLES))
@given(data=st.data())
def test_bilinear_random_combinations(key, data):
    t = compute_table(key)
    rows = t.rows
    k = data.draw(st.integers(1, 3))
    picks = data.draw(st.lists(st.sampled_from(rows), min_size=k, max_size=k))
    cs = data.draw(st.lists(st.integers(-4, 4), min_size=k, max_size=k))
    x = data.draw(st.sampled_from(rows))
    dim = len(x.section.omega)
    v = [sum((c * r.section.omega[j] for c, r in zip(cs, picks)), Fraction(0)) for j in range(dim)]
    lhs = t.frame.height_pairing(v, x.section.omega)
    rhs = sum((c * _lattice_pair(t, r.name, x.name) for c, r in zip(cs, picks)), Fraction(0))
    assert lhs == rhs
