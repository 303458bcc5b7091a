"""Root lattices, discriminant groups and short vector enumeration."""
from fractions import Fraction

import pytest

from mwlforge.exact import RatMatrix, det
from mwlforge.lattice_enum import closest_vectors, fincke_pohst, lll_gram, short_vectors
from mwlforge.rootlat import build, parse_type

TYPES = [("A", 1), ("A", 5), ("A", 9), ("D", 4), ("D", 6), ("E", 6), ("E", 7), ("E", 8)]
DISC = {("A", 1): 2, ("A", 5): 6, ("A", 9): 10, ("D", 4): 4, ("D", 6): 4,
        ("E", 6): 3, ("E", 7): 2, ("E", 8): 1}
ROOTS = {("A", 1): 2, ("A", 5): 30, ("A", 9): 90, ("D", 4): 24, ("D", 6): 60,
         ("E", 6): 72, ("E", 7): 126, ("E", 8): 240}


@pytest.mark.parametrize("fam, n", TYPES)
def test_gram_and_discriminant(fam, n):
    L = build(fam, n)
    g = L.gram
    assert all(g.rows[i][i] == -2 for i in range(n))
    assert abs(det(g)) == DISC[(fam, n)]
    assert L.num_classes == DISC[(fam, n)]


@pytest.mark.parametrize("fam, n", TYPES)
def test_dual_basis_pairs_to_identity(fam, n):
    L = build(fam, n)
    for j in range(1, n + 1):
        a = L.dual_basis_vector(j)
        for i in range(n):
            e = [0] * n
            e[i] = 1
            assert L.pair(a, e) == (1 if i == j - 1 else 0)
        assert L.fundamental_weight(j) == tuple(-x for x in a)


@pytest.mark.parametrize("fam, n", TYPES)
def test_root_count(fam, n):
    L = build(fam, n)
    pos = [[-x for x in r] for r in L.gram.rows]
    assert len(short_vectors(pos, 2)) == ROOTS[(fam, n)]


@pytest.mark.parametrize("fam, n", TYPES)
def test_discriminant_group_closed(fam, n):
    L = build(fam, n)
    for a in range(L.num_classes):
        assert L.add_labels(a, L.neg_label(a)) == 0
        assert L.num_classes % L.label_order(a) == 0
        for b in range(L.num_classes):
            assert L.add_labels(a, b) == L.add_labels(b, a)


def test_glue_norms_a9_d6():
    A9, D6 = build("A", 9), build("D", 6)
    # minimal norms j(10-j)/10 and n/4, 1 (negative definite)
    for j in range(1, 10):
        assert L_norm(A9, j) == Fraction(-j * (10 - j), 10)
    assert L_norm(D6, 1) == Fraction(-6, 4)
    assert L_norm(D6, 2) == -1
    assert L_norm(D6, 3) == Fraction(-6, 4)


def L_norm(L, label):
    return L.norm(L.glue_representative(label))


def test_marks_are_highest_root():
    for fam, n in TYPES:
        L = build(fam, n)
        h = L.marks
        assert L.norm(h) == -2


def test_diagram_automorphisms_act_on_labels():
    D6 = build("D", 6)
    fork = D6.diagram_automorphisms()["fork"]
    assert D6.is_diagram_automorphism(fork)
    assert D6.flip_label(fork, 1) == 3 and D6.flip_label(fork, 3) == 1
    assert D6.flip_label(fork, 2) == 2
    A9 = build("A", 9)
    rev = A9.diagram_automorphisms()["reverse"]
    assert [A9.flip_label(rev, k) for k in range(10)] == [0] + list(range(9, 0, -1))


def test_parse_type_rejects_bad_names():
    assert parse_type("d6") == ("D", 6)
    for bad in ("D3", "E9", "B2"):
        with pytest.raises(ValueError):
            parse_type(bad)


def test_lll_preserves_determinant():
    g = [[Fraction(x) for x in r] for r in [[10, 7, 3], [7, 6, 2], [3, 2, 5]]]
    red, H = lll_gram(g)
    assert det(red) == det(g)
    assert abs(det(H)) == 1


def test_fincke_pohst_counts_and_closest():
    g = [[2, -1], [-1, 2]]        # positive A2
    assert len(fincke_pohst(g, 2)) == 6          # the six roots, zero excluded
    cv = closest_vectors(g, [Fraction(1, 3), Fraction(1, 3)])
    assert (0, 0) in cv
