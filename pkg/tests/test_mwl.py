"""Height pairing formulas, fiber data and binary form equivalence."""
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mwlforge.exact import RatMatrix
from mwlforge.mwl import (FiberSpec, SectionSpec, contribution, dictionary_ade_kodaira, height,
                          modular_obstruction, pairing, qform_equivalent, representations)

F = Fraction


@pytest.mark.parametrize("n", range(2, 12))
def test_in_contributions(n):
    f = FiberSpec(f"I{n}")
    for i in range(n):
        for j in range(i, n):
            assert contribution(f, i, j) == F(i * (n - j), n)
            assert contribution(f, j, i) == contribution(f, i, j)


@pytest.mark.parametrize("n", range(0, 6))
def test_in_star_contributions(n):
    f = FiberSpec(f"I{n}*")
    assert contribution(f, 1, 1) == 1
    assert contribution(f, 2, 2) == 1 + F(n, 4) == contribution(f, 3, 3)
    assert contribution(f, 1, 2) == F(1, 2)
    assert contribution(f, 2, 3) == F(1, 2) + F(n, 4)


def test_exceptional_contributions():
    assert contribution(FiberSpec("IV"), 1, 1) == F(2, 3)
    assert contribution(FiberSpec("IV*"), 1, 2) == F(2, 3)
    assert contribution(FiberSpec("III*"), 1, 1) == F(3, 2)
    with pytest.raises(ValueError):
        contribution(FiberSpec("I3"), 3, 0)


def test_fiber_dictionary():
    for rt, k in [("A1", "I2"), ("A7", "I8"), ("D4", "I0*"), ("D6", "I2*"), ("E6", "IV*"),
                  ("E7", "III*"), ("E8", "II*")]:
        assert dictionary_ade_kodaira(rt) == k
        assert FiberSpec(k).root_type == rt
    with pytest.raises(ValueError):
        FiberSpec("I2**")


def test_height_formula_d64_generator():
    fibers = [FiberSpec("I2", "A1"), FiberSpec("I0*", "D4"), FiberSpec("I2*", "a"),
              FiberSpec("I2*", "b")]
    w1 = SectionSpec("W1", {"A1": 0, "D4": 0, "a": 2, "b": 1}, 0)
    assert height(w1, fibers) == F(3, 2)
    q1 = SectionSpec("Q1", {"A1": 0, "D4": 2, "a": 2, "b": 3}, 0)
    assert height(q1, fibers) == 0


def test_pairing_symmetric():
    fibers = [FiberSpec("I8", "p"), FiberSpec("I10", "q")]
    a = SectionSpec("a", {"p": 7, "q": 8}, 0)
    b = SectionSpec("b", {"p": 6, "q": 6}, 0)
    assert pairing(a, b, fibers, 0) == pairing(b, a, fibers, 0)


QI1 = [[F(61, 40), F(1, 20)], [F(1, 20), F(1, 10)]]
QI2 = [[F(1, 10), F(0)], [F(0), F(3, 2)]]


def test_qform_forms_not_equivalent():
    r = qform_equivalent(QI1, QI2)
    assert not r.equivalent and r.witness


def _apply(M, g):
    return [[sum(M[i][k] * g[k][l] * M[j][l] for k in range(2) for l in range(2))
             for j in range(2)] for i in range(2)]


def _mul(A, B):
    return [[sum(A[i][k] * B[k][j] for k in range(2)) for j in range(2)] for i in range(2)]


# GL2(Z) words in the shear, the swap and a sign change
ELEMENTARY = {"t": [[1, 1], [0, 1]], "u": [[1, 0], [-1, 1]], "s": [[0, 1], [1, 0]],
              "n": [[-1, 0], [0, 1]]}


@given(st.lists(st.sampled_from(sorted(ELEMENTARY)), max_size=6))
def test_qform_finds_transform_for_unimodular_images(word):
    M = [[1, 0], [0, 1]]
    for w in word:
        M = _mul(M, ELEMENTARY[w])
    for g in (QI1, QI2):
        g2 = _apply(M, g)
        r = qform_equivalent(g, g2)
        assert r.equivalent
        assert _apply([list(x) for x in r.transform], g) == g2


def test_representations_complete():
    reps = representations(QI2, F(1, 10))
    assert sorted(reps) == [(-1, 0), (1, 0)]
    assert representations(QI2, F(1, 20)) == []
    # x^2 + y^2 = 3 has no solution modulo 4
    assert modular_obstruction([[1, 0], [0, 1]], 3) == 4
