"""Integer and rational linear algebra: HNF, SNF, kernels, saturation."""
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mwlforge.exact import (RatMatrix, det, int_det, int_matmul, integer_kernel,
                            inverse, quotient_invariants, rank, saturate, snf, solve_integer,
                            solve_rational)

small = st.integers(min_value=-6, max_value=6)


def matrices(max_rows=4, max_cols=4):
    return st.integers(1, max_rows).flatmap(
        lambda m: st.integers(1, max_cols).flatmap(
            lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=m, max_size=m)))


def _diag(d, m, n):
    return [[d[i] if i == j and i < len(d) else 0 for j in range(n)] for i in range(m)]


def _check_snf(a):
    r = snf(a)
    m, n = len(a), len(a[0])
    assert int_matmul(int_matmul([list(x) for x in r.left], a), [list(x) for x in r.right]) == \
        _diag(r.diagonal, m, n)
    assert abs(int_det(r.left)) == 1 and abs(int_det(r.right)) == 1
    nz = [d for d in r.diagonal if d]
    assert all(d > 0 for d in nz)
    assert all(nz[i + 1] % nz[i] == 0 for i in range(len(nz) - 1))
    assert len(nz) == rank(a)


@given(matrices())
def test_snf_reconstruction_random(a):
    _check_snf(a)


def test_snf_reconstruction_exhaustive_2x2():
    for e in product(range(-2, 3), repeat=4):
        _check_snf([[e[0], e[1]], [e[2], e[3]]])


def test_snf_known_invariants():
    assert snf([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]).diagonal == (2, 6, 12)
    assert snf([[2, 0], [0, 3]]).invariants == (6,)


def _in_kernel(a, v):
    return all(sum(x * y for x, y in zip(r, v)) == 0 for r in a)


@given(matrices(3, 5))
def test_kernel_is_saturated(a):
    n = len(a[0])
    K = integer_kernel(a, n)
    assert all(_in_kernel(a, v) for v in K)
    assert len(K) == n - rank(a)
    # saturated: the kernel basis already spans its rational closure
    if K:
        assert quotient_invariants(K, saturate(K, n)) == ()


def test_kernel_saturation_exhaustive_1x3():
    for row in product(range(-2, 3), repeat=3):
        if not any(row):
            continue
        K = integer_kernel([list(row)], 3)
        assert len(K) == 2
        # every small integer solution is an integer combination of K
        for v in product(range(-3, 4), repeat=3):
            if _in_kernel([row], v):
                assert solve_rational(RatMatrix([list(c) for c in zip(*K)]), v) is not None
                c = solve_integer([list(c) for c in zip(*K)], list(v))
                assert c is not None


@given(st.lists(st.lists(small, min_size=4, max_size=4), min_size=1, max_size=3))
def test_saturate_idempotent(vs):
    s = saturate(vs, 4)
    assert saturate(s, 4) == s
    assert len(s) == rank(vs)


def test_saturate_idempotent_exhaustive_pairs():
    for a in product(range(-2, 3), repeat=2):
        for b in product(range(-2, 3), repeat=2):
            s = saturate([a, b], 2)
            assert saturate(s, 2) == s


def test_saturation_of_multiple():
    assert saturate([[2, 4, 6]], 3) == [(1, 2, 3)]


@given(matrices(3, 3).filter(lambda a: len(a) == len(a[0]) and det(a) != 0))
def test_inverse_roundtrip(a):
    inv = inverse(a)
    assert RatMatrix(a) @ inv == RatMatrix([[Fraction(int(i == j)) for j in range(len(a))]
                                            for i in range(len(a))])


def test_solve_integer_detects_no_solution():
    assert solve_integer([[2, 0], [0, 2]], [1, 0]) is None
    x0, ker = solve_integer([[1, 1]], [3])
    assert x0[0] + x0[1] == 3 and len(ker) == 1


def test_det_exact():
    assert det([[Fraction(1, 2), 1], [1, Fraction(1, 3)]]) == Fraction(-5, 6)
    with pytest.raises(Exception):
        det([[1, 2, 3]])
