"""Exact LLL reduction and Fincke-Pohst enumeration on positive-definite Gram matrices.

Everything is carried out with Fractions; the lattices here have rank at most 24,
so the cubic cost of exact arithmetic is harmless.
"""
from __future__ import annotations

from fractions import Fraction
from math import floor, isqrt
from typing import Sequence

from .exact import RatMatrix, as_rat, inverse


def _round(x: Fraction) -> int:
    return floor(x + Fraction(1, 2))


def lll_gram(gram, delta: Fraction = Fraction(3, 4)):
    """LLL-reduce a positive-definite Gram matrix.

    Returns ``(reduced_gram, H)`` with ``H`` unimodular and
    ``reduced_gram = H gram H^T`` (rows of H are the new basis vectors).
    """
    G = [[as_rat(x) for x in r] for r in (gram.rows if isinstance(gram, RatMatrix) else gram)]
    n = len(G)
    H = [[int(i == j) for j in range(n)] for i in range(n)]
    if n <= 1:
        return RatMatrix(G), H
    mu = [[Fraction(0)] * n for _ in range(n)]
    B = [Fraction(0)] * n
    B[0] = G[0][0]
    if B[0] <= 0:
        raise ValueError("Gram matrix is not positive definite")

    def red(k, l):
        if abs(mu[k][l]) > Fraction(1, 2):
            q = _round(mu[k][l])
            H[k] = [a - q * b for a, b in zip(H[k], H[l])]
            G[k] = [a - q * b for a, b in zip(G[k], G[l])]
            for row in G:
                row[k] -= q * row[l]
            mu[k][l] -= q
            for i in range(l):
                mu[k][i] -= q * mu[l][i]

    def swap(k):
        H[k], H[k - 1] = H[k - 1], H[k]
        G[k], G[k - 1] = G[k - 1], G[k]
        for row in G:
            row[k], row[k - 1] = row[k - 1], row[k]
        for j in range(k - 1):
            mu[k][j], mu[k - 1][j] = mu[k - 1][j], mu[k][j]
        m = mu[k][k - 1]
        b = B[k] + m * m * B[k - 1]
        mu[k][k - 1] = m * B[k - 1] / b
        B[k] = B[k - 1] * B[k] / b
        B[k - 1] = b
        for i in range(k + 1, kmax + 1):
            t = mu[i][k]
            mu[i][k] = mu[i][k - 1] - m * t
            mu[i][k - 1] = t + mu[k][k - 1] * mu[i][k]

    k, kmax = 1, 0
    while k < n:
        if k > kmax:
            kmax = k
            for j in range(k):
                s = G[k][j] - sum((mu[j][i] * mu[k][i] * B[i] for i in range(j)), Fraction(0))
                mu[k][j] = s / B[j]
            B[k] = G[k][k] - sum((mu[k][j] ** 2 * B[j] for j in range(k)), Fraction(0))
            if B[k] <= 0:
                raise ValueError("Gram matrix is not positive definite")
        red(k, k - 1)
        if B[k] < (delta - mu[k][k - 1] ** 2) * B[k - 1]:
            swap(k)
            k = max(1, k - 1)
        else:
            for l in range(k - 2, -1, -1):
                red(k, l)
            k += 1
    return RatMatrix(G), H


def _cholesky_q(G: list[list[Fraction]]):
    """Cohen's quadratic-form decomposition Q(x) = sum q_ii (x_i + sum_{j>i} q_ij x_j)^2."""
    n = len(G)
    q = [row[:] for row in G]
    for i in range(n):
        if q[i][i] <= 0:
            raise ValueError("Gram matrix is not positive definite")
        for j in range(i + 1, n):
            q[j][i] = q[i][j]
            q[i][j] = q[i][j] / q[i][i]
        for k in range(i + 1, n):
            for l in range(k, n):
                q[k][l] -= q[k][i] * q[i][l]
    return q


def _int_range(c: Fraction, r2: Fraction) -> range:
    """Integers x with (x + c)^2 <= r2."""
    if r2 < 0:
        return range(0)
    s = isqrt(floor(r2)) + 1
    lo = floor(-c) - s
    hi = floor(-c) + s + 1
    xs = [x for x in range(lo, hi + 1) if (x + c) ** 2 <= r2]
    return range(xs[0], xs[-1] + 1) if xs else range(0)


def fincke_pohst(gram, bound, center: Sequence | None = None,
                 reduce: bool = True) -> list[tuple[int, ...]]:
    """All integer x with Q(x - center) <= bound (x != center excluded only if center is None).

    ``gram`` must be positive definite.  Coordinates are returned in the
    input basis, sorted for determinism.
    """
    G0 = [[as_rat(x) for x in r] for r in (gram.rows if isinstance(gram, RatMatrix) else gram)]
    n = len(G0)
    bound = as_rat(bound)
    if n == 0:
        return [()] if center is not None else []
    if reduce:
        Gr, H = lll_gram(G0)
        G = Gr.tolist()
    else:
        G, H = G0, [[int(i == j) for j in range(n)] for i in range(n)]
    if center is not None:
        # center in reduced coordinates: t' = t H^{-1}
        Hinv = inverse(H)
        t = [sum((as_rat(center[i]) * Hinv[i, j] for i in range(n)), Fraction(0)) for j in range(n)]
    else:
        t = [Fraction(0)] * n
    q = _cholesky_q(G)
    out: list[tuple[int, ...]] = []
    x = [0] * n

    def rec(i: int, remaining: Fraction):
        c = sum((q[i][j] * (x[j] - t[j]) for j in range(i + 1, n)), Fraction(0)) - t[i]
        for xi in _int_range(c, remaining / q[i][i]):
            x[i] = xi
            used = q[i][i] * (xi + c) ** 2
            if i == 0:
                out.append(tuple(x))
            else:
                rec(i - 1, remaining - used)
        x[i] = 0

    rec(n - 1, bound)
    result = []
    for y in out:
        if center is None and not any(y):
            continue
        result.append(tuple(sum(y[k] * H[k][j] for k in range(n)) for j in range(n)))
    return sorted(result)


def short_vectors(gram, norm) -> list[tuple[int, ...]]:
    """Integer vectors x with x G x^T exactly equal to ``norm`` (G positive definite)."""
    norm = as_rat(norm)
    G = gram.rows if isinstance(gram, RatMatrix) else gram
    res = []
    for v in fincke_pohst(gram, norm):
        val = sum((as_rat(G[i][j]) * v[i] * v[j] for i in range(len(v)) for j in range(len(v))
                   if v[i] and v[j]), Fraction(0))
        if val == norm:
            res.append(v)
    return res


def closest_vectors(gram, center: Sequence, slack=0) -> list[tuple[int, ...]]:
    """Integer points minimizing Q(x - center), plus those within ``slack`` of the minimum."""
    G = [[as_rat(x) for x in r] for r in (gram.rows if isinstance(gram, RatMatrix) else gram)]
    n = len(G)
    if n == 0:
        return [()]
    rounded = [_round(as_rat(c)) for c in center]

    def qf(x):
        d = [as_rat(a) - as_rat(b) for a, b in zip(x, center)]
        return sum((G[i][j] * d[i] * d[j] for i in range(n) for j in range(n)), Fraction(0))

    bound = qf(rounded)
    pts = fincke_pohst(G, bound, center=center)
    best = min(qf(p) for p in pts)
    return sorted(p for p in pts if qf(p) <= best + as_rat(slack))
