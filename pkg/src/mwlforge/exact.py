"""Exact rational and integer linear algebra.

Rationals are :class:`fractions.Fraction`; integer matrices are plain lists
of ``int`` rows.  Nothing here touches floating point.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

Rat = Fraction
IntVec = tuple[int, ...]


def lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b if a and b else 0


def as_rat(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x)
    return Fraction(x)


def common_denominator(vectors: Iterable[Sequence[Fraction]]) -> int:
    d = 1
    for v in vectors:
        for x in v:
            d = lcm(d, Fraction(x).denominator)
    return d


@dataclass(frozen=True)
class RatMatrix:
    """Immutable dense matrix of exact rationals (row-major)."""

    rows: tuple[tuple[Fraction, ...], ...]

    def __init__(self, rows: Iterable[Iterable]):
        rs = tuple(tuple(as_rat(x) for x in r) for r in rows)
        if rs and any(len(r) != len(rs[0]) for r in rs):
            raise ValueError("ragged matrix")
        object.__setattr__(self, "rows", rs)

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def diagonal(cls, entries: Sequence) -> "RatMatrix":
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.rows[i][j]

    def __iter__(self):
        return iter(self.rows)

    def __len__(self) -> int:
        return self.nrows

    @property
    def T(self) -> "RatMatrix":
        return RatMatrix(zip(*self.rows)) if self.rows else RatMatrix([])

    def __matmul__(self, other):
        if isinstance(other, RatMatrix):
            if self.ncols != other.nrows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            cols = other.T.rows
            return RatMatrix([[sum((a * b for a, b in zip(r, c)), Fraction(0)) for c in cols]
                              for r in self.rows])
        vec = [as_rat(x) for x in other]
        if self.ncols != len(vec):
            raise ValueError("shape mismatch")
        return tuple(sum((a * b for a, b in zip(r, vec)), Fraction(0)) for r in self.rows)

    def __neg__(self) -> "RatMatrix":
        return RatMatrix([[-x for x in r] for r in self.rows])

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        return RatMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def scale(self, c) -> "RatMatrix":
        c = as_rat(c)
        return RatMatrix([[c * x for x in r] for r in self.rows])

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def is_symmetric(self) -> bool:
        return self.is_square() and all(self.rows[i][j] == self.rows[j][i]
                                         for i in range(self.nrows) for j in range(i))

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for r in self.rows for x in r)

    def det(self) -> Fraction:
        return det(self)

    def inverse(self) -> "RatMatrix":
        return inverse(self)

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self.rows]

    def to_strings(self) -> list[list[str]]:
        return [[str(x) for x in r] for r in self.rows]

    def __repr__(self) -> str:
        return "RatMatrix(" + repr(self.to_strings()) + ")"


def _rows(m) -> list[list[Fraction]]:
    if isinstance(m, RatMatrix):
        return m.tolist()
    return [[as_rat(x) for x in r] for r in m]


def det(m) -> Fraction:
    a = _rows(m)
    n = len(a)
    if any(len(r) != n for r in a):
        raise ValueError("determinant of a non-square matrix")
    sign = 1
    result = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            sign = -sign
        piv = a[c][c]
        result *= piv
        for i in range(c + 1, n):
            if a[i][c]:
                f = a[i][c] / piv
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return sign * result


def rref(m) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q and the pivot columns."""
    a = _rows(m)
    pivots: list[int] = []
    r = 0
    ncols = len(a[0]) if a else 0
    for c in range(ncols):
        p = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        piv = a[r][c]
        a[r] = [x / piv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a, pivots


def rank(m) -> int:
    return len(rref(m)[1]) if _rows(m) else 0


def inverse(m) -> RatMatrix:
    a = _rows(m)
    n = len(a)
    if any(len(r) != n for r in a):
        raise ValueError("inverse of a non-square matrix")
    aug = [r + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(a)]
    red, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return RatMatrix([r[n:] for r in red])


def solve_rational(a, b: Sequence) -> tuple[Fraction, ...] | None:
    """One solution of ``a x = b`` (free variables set to 0), or None."""
    rows = _rows(a)
    if len(rows) != len(b):
        raise ValueError("right-hand side has the wrong length")
    ncols = len(rows[0]) if rows else 0
    aug = [r + [as_rat(y)] for r, y in zip(rows, b)]
    red, piv = rref(aug)
    if ncols in piv:
        return None
    x = [Fraction(0)] * ncols
    for r, c in zip(red, piv):
        x[c] = r[ncols]
    return tuple(x)


def coords_in_basis(v: Sequence, basis: Sequence[Sequence]) -> tuple[Fraction, ...] | None:
    """Coefficients c with sum c_i basis_i = v (basis rows independent)."""
    if not basis:
        return () if all(x == 0 for x in v) else None
    at = list(zip(*[[as_rat(x) for x in b] for b in basis]))
    return solve_rational(at, v)


# --------------------------------------------------------------------------
# integer algorithms

def hnf(a: Sequence[Sequence[int]], ncols: int | None = None):
    """Row Hermite normal form.

    Returns ``(H, U, pivots)`` with ``U`` unimodular, ``U A = H``, pivots
    positive and entries above each pivot reduced into ``[0, pivot)``.
    """
    A = [list(map(int, r)) for r in a]
    m = len(A)
    n = ncols if ncols is not None else (len(A[0]) if A else 0)
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    pivots: list[int] = []
    r = 0
    for c in range(n):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if A[i][c] != 0]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(A[i][c]))
            A[r], A[p] = A[p], A[r]
            U[r], U[p] = U[p], U[r]
            clean = True
            for i in range(r + 1, m):
                if A[i][c]:
                    q = A[i][c] // A[r][c]
                    A[i] = [x - q * y for x, y in zip(A[i], A[r])]
                    U[i] = [x - q * y for x, y in zip(U[i], U[r])]
                    if A[i][c]:
                        clean = False
            if clean:
                break
        if A[r][c] == 0:
            continue
        if A[r][c] < 0:
            A[r] = [-x for x in A[r]]
            U[r] = [-x for x in U[r]]
        for i in range(r):
            q = A[i][c] // A[r][c]
            if q:
                A[i] = [x - q * y for x, y in zip(A[i], A[r])]
                U[i] = [x - q * y for x, y in zip(U[i], U[r])]
        pivots.append(c)
        r += 1
    return A, U, pivots


def hnf_basis(vectors: Sequence[Sequence[int]], ncols: int) -> list[IntVec]:
    """Hermite-reduced basis of the integer span of ``vectors``."""
    if not vectors:
        return []
    H, _, piv = hnf(vectors, ncols)
    return [tuple(r) for r in H[:len(piv)]]


def integer_kernel(m: Sequence[Sequence[int]], ncols: int | None = None) -> list[IntVec]:
    """Saturated basis of ``{x in Z^n : m x = 0}`` in Hermite form."""
    rows = [list(map(int, r)) for r in m]
    n = ncols if ncols is not None else len(rows[0])
    r = len(rows)
    aug = [[rows[j][i] for j in range(r)] + [int(i == k) for k in range(n)] for i in range(n)]
    H, _, piv = hnf(aug, r + n)
    return [tuple(H[i][r:]) for i, c in enumerate(piv) if c >= r]


def saturate(sub: Sequence[Sequence[int]], ambient_rank: int) -> list[IntVec]:
    """Basis of ``(Q-span of sub) ∩ Z^n``."""
    if not sub:
        return []
    perp = integer_kernel(sub, ambient_rank)
    return integer_kernel(perp, ambient_rank)


@dataclass(frozen=True)
class SnfResult:
    """``left @ A @ right == diag(diagonal)`` padded to the shape of A."""

    diagonal: tuple[int, ...]
    left: tuple[IntVec, ...]
    right: tuple[IntVec, ...]

    @property
    def invariants(self) -> tuple[int, ...]:
        """Nontrivial finite invariant factors (entries > 1)."""
        return tuple(d for d in self.diagonal if d > 1)


def snf(a: Sequence[Sequence[int]]) -> SnfResult:
    A = [list(map(int, r)) for r in a]
    m = len(A)
    n = len(A[0]) if A else 0
    L = [[int(i == j) for j in range(m)] for i in range(m)]
    R = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        L[i], L[j] = L[j], L[i]

    def swap_cols(i, j):
        for M in (A, R):
            for row in M:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst -= q row_src
        A[dst] = [x - q * y for x, y in zip(A[dst], A[src])]
        L[dst] = [x - q * y for x, y in zip(L[dst], L[src])]

    def add_col(dst, src, q):  # col_dst -= q col_src
        for M in (A, R):
            for row in M:
                row[dst] -= q * row[src]

    for t in range(min(m, n)):
        while True:
            nz = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
            if not nz:
                break
            _, i, j = min(nz)
            swap_rows(t, i)
            swap_cols(t, j)
            p = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, A[i][t] // p)
                    dirty = dirty or A[i][t] != 0
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, A[t][j] // p)
                    dirty = dirty or A[t][j] != 0
            if dirty:
                continue
            bad = next((i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad, -1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            L[t] = [-x for x in L[t]]
    diag = tuple(A[i][i] for i in range(min(m, n)))
    return SnfResult(diag, tuple(map(tuple, L)), tuple(map(tuple, R)))


def int_matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> list[list[int]]:
    cols = list(zip(*b))
    return [[sum(x * y for x, y in zip(r, c)) for c in cols] for r in a]


def int_det(a: Sequence[Sequence[int]]) -> int:
    d = det(a)
    assert d.denominator == 1
    return int(d)


def quotient_invariants(sub: Sequence[Sequence], sup: Sequence[Sequence]) -> tuple[int, ...]:
    """Invariant factors of span(sup)/span(sub), both full-rank bases of the same space.

    Raises if ``sub`` is not contained in ``sup``.
    """
    coords = []
    for v in sub:
        c = coords_in_basis(v, sup)
        if c is None or any(x.denominator != 1 for x in c):
            raise ValueError("sublattice is not contained in the superlattice")
        coords.append([int(x) for x in c])
    if not coords:
        return ()
    return snf(coords).invariants


def scale_to_integers(vectors: Sequence[Sequence]) -> tuple[list[list[int]], int]:
    d = common_denominator(vectors)
    return [[int(Fraction(x) * d) for x in v] for v in vectors], d


def rational_lattice_basis(vectors: Sequence[Sequence], dim: int) -> list[tuple[Fraction, ...]]:
    """Basis of the Z-span of rational vectors (Hermite form of the scaled span)."""
    ints, d = scale_to_integers(vectors)
    return [tuple(Fraction(x, d) for x in r) for r in hnf_basis(ints, dim)]


def bilinear(u: Sequence, v: Sequence, gram) -> Fraction:
    g = gram.rows if isinstance(gram, RatMatrix) else gram
    total = Fraction(0)
    for i, ui in enumerate(u):
        if ui:
            row = g[i]
            total += ui * sum((row[j] * vj for j, vj in enumerate(v) if vj), Fraction(0))
    return Fraction(total)


def gram_of(vectors: Sequence[Sequence], gram) -> RatMatrix:
    return RatMatrix([[bilinear(u, v, gram) for v in vectors] for u in vectors])


def solve_integer(a: Sequence[Sequence[int]], b: Sequence[int], ncols: int | None = None):
    """Integer solutions of ``a x = b``.

    Returns ``(x0, kernel)`` with every solution equal to x0 plus an integer
    combination of ``kernel``, or None when no integer solution exists.
    """
    rows = [list(map(int, r)) for r in a]
    n = ncols if ncols is not None else len(rows[0])
    if not rows:
        return (0,) * n, [tuple(int(i == j) for j in range(n)) for i in range(n)]
    res = snf(rows)
    U, V, d = res.left, res.right, res.diagonal
    ub = [sum(u * int(y) for u, y in zip(row, b)) for row in U]
    y = [0] * n
    for i, ui in enumerate(ub):
        if i < len(d) and d[i]:
            if ui % d[i]:
                return None
            y[i] = ui // d[i]
        elif ui:
            return None
    x0 = tuple(sum(V[r][c] * y[c] for c in range(n)) for r in range(n))
    free = [c for c in range(n) if c >= len(d) or d[c] == 0]
    kernel = [tuple(V[r][c] for r in range(n)) for c in free]
    return x0, hnf_basis(kernel, n) if kernel else []
