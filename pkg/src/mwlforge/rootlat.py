"""Irreducible root lattices A_n, D_n, E_n in the negative-definite convention.

Simple roots have norm -2 and adjacent simple roots pair to +1.  Node
numbering is Bourbaki's: for D_n the chain is d1-...-d_{n-2} with d_{n-1}
and d_n both attached to d_{n-2}; for E_n the node 2 hangs off node 4.

For a simple root basis (r_i) we use two dual families:

* ``dual_basis_vector(j)`` = alpha_j with <alpha_j, r_i> = delta_ij,
* ``fundamental_weight(j)`` = omega_j = -alpha_j, which has nonnegative
  coefficients and is the usual minimal glue representative.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .exact import RatMatrix, bilinear, det, inverse

FAMILIES = ("A", "D", "E")


def dynkin_edges(family: str, rank: int) -> tuple[tuple[int, int], ...]:
    """Edges of the Dynkin diagram, 0-based node indices."""
    if family == "A":
        return tuple((i, i + 1) for i in range(rank - 1))
    if family == "D":
        chain = [(i, i + 1) for i in range(rank - 2)]
        return tuple(chain[:-1] + [(rank - 3, rank - 2), (rank - 3, rank - 1)])
    if family == "E":
        # 1-3-4-5-6-7-8 with 2 attached to 4 (1-based)
        e = [(0, 2), (2, 3), (3, 4), (1, 3)]
        e += [(i, i + 1) for i in range(4, rank - 1)]
        return tuple(sorted(e))
    raise ValueError(f"unknown family {family!r}")


def check_type(family: str, rank: int) -> None:
    ok = ((family == "A" and rank >= 1) or (family == "D" and rank >= 4)
          or (family == "E" and rank in (6, 7, 8)))
    if not ok:
        raise ValueError(f"no root lattice of type {family}{rank}")


def type_name(family: str, rank: int) -> str:
    return f"{family}{rank}"


def parse_type(name: str) -> tuple[str, int]:
    family, rank = name[0].upper(), int(name[1:])
    check_type(family, rank)
    return family, rank


@dataclass(frozen=True)
class RootLattice:
    family: str
    rank: int
    prefix: str = field(default="", compare=False)

    def __post_init__(self):
        check_type(self.family, self.rank)

    @property
    def name(self) -> str:
        return type_name(self.family, self.rank)

    @property
    def labels(self) -> tuple[str, ...]:
        p = self.prefix or {"A": "a", "D": "d", "E": "e"}[self.family]
        return tuple(f"{p}{i + 1}" for i in range(self.rank))

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return dynkin_edges(self.family, self.rank)

    @cached_property
    def gram(self) -> RatMatrix:
        n = self.rank
        g = [[0] * n for _ in range(n)]
        for i in range(n):
            g[i][i] = -2
        for i, j in self.edges:
            g[i][j] = g[j][i] = 1
        return RatMatrix(g)

    @cached_property
    def det(self) -> int:
        return int(det(self.gram))

    @property
    def disc_order(self) -> int:
        return abs(self.det)

    @cached_property
    def _ginv(self) -> RatMatrix:
        return inverse(self.gram)

    def dual_gram(self) -> RatMatrix:
        """Gram matrix -G^{-1}; it satisfies dual_gram * (-G) = I."""
        return -self._ginv

    def dual_basis_vector(self, j: int) -> tuple[Fraction, ...]:
        """alpha_j (1-based j): <alpha_j, r_i> = delta_ij."""
        if not 1 <= j <= self.rank:
            raise ValueError(f"index {j} out of range for {self.name}")
        return self._ginv.rows[j - 1]

    def fundamental_weight(self, j: int) -> tuple[Fraction, ...]:
        return tuple(-x for x in self.dual_basis_vector(j))

    def pair(self, u: Sequence, v: Sequence) -> Fraction:
        return bilinear(u, v, self.gram)

    def norm(self, u: Sequence) -> Fraction:
        return self.pair(u, u)

    @cached_property
    def marks(self) -> tuple[int, ...]:
        """Coefficients of the highest root in the simple-root basis."""
        n = self.rank
        if self.family == "A":
            return (1,) * n
        if self.family == "D":
            return (1,) + (2,) * (n - 3) + (1, 1)
        return {6: (1, 2, 2, 3, 2, 1), 7: (2, 2, 3, 4, 3, 2, 1),
                8: (2, 3, 4, 6, 5, 4, 3, 2)}[n]

    # -- discriminant group ------------------------------------------------
    @cached_property
    def glue_weights(self) -> tuple[int | None, ...]:
        """For each label, the (1-based) fundamental weight representing it (None for 0)."""
        n = self.rank
        if self.family == "A":
            return (None,) + tuple(range(1, n + 1))
        if self.family == "D":
            return (None, n, 1, n - 1)
        return {6: (None, 1, 6), 7: (None, 7), 8: (None,)}[n]

    @property
    def num_classes(self) -> int:
        return len(self.glue_weights)

    def glue_representative(self, label: int) -> tuple[Fraction, ...]:
        """Standard minimal representative of a discriminant class."""
        if not 0 <= label < self.num_classes:
            raise ValueError(f"label {label} out of range for {self.name}")
        w = self.glue_weights[label]
        if w is None:
            return (Fraction(0),) * self.rank
        return self.fundamental_weight(w)

    def class_of(self, v: Sequence) -> int:
        """Label of the discriminant class containing v (v in the dual lattice)."""
        for lab in range(self.num_classes):
            rep = self.glue_representative(lab)
            if all((Fraction(a) - b).denominator == 1 for a, b in zip(v, rep)):
                return lab
        raise ValueError("vector is not in the dual lattice")

    def in_dual(self, v: Sequence) -> bool:
        return all(x.denominator == 1 for x in self.gram @ v)

    def add_labels(self, a: int, b: int) -> int:
        ra, rb = self.glue_representative(a), self.glue_representative(b)
        return self.class_of([x + y for x, y in zip(ra, rb)])

    def neg_label(self, a: int) -> int:
        return self.class_of([-x for x in self.glue_representative(a)])

    def scale_label(self, k: int, a: int) -> int:
        return self.class_of([k * x for x in self.glue_representative(a)])

    def label_order(self, a: int) -> int:
        k = 1
        while self.scale_label(k, a) != 0:
            k += 1
        return k

    # -- diagram automorphisms -------------------------------------------
    def diagram_automorphisms(self) -> dict[str, tuple[int, ...]]:
        """Named node permutations (0-based images) of the Dynkin diagram."""
        n = self.rank
        auts = {"id": tuple(range(n))}
        if self.family == "A" and n > 1:
            auts["reverse"] = tuple(range(n - 1, -1, -1))
        if self.family == "D":
            auts["fork"] = tuple(range(n - 2)) + (n - 1, n - 2)
        if self.family == "E" and n == 6:
            auts["reverse"] = (5, 1, 4, 3, 2, 0)
        return auts

    def is_diagram_automorphism(self, perm: Sequence[int]) -> bool:
        if sorted(perm) != list(range(self.rank)):
            return False
        es = {frozenset(e) for e in self.edges}
        return {frozenset((perm[i], perm[j])) for i, j in self.edges} == es

    def flip_label(self, perm: Sequence[int], label: int) -> int:
        """Action of a diagram automorphism on discriminant labels."""
        rep = self.glue_representative(label)
        moved = [Fraction(0)] * self.rank
        for i, x in enumerate(rep):
            moved[perm[i]] = x
        return self.class_of(moved)


def build(family: str, rank: int, prefix: str = "") -> RootLattice:
    return RootLattice(family.upper(), rank, prefix)


def glue_class(lattice: RootLattice, label: int) -> tuple[tuple[Fraction, ...], Fraction]:
    """Standard representative and its self-pairing."""
    rep = lattice.glue_representative(label)
    return rep, lattice.norm(rep)


def dual_gram(lattice: RootLattice) -> RatMatrix:
    return lattice.dual_gram()


def dual_basis_vector(lattice: RootLattice, j: int) -> tuple[Fraction, ...]:
    return lattice.dual_basis_vector(j)
