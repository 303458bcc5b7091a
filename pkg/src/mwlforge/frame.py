"""Frames W = T^perp in a Niemeier lattice for primitive embeddings of T = A5 + A1.

All vectors live in the 24 global simple-root coordinates of the Niemeier
lattice.  W is computed as an integer kernel on a Z-basis of L, N as an
integer kernel on the root lattice; the root system of W comes from exact
short-vector enumeration.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Sequence

from .exact import (RatMatrix, bilinear, coords_in_basis, det, gram_of, hnf_basis,
                    integer_kernel, rank, rational_lattice_basis, saturate, snf,
                    solve_rational)
from .lattice_enum import lll_gram, short_vectors
from .niemeier import NiemeierLattice
from .rootlat import build

Vec = tuple[Fraction, ...]


def t_gram() -> RatMatrix:
    """Gram matrix of A5 + A1 (five chain roots, then the isolated root)."""
    a5 = build("A", 5).gram.tolist()
    g = [r + [0] for r in a5] + [[0] * 5 + [-2]]
    return RatMatrix(g)


@dataclass(frozen=True)
class Embedding:
    target: NiemeierLattice
    images: tuple[tuple[int, ...], ...]
    name: str = ""

    @classmethod
    def from_roots(cls, target: NiemeierLattice, a5: Sequence[tuple[int, int]],
                   a1: tuple[int, int], name: str = "") -> "Embedding":
        """Images given as (component, 1-based node) pairs."""
        imgs = [target.root(c, k) for c, k in a5] + [target.root(*a1)]
        return cls(target, tuple(imgs), name)

    def gram(self) -> RatMatrix:
        return gram_of(self.images, self.target.gram)

    def problems(self) -> list[str]:
        out = []
        if len(self.images) != 6:
            out.append("an embedding of A5+A1 needs six image vectors")
        elif self.gram() != t_gram():
            out.append("images do not reproduce the Gram matrix of A5+A1")
        if not self.is_primitive():
            out.append("embedding is not primitive")
        return out

    def lattice_coords(self) -> list[list[int]]:
        B = self.target.basis
        out = []
        for v in self.images:
            c = coords_in_basis(v, B)
            if c is None or any(x.denominator != 1 for x in c):
                raise ValueError("image vector not in the Niemeier lattice")
            out.append([int(x) for x in c])
        return out

    def is_primitive(self) -> bool:
        coords = self.lattice_coords()
        return hnf_basis(coords, 24) == saturate(coords, 24)


@dataclass(frozen=True)
class RootComponent:
    """Irreducible component of a root system, simple roots in Bourbaki order."""

    family: str
    rank: int
    simple_roots: tuple[Vec, ...]

    @property
    def name(self) -> str:
        return f"{self.family}{self.rank}"

    @property
    def lattice(self):
        return build(self.family, self.rank)

    @property
    def marks(self) -> tuple[int, ...]:
        return self.lattice.marks


def _key(v: Sequence) -> tuple:
    first = next((i for i, x in enumerate(v) if x != 0), len(v))
    return (first, tuple(v))


def _orient_path(nodes: list[int], adj: dict[int, set[int]], roots) -> list[int]:
    ends = [n for n in nodes if len(adj[n]) <= 1]
    start = min(ends, key=lambda n: _key(roots[n]))
    order, prev = [start], None
    while len(order) < len(nodes):
        cur = order[-1]
        nxt = [m for m in adj[cur] if m != prev]
        prev = cur
        order.append(nxt[0])
    return order


def _arm(center: int, first: int, adj) -> list[int]:
    arm, prev = [first], center
    while True:
        nxt = [m for m in adj[arm[-1]] if m != prev]
        if not nxt:
            return arm
        prev = arm[-1]
        arm.append(nxt[0])


def _identify(nodes: list[int], adj, roots) -> tuple[str, list[int]]:
    deg = {n: len(adj[n]) for n in nodes}
    if any(d > 3 for d in deg.values()):
        raise ValueError("not a simply-laced Dynkin diagram")
    branch = [n for n in nodes if deg[n] == 3]
    if not branch:
        return "A", _orient_path(nodes, adj, roots)
    if len(branch) > 1:
        raise ValueError("not a Dynkin diagram")
    c = branch[0]
    arms = sorted((_arm(c, m, adj) for m in adj[c]), key=lambda a: (len(a), _key(roots[a[0]])))
    lens = tuple(len(a) for a in arms)
    if lens[0] == 1 and lens[1] == 1:
        # D_n: long arm ends at d1, fork leaves are d_{n-1}, d_n
        long = arms[2]
        return "D", list(reversed(long)) + [c] + [arms[0][0], arms[1][0]]
    if lens == (1, 2, 2):
        a, b = arms[1], arms[2]
        return "E", [a[1], arms[0][0], a[0], c, b[0], b[1]]
    if lens in ((1, 2, 3), (1, 2, 4)):
        short, long = arms[1], arms[2]
        return "E", [short[1], arms[0][0], short[0], c] + long
    raise ValueError("not a Dynkin diagram")


def _num(x):
    x = Fraction(x)
    return int(x) if x.denominator == 1 else x


def classify_root_system(roots: Sequence[Sequence], gram) -> list[RootComponent]:
    """Decompose a finite root system (norm -2 vectors) into ADE components."""
    rs = [tuple(_num(x) for x in r) for r in roots]
    if not rs:
        return []
    g = [[_num(x) for x in row] for row in (gram.rows if isinstance(gram, RatMatrix) else gram)]
    dim = len(rs[0])
    gr = {r: tuple(sum(g[i][j] * r[j] for j in range(dim) if r[j]) for i in range(dim)) for r in rs}

    def dot(a, b):
        return sum(x * y for x, y in zip(a, gr[b]) if x)

    rset = set(rs)
    for a in rs:
        if dot(a, a) != -2:
            raise ValueError("vector of norm != -2 in root set")
        for b in rs:
            p = dot(b, a)
            if p and tuple(x + p * y for x, y in zip(b, a)) not in rset:
                raise ValueError("root set is not closed under reflections")
    pos = [r for r in rs if _key(r)[0] < len(r) and r[_key(r)[0]] > 0]
    pset = set(pos)
    simple = [r for r in pos
              if not any(tuple(x - y for x, y in zip(r, p)) in pset for p in pos if p != r)]
    simple.sort(key=_key)
    if len(simple) != rank(simple):
        raise ValueError("simple roots are dependent")
    n = len(simple)
    adj: dict[int, set[int]] = {i: set() for i in range(n)}
    for i in range(n):
        for j in range(i + 1, n):
            p = dot(simple[i], simple[j])
            if p not in (0, 1):
                raise ValueError("unexpected pairing between simple roots")
            if p:
                adj[i].add(j)
                adj[j].add(i)
    seen, comps = set(), []
    for i in range(n):
        if i in seen:
            continue
        stack, nodes = [i], []
        seen.add(i)
        while stack:
            x = stack.pop()
            nodes.append(x)
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        fam, order = _identify(sorted(nodes), adj, simple)
        comps.append(RootComponent(fam, len(order),
                                   tuple(tuple(Fraction(x) for x in simple[k]) for k in order)))
    comps.sort(key=lambda c: (c.family, c.rank, _key(c.simple_roots[0])))
    return comps


def roots_of(basis: Sequence[Sequence], gram) -> list[Vec]:
    """All norm -2 vectors of the negative-definite lattice spanned by ``basis``."""
    if not basis:
        return []
    g = gram_of(basis, gram)
    neg = -g
    for k in range(1, len(basis) + 1):
        if det([r[:k] for r in neg.rows[:k]]) <= 0:
            raise ValueError("lattice is not negative definite")
    out = []
    for c in short_vectors(neg, 2):
        out.append(tuple(sum((c[i] * Fraction(basis[i][j]) for i in range(len(c))), Fraction(0))
                         for j in range(len(basis[0]))))
    return sorted(out)


def orthogonal_complement_in_component(images: Sequence[Sequence], comp) -> list[tuple[int, ...]]:
    """Saturated basis of the vectors of the root lattice ``comp`` orthogonal to ``images``."""
    G = comp.gram
    rows = [[int(x) for x in G @ v] for v in images]
    if not rows:
        return [tuple(int(i == j) for j in range(comp.rank)) for i in range(comp.rank)]
    return integer_kernel(rows, comp.rank)


def _int_coords(vectors, basis) -> list[list[int]]:
    out = []
    for v in vectors:
        c = coords_in_basis(v, basis)
        if c is None or any(x.denominator != 1 for x in c):
            raise ValueError("vector is not in the lattice")
        out.append([int(x) for x in c])
    return out


@dataclass(frozen=True)
class Frame:
    embedding: Embedding
    W_basis: tuple[Vec, ...]
    N_basis: tuple[Vec, ...]
    root_components: tuple[RootComponent, ...]
    W_root_closure_basis: tuple[Vec, ...]
    wn_invariants: tuple[int, ...]
    torsion: tuple[int, ...]
    det_N: Fraction
    det_W: Fraction
    roots: tuple[Vec, ...] = field(repr=False, default=())

    @property
    def lattice(self) -> NiemeierLattice:
        return self.embedding.target

    @property
    def W_root_basis(self) -> tuple[Vec, ...]:
        return tuple(r for c in self.root_components for r in c.simple_roots)

    @property
    def root_types(self) -> list[str]:
        return [c.name for c in self.root_components]

    @property
    def mw_rank(self) -> int:
        return len(self.W_basis) - len(self.W_root_basis)

    @property
    def wn_order(self) -> int:
        o = 1
        for d in self.wn_invariants:
            o *= d
        return o

    @property
    def torsion_order(self) -> int:
        o = 1
        for d in self.torsion:
            o *= d
        return o

    def pair(self, u, v) -> Fraction:
        return self.lattice.pair(u, v)

    @cached_property
    def root_gram(self) -> RatMatrix:
        return gram_of(self.W_root_basis, self.lattice.gram)

    @property
    def disc_trivial(self) -> Fraction:
        """disc(U + W_root) with disc(U) = -1."""
        return -det(self.root_gram) if self.W_root_basis else Fraction(-1)

    def contains(self, v: Sequence) -> bool:
        c = coords_in_basis(v, self.W_basis)
        return c is not None and all(x.denominator == 1 for x in c)

    def project(self, v: Sequence) -> Vec:
        """Orthogonal projection away from W_root tensor Q."""
        R = self.W_root_basis
        v = tuple(Fraction(x) for x in v)
        if not R:
            return v
        rhs = [self.pair(v, r) for r in R]
        c = solve_rational(self.root_gram, rhs)
        return tuple(x - sum((ci * r[j] for ci, r in zip(c, R)), Fraction(0))
                     for j, x in enumerate(v))

    def height_pairing(self, u, v) -> Fraction:
        """Lattice-side height pairing: minus the pairing of the projections."""
        return -self.pair(self.project(u), self.project(v))

    @cached_property
    def mw_basis(self) -> tuple[Vec, ...]:
        """Projections of an LLL-reduced basis of W / closure(W_root)."""
        projs = [self.project(w) for w in self.W_basis]
        basis = rational_lattice_basis(projs, len(projs[0]))
        if not basis:
            return ()
        g = [[-self.pair(a, b) for b in basis] for a in basis]
        _, H = lll_gram(g)
        return tuple(tuple(sum((h[k] * basis[k][j] for k in range(len(basis))), Fraction(0))
                           for j in range(len(basis[0]))) for h in H)

    @cached_property
    def mw_lattice_gram(self) -> RatMatrix:
        b = self.mw_basis
        return RatMatrix([[-self.pair(x, y) for y in b] for x in b])

    @property
    def disc_check(self) -> Fraction:
        """(-1)^r disc(T) disc(MWL) / |tors|^2."""
        d_mw = det(self.mw_lattice_gram) if self.mw_rank else Fraction(1)
        return (-1) ** self.mw_rank * self.disc_trivial * d_mw / self.torsion_order ** 2

    def glue_labels(self, v: Sequence) -> tuple[int, ...]:
        return self.lattice.labels_of(v)

    @cached_property
    def wn_classes(self) -> tuple[tuple[int, ...], ...]:
        """W/N as a set of glue label tuples (W/N embeds into L/L_root)."""
        lat = self.lattice
        gens = {self.glue_labels(w) for w in self.W_basis}
        zero = tuple(0 for _ in lat.components)
        seen, frontier = {zero}, [zero]
        while frontier:
            new = []
            for a in frontier:
                for g in gens:
                    s = lat.add(a, g)
                    if s not in seen:
                        seen.add(s)
                        new.append(s)
            frontier = new
        if len(seen) != self.wn_order:
            raise AssertionError("W/N label closure disagrees with the index")
        return tuple(sorted(seen))

    def summary(self) -> dict:
        return {
            "lattice": self.lattice.name,
            "embedding": self.embedding.name,
            "root_types": self.root_types,
            "torsion": list(self.torsion),
            "mw_rank": self.mw_rank,
            "det_N": self.det_N,
            "det_W": self.det_W,
            "wn_invariants": list(self.wn_invariants),
            "mw_gram": self.mw_lattice_gram,
            "disc_trivial": self.disc_trivial,
            "disc_check": self.disc_check,
        }


def compute_frame(e: Embedding) -> Frame:
    bad = e.problems()
    if bad:
        raise ValueError("; ".join(bad))
    L = e.target
    G = L.gram
    B = L.basis
    dim = L.dim
    P = [[bilinear(b, t, G) for t in e.images] for b in B]
    if any(x.denominator != 1 for r in P for x in r):
        raise AssertionError("L does not pair integrally with roots")
    PT = [[int(P[i][j]) for i in range(dim)] for j in range(len(e.images))]
    K = integer_kernel(PT, dim)
    W = [tuple(sum((k[i] * B[i][j] for i in range(dim)), Fraction(0)) for j in range(dim)) for k in K]

    TG = [[int(x) for x in G @ t] for t in e.images]
    N = [tuple(Fraction(x) for x in v) for v in integer_kernel(TG, dim)]

    n_in_w = _int_coords(N, W)
    wn = snf(n_in_w).invariants

    roots = roots_of(W, G)
    comps = classify_root_system(roots, G)
    wroot = [r for c in comps for r in c.simple_roots]
    if wroot:
        wr_coords = _int_coords(wroot, W)
        closure = saturate(wr_coords, len(W))
        torsion = snf(_int_coords_int(wr_coords, closure)).invariants
        closure_vecs = tuple(tuple(sum((c[i] * W[i][j] for i in range(len(W))), Fraction(0))
                                   for j in range(dim)) for c in closure)
    else:
        torsion, closure_vecs = (), ()
    return Frame(e, tuple(W), tuple(N), tuple(comps), closure_vecs, tuple(wn), tuple(torsion),
                 det(gram_of(N, G)), det(gram_of(W, G)), tuple(roots))


def _int_coords_int(vectors, basis) -> list[list[int]]:
    return _int_coords(vectors, [[Fraction(x) for x in b] for b in basis])


def torsion_group(frame: Frame) -> tuple[int, ...]:
    return frame.torsion


def mw_gram(frame: Frame, coset_reps: Sequence[Sequence]) -> RatMatrix:
    """Positive height Gram of the classes of explicit W-vectors modulo closure(W_root)."""
    for v in coset_reps:
        if not frame.contains(v):
            raise ValueError("representative is not in W")
    g = RatMatrix([[frame.height_pairing(u, v) for v in coset_reps] for u in coset_reps])
    if coset_reps and det(g) == 0:
        raise ValueError("representatives are dependent modulo the root closure")
    return g


# the embeddings used for the surface -------------------------------------

I1 = (5, 4, 3, 2, 1)
I2 = (6, 4, 3, 2, 1)


def d64_embedding(which: str = "i1") -> Embedding:
    from .niemeier import make_niemeier_d64
    L = make_niemeier_d64()
    if which == "i1":
        return Embedding.from_roots(L, [(0, k) for k in I1], (1, 6), "(i1(A5), d6, 0, 0)")
    if which == "i2":
        return Embedding.from_roots(L, [(0, k) for k in I2], (1, 5), "(i2(A5), d5, 0, 0)")
    raise ValueError(f"unknown embedding {which!r}")


def a92d6_embedding(which: str = "i1", a1_component: int = 0, a1_node: int = 1) -> Embedding:
    from .niemeier import make_niemeier_a92d6
    L = make_niemeier_a92d6()
    nodes = {"i1": I1, "i2": I2}[which]
    name = f"(a{a1_node} in A9({a1_component + 1}), {which}(A5) in D6)"
    return Embedding.from_roots(L, [(2, k) for k in nodes], (a1_component, a1_node), name)


FRAME_NAMES = ("d64-i1", "d64-i2", "a92d6-i1", "a92d6-i2")


@lru_cache(maxsize=None)
def named_frame(name: str) -> Frame:
    """The frames of the surface, computed once per process."""
    family, which = name.rsplit("-", 1)
    if family == "d64":
        return compute_frame(d64_embedding(which))
    if family == "a92d6":
        return compute_frame(a92d6_embedding(which))
    raise ValueError(f"unknown frame {name!r}; expected one of {FRAME_NAMES}")
