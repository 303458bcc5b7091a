"""Niemeier lattices as root lattice plus glue code, and their glue automorphisms.

Global coordinates are the concatenated simple-root coordinates of the
components (24 of them).  A glue vector is a tuple of discriminant labels,
one per component; its representative is the concatenation of the standard
component representatives.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import permutations
from typing import Iterable, Sequence

from .exact import RatMatrix, bilinear, hnf_basis, rational_lattice_basis
from .rootlat import RootLattice, build

GlueVector = tuple[int, ...]


def _perm_parity(p: Sequence[int]) -> int:
    p, sign = list(p), 0
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            sign ^= 1
    return sign


@dataclass(frozen=True)
class NiemeierLattice:
    name: str
    components: tuple[RootLattice, ...]
    glue_code: tuple[GlueVector, ...]

    @classmethod
    def from_generators(cls, name: str, components: Sequence[RootLattice],
                        generators: Iterable[Sequence[int]]) -> "NiemeierLattice":
        comps = tuple(components)
        code = close_code(comps, [tuple(g) for g in generators])
        return cls(name, comps, code)

    # -- coordinates -------------------------------------------------------
    @property
    def dim(self) -> int:
        return sum(c.rank for c in self.components)

    @cached_property
    def offsets(self) -> tuple[int, ...]:
        out, s = [], 0
        for c in self.components:
            out.append(s)
            s += c.rank
        return tuple(out)

    def slice(self, i: int) -> slice:
        return slice(self.offsets[i], self.offsets[i] + self.components[i].rank)

    def component_of_index(self, k: int) -> int:
        for i in range(len(self.components)):
            if self.offsets[i] <= k < self.offsets[i] + self.components[i].rank:
                return i
        raise IndexError(k)

    def embed(self, i: int, local: Sequence) -> tuple[Fraction, ...]:
        v = [Fraction(0)] * self.dim
        v[self.slice(i)] = [Fraction(x) for x in local]
        return tuple(v)

    def root(self, i: int, node: int) -> tuple[int, ...]:
        """Global integer vector of simple root ``node`` (1-based) of component i."""
        v = [0] * self.dim
        v[self.offsets[i] + node - 1] = 1
        return tuple(v)

    def local(self, i: int, v: Sequence) -> tuple[Fraction, ...]:
        return tuple(Fraction(x) for x in v[self.slice(i)])

    @cached_property
    def gram(self) -> RatMatrix:
        n = self.dim
        g = [[0] * n for _ in range(n)]
        for i, c in enumerate(self.components):
            o = self.offsets[i]
            for a in range(c.rank):
                for b in range(c.rank):
                    g[o + a][o + b] = c.gram[a, b]
        return RatMatrix(g)

    def pair(self, u: Sequence, v: Sequence) -> Fraction:
        return bilinear(u, v, self.gram)

    @property
    def root_det(self) -> int:
        d = 1
        for c in self.components:
            d *= c.disc_order
        return d

    # -- glue --------------------------------------------------------------
    def representative(self, labels: Sequence[int]) -> tuple[Fraction, ...]:
        v: list[Fraction] = []
        for c, lab in zip(self.components, labels):
            v.extend(c.glue_representative(lab))
        return tuple(v)

    def labels_of(self, v: Sequence) -> GlueVector:
        """Glue labels of a vector of L (or of L_root^*)."""
        return tuple(c.class_of(self.local(i, v)) for i, c in enumerate(self.components))

    def add(self, a: Sequence[int], b: Sequence[int]) -> GlueVector:
        return tuple(c.add_labels(x, y) for c, x, y in zip(self.components, a, b))

    def scale(self, k: int, a: Sequence[int]) -> GlueVector:
        return tuple(c.scale_label(k, x) for c, x in zip(self.components, a))

    def order(self, a: Sequence[int]) -> int:
        k = 1
        while any(self.scale(k, a)):
            k += 1
        return k

    @cached_property
    def code_set(self) -> frozenset[GlueVector]:
        return frozenset(self.glue_code)

    @cached_property
    def basis(self) -> tuple[tuple[Fraction, ...], ...]:
        """A Z-basis of L in global coordinates (Hermite form of roots plus glue)."""
        vecs = [self.root(i, k + 1) for i, c in enumerate(self.components) for k in range(c.rank)]
        vecs += [self.representative(g) for g in self.glue_code if any(g)]
        return tuple(rational_lattice_basis(vecs, self.dim))

    def contains(self, v: Sequence) -> bool:
        try:
            return self.labels_of(v) in self.code_set
        except ValueError:
            return False

    def validate(self) -> list[str]:
        """Consistency problems (empty list when L is an even unimodular lattice)."""
        problems = []
        if self.dim != 24:
            problems.append(f"rank {self.dim} != 24")
        zero = tuple(0 for _ in self.components)
        if zero not in self.code_set:
            problems.append("code lacks zero")
        for a in self.glue_code:
            for b in self.glue_code:
                if self.add(a, b) not in self.code_set:
                    problems.append(f"code not closed: {a}+{b}")
                    return problems
        reps = [self.representative(g) for g in self.glue_code]
        for i, u in enumerate(reps):
            if self.pair(u, u).denominator != 1 or self.pair(u, u) % 2:
                problems.append(f"odd or non-integral norm for {self.glue_code[i]}")
            for w in reps[i + 1:]:
                if self.pair(u, w).denominator != 1:
                    problems.append("non-integral pairing inside the code")
                    return problems
        if len(self.glue_code) ** 2 != self.root_det:
            problems.append(f"|code|^2 = {len(self.glue_code) ** 2} != det = {self.root_det}")
        return problems


def close_code(components: Sequence[RootLattice], generators: list[GlueVector]) -> tuple[GlueVector, ...]:
    zero = tuple(0 for _ in components)
    code = {zero}
    frontier = [zero]
    while frontier:
        new = []
        for a in frontier:
            for g in generators:
                s = tuple(c.add_labels(x, y) for c, x, y in zip(components, a, g))
                if s not in code:
                    code.add(s)
                    new.append(s)
        frontier = new
    return tuple(sorted(code))


def make_niemeier_d64() -> NiemeierLattice:
    comps = tuple(build("D", 6) for _ in range(4))
    gens = [p for p in permutations(range(4)) if _perm_parity(p) == 0]
    return NiemeierLattice.from_generators("N(D6^4)", comps, gens)


A92D6_GENERATORS = ((2, 4, 0), (5, 0, 1), (0, 5, 3))


def make_niemeier_a92d6() -> NiemeierLattice:
    comps = (build("A", 9), build("A", 9), build("D", 6))
    return NiemeierLattice.from_generators("N(A9^2D6)", comps, A92D6_GENERATORS)


# --------------------------------------------------------------------------
# automorphisms

@dataclass(frozen=True)
class GlueAutomorphism:
    """Diagram flips followed by a permutation of components.

    Component i is first acted on by the node permutation ``flips[i]`` and then
    moved to position ``permutation[i]``.
    """

    permutation: tuple[int, ...]
    flips: tuple[tuple[int, ...], ...]
    name: str = ""

    @classmethod
    def identity(cls, lattice: NiemeierLattice) -> "GlueAutomorphism":
        k = len(lattice.components)
        return cls(tuple(range(k)), tuple(tuple(range(c.rank)) for c in lattice.components), "id")

    @classmethod
    def from_parts(cls, lattice: NiemeierLattice, permutation: Sequence[int] | None = None,
                   flips: dict[int, str] | None = None, name: str = "") -> "GlueAutomorphism":
        k = len(lattice.components)
        perm = tuple(permutation) if permutation is not None else tuple(range(k))
        fl = []
        for i, c in enumerate(lattice.components):
            key = (flips or {}).get(i, "id")
            fl.append(c.diagram_automorphisms()[key])
        return cls(perm, tuple(fl), name)

    @property
    def key(self) -> tuple:
        return (self.permutation, self.flips)

    def apply_labels(self, lattice: NiemeierLattice, v: Sequence[int]) -> GlueVector:
        if len(v) != len(lattice.components) or len(self.permutation) != len(v):
            raise ValueError("shape mismatch")
        out = [0] * len(v)
        for i, c in enumerate(lattice.components):
            out[self.permutation[i]] = c.flip_label(self.flips[i], v[i])
        return tuple(out)

    def apply_vector(self, lattice: NiemeierLattice, v: Sequence) -> tuple[Fraction, ...]:
        out = [Fraction(0)] * lattice.dim
        for i, c in enumerate(lattice.components):
            o_src, o_dst = lattice.offsets[i], lattice.offsets[self.permutation[i]]
            for k in range(c.rank):
                out[o_dst + self.flips[i][k]] = Fraction(v[o_src + k])
        return tuple(out)

    def is_well_formed(self, lattice: NiemeierLattice) -> bool:
        comps = lattice.components
        if sorted(self.permutation) != list(range(len(comps))):
            return False
        for i, c in enumerate(comps):
            d = comps[self.permutation[i]]
            if (c.family, c.rank) != (d.family, d.rank) or not c.is_diagram_automorphism(self.flips[i]):
                return False
        return True


def compose(a: GlueAutomorphism, b: GlueAutomorphism, name: str = "") -> GlueAutomorphism:
    """a after b."""
    perm = tuple(a.permutation[b.permutation[i]] for i in range(len(b.permutation)))
    flips = tuple(tuple(a.flips[b.permutation[i]][b.flips[i][k]] for k in range(len(b.flips[i])))
                  for i in range(len(b.permutation)))
    return GlueAutomorphism(perm, flips, name or f"{a.name}{b.name}")


def apply_glue_aut(aut: GlueAutomorphism, v: Sequence[int], lattice: NiemeierLattice) -> GlueVector:
    return aut.apply_labels(lattice, v)


def is_glue_automorphism(aut: GlueAutomorphism, lattice: NiemeierLattice) -> bool:
    if not aut.is_well_formed(lattice):
        return False
    return {aut.apply_labels(lattice, v) for v in lattice.glue_code} == lattice.code_set


def generated_group(lattice: NiemeierLattice, gens: Sequence[GlueAutomorphism],
                    limit: int = 100000) -> list[GlueAutomorphism]:
    ident = GlueAutomorphism.identity(lattice)
    seen = {ident.key: ident}
    frontier = [ident]
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = compose(g, x)
                if y.key not in seen:
                    seen[y.key] = y
                    new.append(y)
                    if len(seen) > limit:
                        raise RuntimeError("group too large")
        frontier = new
    return [seen[k] for k in sorted(seen)]


def _span(vectors: Sequence[Sequence], dim: int) -> tuple:
    ints = [[int(x) for x in v] for v in vectors]
    return tuple(hnf_basis(ints, dim))


def embedding_orbit_equivalent(e1, e2, lattice: NiemeierLattice,
                               auts: Sequence[GlueAutomorphism]) -> bool:
    """Does some element of <auts> carry the image sublattice of e1 onto that of e2?"""
    v1 = getattr(e1, "images", e1)
    v2 = getattr(e2, "images", e2)
    target = _span(v2, lattice.dim)
    for g in generated_group(lattice, list(auts)):
        if not is_glue_automorphism(g, lattice):
            continue
        moved = [g.apply_vector(lattice, v) for v in v1]
        if _span(moved, lattice.dim) == target:
            return True
    return False


# named automorphisms used for the two lattices -----------------------------

def d64_g(lattice: NiemeierLattice) -> GlueAutomorphism:
    return GlueAutomorphism.from_parts(lattice, flips={i: "fork" for i in range(4)}, name="g")


def transposition(lattice: NiemeierLattice, i: int, j: int) -> GlueAutomorphism:
    p = list(range(len(lattice.components)))
    p[i], p[j] = j, i
    return GlueAutomorphism.from_parts(lattice, permutation=p, name=f"t{i}{j}")


def permutation_aut(lattice: NiemeierLattice, perm: Sequence[int]) -> GlueAutomorphism:
    return GlueAutomorphism.from_parts(lattice, permutation=perm, name="s" + "".join(map(str, perm)))


def s4_action(lattice: NiemeierLattice, perm: Sequence[int]) -> GlueAutomorphism:
    """sigma composed with g^{e(sigma)} on N(D6^4)."""
    s = permutation_aut(lattice, perm)
    return compose(s, d64_g(lattice)) if _perm_parity(perm) else s


def a92d6_named(lattice: NiemeierLattice) -> dict[str, GlueAutomorphism]:
    gamma1 = GlueAutomorphism.from_parts(lattice, flips={0: "reverse"}, name="gamma1")
    gamma2 = GlueAutomorphism.from_parts(lattice, flips={1: "reverse"}, name="gamma2")
    g = GlueAutomorphism.from_parts(lattice, flips={2: "fork"}, name="g")
    h = GlueAutomorphism.from_parts(lattice, permutation=(1, 0, 2), name="h")
    gamma = compose(gamma1, gamma2, "gamma")
    h1 = compose(gamma1, g, "h1")
    h2 = compose(gamma2, g, "h2")
    return {"gamma1": gamma1, "gamma2": gamma2, "g": g, "h": h, "gamma": gamma,
            "h1": h1, "h2": h2, "h1h": compose(h1, h, "h1h"), "h2h": compose(h2, h, "h2h")}


# reports used by the command line and the acceptance suite -----------------

def d64_automorphism_report(lattice: NiemeierLattice | None = None) -> dict:
    """tau o g for every transposition tau: involution, glue code preserved."""
    from .frame import d64_embedding
    L = lattice or make_niemeier_d64()
    g = d64_g(L)
    ident = GlueAutomorphism.identity(L).key
    rows = []
    k = len(L.components)
    for i in range(k):
        for j in range(i + 1, k):
            tg = compose(transposition(L, i, j), g, f"t{i + 1}{j + 1}g")
            rows.append({"name": tg.name, "involution": compose(tg, tg).key == ident,
                         "preserves_code": is_glue_automorphism(tg, L)})
    swap = compose(transposition(L, k - 2, k - 1), g)
    orbit = embedding_orbit_equivalent(d64_embedding("i1"), d64_embedding("i2"), L, [swap])
    ok = all(r["involution"] and r["preserves_code"] for r in rows) and orbit
    return {"lattice": L.name, "code_size": len(L.glue_code), "tau_g": rows,
            "i1_i2_identified": orbit, "ok": ok}


def a92d6_automorphism_report(lattice: NiemeierLattice | None = None) -> dict:
    """gamma, h1h, h2h preserve the code and pair up the embeddings of A5 + A1."""
    from .frame import a92d6_embedding
    L = lattice or make_niemeier_a92d6()
    named = a92d6_named(L)
    auts = {k: is_glue_automorphism(named[k], L) for k in ("gamma", "h1h", "h2h", "h", "g")}
    pairs = []
    # (aut, (which, A9 copy, node), (which, A9 copy, node)) with 0-based copies
    for aut, a, b in (("h2h", ("i1", 0, 1), ("i2", 1, 9)), ("h1h", ("i1", 1, 1), ("i2", 0, 9))):
        same = embedding_orbit_equivalent(a92d6_embedding(*a), a92d6_embedding(*b), L, [named[aut]])
        pairs.append({"aut": aut, "from": _emb_name(a), "to": _emb_name(b), "identified": same})
    ok = auts["gamma"] and auts["h1h"] and auts["h2h"] and all(p["identified"] for p in pairs)
    return {"lattice": L.name, "code_size": len(L.glue_code), "preserves_code": auts,
            "pairings": pairs, "ok": ok}


def _emb_name(e: tuple[str, int, int]) -> str:
    which, comp, node = e
    return f"a{node} in A9({comp + 1}), {which}(A5) in D6"
