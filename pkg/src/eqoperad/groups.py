"""Finite groups given by multiplication tables, with subgroup lattices,
conjugacy, normalizers, Weyl groups and homomorphism enumeration."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import cache, cached_property
from importlib import resources

FIXTURE_NAMES = ("trivial", "C2", "C3", "C4", "C2xC2", "C6", "S3", "Q8")


class FiniteGroup:
    """A group on the elements 0..order-1 with ``mult[a][b] = a*b``."""

    def __init__(self, name: str, mult, identity: int = 0):
        self.name = name
        self.mult = tuple(tuple(int(c) for c in row) for row in mult)
        self.order = len(self.mult)
        self.identity = int(identity)
        if self.order == 0 or any(len(r) != self.order for r in self.mult):
            raise ValueError(f"{name}: multiplication table must be square and nonempty")
        inv = [None] * self.order
        for a in range(self.order):
            for b in range(self.order):
                if self.mult[a][b] == self.identity and self.mult[b][a] == self.identity:
                    inv[a] = b
                    break
        if any(i is None for i in inv):
            raise ValueError(f"{name}: some element has no two-sided inverse")
        self.inverse = tuple(inv)

    def __repr__(self):
        return f"FiniteGroup({self.name!r}, order={self.order})"

    @property
    def elements(self) -> range:
        return range(self.order)

    def mul(self, a: int, b: int) -> int:
        return self.mult[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def conj(self, g: int, h: int) -> int:
        """g h g^-1"""
        return self.mult[self.mult[g][h]][self.inverse[g]]

    def validate(self) -> None:
        n, m, e = self.order, self.mult, self.identity
        for a in range(n):
            if m[e][a] != a or m[a][e] != a:
                raise ValueError(f"{self.name}: identity {e} is not two-sided")
            if sorted(m[a]) != list(range(n)):
                raise ValueError(f"{self.name}: row {a} is not a permutation")
        for a, b, c in itertools.product(range(n), repeat=3):
            if m[m[a][b]][c] != m[a][m[b][c]]:
                raise ValueError(f"{self.name}: not associative at {(a, b, c)}")

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = self.mult[x][a]
            k += 1
        return k

    def is_abelian(self) -> bool:
        return all(self.mult[a][b] == self.mult[b][a] for a in self.elements for b in self.elements)

    def to_json(self) -> dict:
        return {"name": self.name, "order": self.order, "identity": self.identity,
                "mult": [list(r) for r in self.mult]}

    @classmethod
    def from_json(cls, data: dict) -> "FiniteGroup":
        for key in ("name", "order", "identity", "mult"):
            if key not in data:
                raise ValueError(f"group fixture missing key {key!r}")
        g = cls(data["name"], data["mult"], data["identity"])
        if g.order != data["order"]:
            raise ValueError(f"{g.name}: order field disagrees with table")
        g.validate()
        return g

    @cached_property
    def generators(self) -> tuple[int, ...]:
        """A small generating set, chosen greedily by element index."""
        gens: list[int] = []
        span = {self.identity}
        for a in self.elements:
            if a not in span:
                gens.append(a)
                span = set(generated_elements(self, gens))
        return tuple(gens)


@cache
def load_group(name: str) -> FiniteGroup:
    if name not in FIXTURE_NAMES:
        raise KeyError(f"unknown group {name!r}; known: {', '.join(FIXTURE_NAMES)}")
    text = resources.files("eqoperad").joinpath("data", "groups", f"{name}.json").read_text()
    return FiniteGroup.from_json(json.loads(text))


def all_fixture_groups() -> list[FiniteGroup]:
    return [load_group(n) for n in FIXTURE_NAMES]


def generated_elements(G: FiniteGroup, gens) -> tuple[int, ...]:
    seen = {G.identity}
    frontier = [G.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = G.mult[x][g]
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return tuple(sorted(seen))


@dataclass(frozen=True)
class Subgroup:
    parent: FiniteGroup
    elements: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, a: int) -> bool:
        return a in self._set

    @cached_property
    def _set(self) -> frozenset:
        return frozenset(self.elements)

    def __le__(self, other: "Subgroup") -> bool:
        return self._set <= other._set

    def conjugate(self, g: int) -> "Subgroup":
        G = self.parent
        return Subgroup(G, tuple(sorted(G.conj(g, h) for h in self.elements)))

    def is_valid(self) -> bool:
        G = self.parent
        s = self._set
        return (G.identity in s and all(G.mult[a][b] in s for a in s for b in s)
                and all(G.inverse[a] in s for a in s) and G.order % len(s) == 0)

    def label(self) -> str:
        return lattice(self.parent).label(self)

    @cached_property
    def as_group(self) -> FiniteGroup:
        """The subgroup as a standalone group on 0..|H|-1 (in sorted element order)."""
        idx = {a: i for i, a in enumerate(self.elements)}
        G = self.parent
        mult = [[idx[G.mult[a][b]] for b in self.elements] for a in self.elements]
        return FiniteGroup(f"{G.name}[{','.join(map(str, self.elements))}]", mult, idx[G.identity])

    def embed(self, i: int) -> int:
        """Element of the parent corresponding to index i of ``as_group``."""
        return self.elements[i]

    def index_of(self, a: int) -> int:
        return self.elements.index(a)


class SubgroupLattice:
    """All subgroups of G, sorted by (order, elements), with conjugacy classes.

    Class ids are numbered by (order, representative) where the
    representative of a class is its lexicographically least element list.
    """

    def __init__(self, G: FiniteGroup):
        self.group = G
        subs = {tuple(sorted(G.elements))}
        subs.add((G.identity,))
        # every subgroup is a join of cyclic subgroups; saturate under joins
        cyclic = {generated_elements(G, [a]) for a in G.elements}
        frontier = set(cyclic)
        subs |= cyclic
        while frontier:
            nxt = set()
            for s in frontier:
                for c in cyclic:
                    j = generated_elements(G, set(s) | set(c))
                    if j not in subs:
                        subs.add(j)
                        nxt.add(j)
            frontier = nxt
        ordered = sorted(subs, key=lambda s: (len(s), s))
        self.subgroups = [Subgroup(G, s) for s in ordered]
        self.index = {s.elements: i for i, s in enumerate(self.subgroups)}
        classes: list[list[int]] = []
        seen: set[int] = set()
        for i, s in enumerate(self.subgroups):
            if i in seen:
                continue
            orbit = sorted({self.index[s.conjugate(g).elements] for g in G.elements})
            seen.update(orbit)
            classes.append(orbit)
        classes.sort(key=lambda c: (len(self.subgroups[c[0]].elements), self.subgroups[c[0]].elements))
        self.classes = classes
        self.class_of = [0] * len(self.subgroups)
        for cid, members in enumerate(classes):
            for i in members:
                self.class_of[i] = cid
        self.representatives = [self.subgroups[c[0]] for c in classes]

    def __len__(self):
        return len(self.subgroups)

    def __iter__(self):
        return iter(self.subgroups)

    def find(self, elements) -> int:
        return self.index[tuple(sorted(elements))]

    def class_id(self, H: Subgroup | tuple) -> int:
        els = H.elements if isinstance(H, Subgroup) else tuple(sorted(H))
        return self.class_of[self.index[els]]

    def representative(self, H: Subgroup) -> Subgroup:
        return self.representatives[self.class_id(H)]

    def contains(self, i: int, j: int) -> bool:
        """Subgroup i is contained in subgroup j."""
        return self.subgroups[i] <= self.subgroups[j]

    def label(self, H: Subgroup) -> str:
        G = self.group
        if H.order == 1:
            return "e"
        if H.order == G.order:
            return G.name
        cid = self.class_id(H)
        same_order = [c for c in range(len(self.classes)) if self.representatives[c].order == H.order]
        name = f"H{H.order}"
        if len(same_order) > 1:
            name += "abcdefghijklmnopqrstuvwxyz"[same_order.index(cid)]
        members = self.classes[cid]
        if len(members) > 1:
            name += f"_{members.index(self.index[H.elements])}"
        return name


@cache
def lattice(G: FiniteGroup) -> SubgroupLattice:
    return SubgroupLattice(G)


def subgroup_lattice(G: FiniteGroup) -> list[tuple[Subgroup, int]]:
    L = lattice(G)
    return [(s, L.class_of[i]) for i, s in enumerate(L.subgroups)]


def whole(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, tuple(G.elements))


def trivial_subgroup(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, (G.identity,))


def normalizer(G: FiniteGroup, H: Subgroup) -> Subgroup:
    return Subgroup(G, tuple(g for g in G.elements if H.conjugate(g).elements == H.elements))


def left_cosets(G: FiniteGroup, H: Subgroup) -> list[tuple[int, ...]]:
    """Left cosets gH as sorted tuples, ordered by their least element."""
    seen: set[int] = set()
    out = []
    for g in G.elements:
        if g in seen:
            continue
        c = tuple(sorted(G.mult[g][h] for h in H.elements))
        seen.update(c)
        out.append(c)
    return out


def weyl_group(G: FiniteGroup, H: Subgroup) -> FiniteGroup:
    """N_G(H)/H, elements indexed by cosets ordered by least element."""
    N = normalizer(G, H)
    cosets = [c for c in left_cosets(G, H) if c[0] in N]
    where = {}
    for i, c in enumerate(cosets):
        for a in c:
            where[a] = i
    mult = [[where[G.mult[a[0]][b[0]]] for b in cosets] for a in cosets]
    return FiniteGroup(f"W({H.elements})", mult, where[G.identity])


def symmetric_group(n: int) -> FiniteGroup:
    """Sigma_n on permutations of range(n) in lexicographic order; (pq)(i) = p(q(i))."""
    perms = list(itertools.permutations(range(n)))
    idx = {p: i for i, p in enumerate(perms)}
    mult = [[idx[tuple(p[q[i]] for i in range(n))] for q in perms] for p in perms]
    g = FiniteGroup(f"S{n}" if n != 3 else "Sigma3", mult, 0)
    g.perms = perms
    return g


def cyclic_group(n: int, name: str | None = None) -> FiniteGroup:
    return FiniteGroup(name or f"C{n}", [[(a + b) % n for b in range(n)] for a in range(n)], 0)


@dataclass(frozen=True)
class GroupHom:
    source: FiniteGroup
    target: FiniteGroup
    image: tuple[int, ...]

    def __call__(self, a: int) -> int:
        return self.image[a]

    def is_valid(self) -> bool:
        S, T = self.source, self.target
        if self.image[S.identity] != T.identity:
            return False
        return all(self.image[S.mult[a][b]] == T.mult[self.image[a]][self.image[b]]
                   for a in S.elements for b in S.elements)

    def conjugated(self, k: int) -> "GroupHom":
        """k phi(-) k^-1"""
        return GroupHom(self.source, self.target, tuple(self.target.conj(k, x) for x in self.image))


def _extend(H: FiniteGroup, K: FiniteGroup, gens, imgs) -> tuple[int, ...] | None:
    """Extend an assignment on generators to a hom, or None if inconsistent."""
    img = {H.identity: K.identity}
    frontier = [H.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g, t in zip(gens, imgs):
                y = H.mult[x][g]
                v = K.mult[img[x]][t]
                if y in img:
                    if img[y] != v:
                        return None
                else:
                    img[y] = v
                    nxt.append(y)
        frontier = nxt
    image = tuple(img[a] for a in H.elements)
    if not GroupHom(H, K, image).is_valid():
        return None
    return image


def enumerate_homs(H: FiniteGroup, K: FiniteGroup, up_to_conjugacy: bool = False) -> list[GroupHom]:
    gens = H.generators
    candidates = [[t for t in K.elements if H.element_order(g) % K.element_order(t) == 0] for g in gens]
    images = set()
    for imgs in itertools.product(*candidates):
        image = _extend(H, K, gens, imgs)
        if image is not None:
            images.add(image)
    if up_to_conjugacy:
        reps = set()
        for image in images:
            reps.add(min(tuple(K.conj(k, x) for x in image) for k in K.elements))
        images = reps
    return [GroupHom(H, K, im) for im in sorted(images)]
