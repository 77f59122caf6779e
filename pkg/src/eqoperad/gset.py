"""Finite G-sets and equivariant maps.

A G-set on points 0..n-1 is stored as its action table ``action[g][x]``.
Canonical forms put a G-set (optionally equipped with a map to a fixed
G-set T) into a standard shape: a coproduct of coset orbits G/K, sorted by
(image of basepoint in T, K), with K the point stabilizer chosen to make
that key least.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cache

from .groups import FiniteGroup, Subgroup, lattice, left_cosets


class GSet:
    __slots__ = ("group", "size", "action", "_hash", "_orbits")

    def __init__(self, group: FiniteGroup, action):
        self.group = group
        self.action = tuple(tuple(row) for row in action)
        if len(self.action) != group.order:
            raise ValueError("action table needs one row per group element")
        self.size = len(self.action[0]) if self.action else 0
        self._hash = None
        self._orbits = None

    @classmethod
    def trivial(cls, G: FiniteGroup, n: int) -> "GSet":
        return cls(G, [tuple(range(n))] * G.order)

    @classmethod
    def empty(cls, G: FiniteGroup) -> "GSet":
        return cls.trivial(G, 0)

    @classmethod
    def point(cls, G: FiniteGroup) -> "GSet":
        return cls.trivial(G, 1)

    def __repr__(self):
        return f"GSet({self.group.name}, size={self.size}, types={orbit_types(self)})"

    def __eq__(self, other):
        return (isinstance(other, GSet) and self.group is other.group
                and self.action == other.action)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((id(self.group), self.action))
        return self._hash

    def __len__(self):
        return self.size

    def act(self, g: int, x: int) -> int:
        return self.action[g][x]

    def validate(self) -> None:
        G = self.group
        for row in self.action:
            if sorted(row) != list(range(self.size)):
                raise ValueError("each group element must act by a permutation")
        if self.action[G.identity] != tuple(range(self.size)):
            raise ValueError("identity must act trivially")
        for g in G.generators:
            for h in G.elements:
                gh = G.mult[g][h]
                for x in range(self.size):
                    if self.action[gh][x] != self.action[g][self.action[h][x]]:
                        raise ValueError(f"action is not a homomorphism at {(g, h, x)}")

    def orbits(self) -> list[tuple[int, ...]]:
        """Orbits as sorted point tuples, ordered by least point."""
        if self._orbits is None:
            seen = [False] * self.size
            out = []
            for x in range(self.size):
                if not seen[x]:
                    orb = sorted({row[x] for row in self.action})
                    for y in orb:
                        seen[y] = True
                    out.append(tuple(orb))
            self._orbits = out
        return self._orbits

    def orbit_of(self, x: int) -> tuple[int, ...]:
        for orb in self.orbits():
            if x in orb:
                return orb
        raise IndexError(x)

    def stabilizer(self, x: int) -> tuple[int, ...]:
        return tuple(g for g in self.group.elements if self.action[g][x] == x)

    def is_transitive(self) -> bool:
        return len(self.orbits()) == 1

    def fixed_points(self, H) -> list[int]:
        els = H.elements if isinstance(H, Subgroup) else H
        return [x for x in range(self.size) if all(self.action[h][x] == x for h in els)]

    def to_json(self) -> dict:
        return {"group": self.group.name, "size": self.size, "action": [list(r) for r in self.action]}


class GMap:
    __slots__ = ("source", "target", "map")

    def __init__(self, source: GSet, target: GSet, mapping):
        self.source = source
        self.target = target
        self.map = tuple(mapping)
        if len(self.map) != source.size:
            raise ValueError("map must send every source point somewhere")

    def __repr__(self):
        return f"GMap({self.map})"

    def __eq__(self, other):
        return (isinstance(other, GMap) and self.map == other.map
                and self.source == other.source and self.target == other.target)

    def __hash__(self):
        return hash((self.source, self.target, self.map))

    def __call__(self, x: int) -> int:
        return self.map[x]

    def is_equivariant(self) -> bool:
        s, t = self.source, self.target
        if any(not 0 <= y < t.size for y in self.map):
            return False
        return all(self.map[s.action[g][x]] == t.action[g][self.map[x]]
                   for g in s.group.elements for x in range(s.size))

    def validate(self) -> None:
        if self.source.group is not self.target.group or not self.is_equivariant():
            raise ValueError("map is not equivariant")

    def compose(self, first: "GMap") -> "GMap":
        """self after first"""
        return GMap(first.source, self.target, [self.map[y] for y in first.map])

    def is_injective(self) -> bool:
        return len(set(self.map)) == len(self.map)

    def is_iso(self) -> bool:
        return self.is_injective() and len(self.map) == self.target.size

    def inverse(self) -> "GMap":
        inv = [0] * self.target.size
        for x, y in enumerate(self.map):
            inv[y] = x
        return GMap(self.target, self.source, inv)

    def to_json(self) -> dict:
        return {"source": self.source.to_json(), "target": self.target.to_json(), "map": list(self.map)}


def identity_map(X: GSet) -> GMap:
    return GMap(X, X, range(X.size))


# -- coset orbits ---------------------------------------------------------

@cache
def _coset_data(G: FiniteGroup, K: tuple[int, ...]):
    """(action table of G/K, coset index of each g, coset representatives)."""
    cosets = left_cosets(G, Subgroup(G, K))
    where = [0] * G.order
    for i, c in enumerate(cosets):
        for a in c:
            where[a] = i
    reps = tuple(c[0] for c in cosets)
    action = tuple(tuple(where[G.mult[g][r]] for r in reps) for g in G.elements)
    return action, tuple(where), reps


def orbit_gset(G: FiniteGroup, H: Subgroup | tuple) -> GSet:
    """G/H with cosets ordered by least element; the coset H itself is the basepoint."""
    K = H.elements if isinstance(H, Subgroup) else tuple(sorted(H))
    return GSet(G, _coset_data(G, K)[0])


def coset_index(G: FiniteGroup, H: Subgroup | tuple, g: int) -> int:
    K = H.elements if isinstance(H, Subgroup) else tuple(sorted(H))
    return _coset_data(G, K)[1][g]


def coset_reps(G: FiniteGroup, H: Subgroup | tuple) -> tuple[int, ...]:
    K = H.elements if isinstance(H, Subgroup) else tuple(sorted(H))
    return _coset_data(G, K)[2]


# -- orbits -------------------------------------------------------------

@dataclass(frozen=True)
class OrbitType:
    class_id: int
    multiplicity: int


@dataclass(frozen=True)
class Orbit:
    points: tuple[int, ...]
    gset: GSet
    stabilizer: Subgroup
    class_id: int

    @property
    def basepoint(self) -> int:
        return self.points[0]


def sub_gset(X: GSet, points) -> tuple[GSet, GMap]:
    """The sub-G-set on a union of orbits, relabelled in increasing order."""
    pts = sorted(points)
    idx = {p: i for i, p in enumerate(pts)}
    action = [[idx[X.action[g][p]] for p in pts] for g in X.group.elements]
    S = GSet(X.group, action)
    return S, GMap(S, X, pts)


def orbit_decomposition(X: GSet) -> list[Orbit]:
    L = lattice(X.group)
    out = []
    for orb in X.orbits():
        W, _ = sub_gset(X, orb)
        stab = Subgroup(X.group, X.stabilizer(orb[0]))
        out.append(Orbit(orb, W, stab, L.class_id(stab)))
    return out


def orbit_types(X: GSet) -> tuple[tuple[int, int], ...]:
    """Sorted (stabilizer class id, multiplicity) pairs."""
    L = lattice(X.group)
    counts: dict[int, int] = {}
    for orb in X.orbits():
        c = L.class_id(X.stabilizer(orb[0]))
        counts[c] = counts.get(c, 0) + 1
    return tuple(sorted(counts.items()))


# -- limits and colimits ------------------------------------------------

def coproduct(*parts: GSet) -> tuple[GSet, list[GMap]]:
    if not parts:
        raise ValueError("coproduct needs at least one summand (use GSet.empty)")
    G = parts[0].group
    offsets, off = [], 0
    for P in parts:
        offsets.append(off)
        off += P.size
    action = [[o + y for P, o in zip(parts, offsets) for y in P.action[g]] for g in G.elements]
    S = GSet(G, action) if off else GSet.empty(G)
    incs = [GMap(P, S, [o + y for y in range(P.size)]) for P, o in zip(parts, offsets)]
    return S, incs


def pullback(f: GMap, g: GMap) -> tuple[GSet, GMap, GMap]:
    """Carrier {(x, y): f(x) = g(y)} in row-major order with the diagonal action."""
    if f.target != g.target:
        raise ValueError("pullback needs a common target")
    X, Y = f.source, g.source
    pairs = [(x, y) for x in range(X.size) for y in range(Y.size) if f.map[x] == g.map[y]]
    idx = {p: i for i, p in enumerate(pairs)}
    G = X.group
    action = [[idx[(X.action[h][x], Y.action[h][y])] for x, y in pairs] for h in G.elements]
    P = GSet(G, action) if pairs else GSet.empty(G)
    return P, GMap(P, X, [p[0] for p in pairs]), GMap(P, Y, [p[1] for p in pairs])


def to_point(X: GSet) -> GMap:
    return GMap(X, GSet.point(X.group), [0] * X.size)


def product(X: GSet, Y: GSet) -> tuple[GSet, GMap, GMap]:
    return pullback(to_point(X), to_point(Y))


def fold(X: GSet, k: int) -> GMap:
    """The fold map k.X -> X (k = 0 gives the empty map)."""
    if k == 0:
        return GMap(GSet.empty(X.group), X, [])
    S, _ = coproduct(*([X] * k))
    return GMap(S, X, [y % X.size for y in range(S.size)]) if X.size else GMap(S, X, [])


def image_is_union_of_orbits(f: GMap) -> bool:
    img = set(f.map)
    return all(f.target.action[g][y] in img for y in img for g in f.target.group.elements)


def is_summand_inclusion(f: GMap) -> bool:
    return f.is_injective() and image_is_union_of_orbits(f)


# -- change of group ----------------------------------------------------

def restrict(H: Subgroup, X: GSet) -> GSet:
    """X viewed as an H-set (over ``H.as_group``)."""
    return GSet(H.as_group, [X.action[h] for h in H.elements])


def induce(H: Subgroup, Y: GSet) -> GSet:
    """G x_H Y; the point (i, y) sits at i*|Y| + y where i indexes the coset r_i H."""
    G = H.parent
    if Y.group is not H.as_group:
        raise ValueError("induce expects an H-set over H.as_group")
    reps = coset_reps(G, H)
    n = Y.size
    action = []
    for g in G.elements:
        row = [0] * (len(reps) * n)
        for i, r in enumerate(reps):
            gr = G.mult[g][r]
            j = coset_index(G, H, gr)
            h = G.mult[G.inv(reps[j])][gr]
            hl = H.index_of(h)
            for y in range(n):
                row[i * n + y] = j * n + Y.action[hl][y]
        action.append(row)
    return GSet(G, action) if n else GSet.empty(G)


def conjugate_hset(H: Subgroup, g: int, Y: GSet) -> tuple[Subgroup, GSet]:
    """Transport an H-set to a gHg^-1-set: c acts as g^-1 c g."""
    G = H.parent
    Hg = H.conjugate(g)
    gi = G.inv(g)
    action = [Y.action[H.index_of(G.mult[G.mult[gi][c]][g])] for c in Hg.elements]
    return Hg, GSet(Hg.as_group, action) if Y.size else GSet.empty(Hg.as_group)


# -- hom-sets and canonical forms ------------------------------------------

def equivariant_maps(X: GSet, Y: GSet, restrict_to=None) -> list[tuple[int, ...]]:
    """All equivariant maps X -> Y as tuples; ``restrict_to(x, y)`` filters point images."""
    G = X.group
    orbit_choices = []
    for orb in X.orbits():
        x0 = orb[0]
        stab = X.stabilizer(x0)
        targets = [y for y in range(Y.size) if all(Y.action[s][y] == y for s in stab)
                   and (restrict_to is None or restrict_to(x0, y))]
        orbit_choices.append((x0, targets))
    out = []
    for choice in itertools.product(*[t for _, t in orbit_choices]):
        m = [None] * X.size
        for (x0, _), y0 in zip(orbit_choices, choice):
            for g in G.elements:
                m[X.action[g][x0]] = Y.action[g][y0]
        out.append(tuple(m))
    return out


def hom_set(X: GSet, Y: GSet) -> list[GMap]:
    return [GMap(X, Y, m) for m in equivariant_maps(X, Y)]


def automorphisms(X: GSet) -> list[tuple[int, ...]]:
    return [m for m in equivariant_maps(X, X) if len(set(m)) == X.size]


@dataclass(frozen=True)
class Canonical:
    gset: GSet                 # canonical carrier
    over: tuple[int, ...]      # canonical map to T
    relabel: tuple[int, ...]   # iso from the input carrier to ``gset``
    key: tuple                 # complete invariant of (X -> T) up to iso over T


def canonical_over(X: GSet, phi, T: GSet | None = None) -> Canonical:
    """Canonical form of X equipped with phi: X -> T, up to isomorphism over T."""
    G = X.group
    phi = tuple(phi)
    if T is None:
        T = GSet.point(G)
    entries = []
    for orb in X.orbits():
        best = None
        for w in orb:
            k = (phi[w], X.stabilizer(w))
            if best is None or k < best[0]:
                best = (k, w)
        entries.append((best[0], best[1], orb))
    entries.sort(key=lambda e: e[0])
    relabel = [0] * X.size
    over: list[int] = []
    actions = [[] for _ in G.elements]
    off = 0
    for (t, K), w, orb in entries:
        act, where, reps = _coset_data(G, K)
        for g in G.elements:
            relabel[X.action[g][w]] = off + where[g]
            actions[g].extend(off + c for c in act[g])
        over.extend(T.action[r][t] for r in reps)
        off += len(reps)
    C = GSet(G, actions) if off else GSet.empty(G)
    key = tuple(e[0] for e in entries)
    return Canonical(C, tuple(over), tuple(relabel), key)


def canonical_form(X: GSet) -> Canonical:
    return canonical_over(X, [0] * X.size)


def iso_key(X: GSet) -> tuple:
    return canonical_form(X).key


def is_isomorphic_bruteforce(X: GSet, Y: GSet) -> bool:
    """Oracle: search all bijections for an equivariant one (small sets only)."""
    if X.size != Y.size:
        return False
    for perm in itertools.permutations(range(Y.size)):
        if all(perm[X.action[g][x]] == Y.action[g][perm[x]]
               for g in X.group.elements for x in range(X.size)):
            return True
    return False


def relabel_gset(X: GSet, perm) -> GSet:
    """The G-set with point x renamed perm[x]."""
    inv = [0] * X.size
    for x, p in enumerate(perm):
        inv[p] = x
    return GSet(X.group, [[perm[row[inv[p]]] for p in range(X.size)] for row in X.action])


def gsets_up_to_iso(G: FiniteGroup, max_size: int, min_size: int = 0) -> list[GSet]:
    """One canonical G-set per iso class with min_size <= size <= max_size."""
    L = lattice(G)
    reps = L.representatives
    sizes = [G.order // H.order for H in reps]
    out = []

    def rec(i, remaining, chosen):
        if i == len(reps):
            total = sum(sizes[j] * m for j, m in enumerate(chosen))
            if total >= min_size:
                parts = [orbit_gset(G, reps[j]) for j, m in enumerate(chosen) for _ in range(m)]
                X = coproduct(*parts)[0] if parts else GSet.empty(G)
                out.append(canonical_form(X).gset)
            return
        for m in range(remaining // sizes[i] + 1):
            rec(i + 1, remaining - m * sizes[i], chosen + [m])

    rec(0, max_size, [])
    out.sort(key=lambda X: (X.size, canonical_form(X).key))
    return out
