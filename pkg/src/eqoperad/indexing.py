"""Indexing systems for a finite group G.

An indexing system is stored as the set of subgroup pairs (K, H) with K <= H
for which the orbit map G/K -> G/H is admitted (a transfer system).  It is
reflexive, closed under conjugation, composition (transitivity) and base
change along orbit maps (restriction: (K, H) admitted and L <= H give
(L ∩ hKh^-1, L) admitted for h in H).

Three presentations are provided and compared: the pair relation, the
Blumberg-Hill family {I(H)} of admissible H-sets, and the subcategory
Ī of finite G-sets (maps whose orbitwise components are admitted).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable

from .groups import FiniteGroup, Subgroup, lattice
from .gset import (GMap, GSet, canonical_form, conjugate_hset, coproduct, gsets_up_to_iso,
                   induce, orbit_gset, relabel_gset, sub_gset)

Pair = tuple[int, int]      # (index of K, index of H) in the subgroup lattice


def _intersect(G: FiniteGroup, A: Subgroup, B: Subgroup) -> int:
    return lattice(G).find(set(A.elements) & set(B.elements))


def _conj_index(G: FiniteGroup, i: int, g: int) -> int:
    L = lattice(G)
    return L.index[L.subgroups[i].conjugate(g).elements]


@dataclass(frozen=True)
class IndexingSystem:
    group: FiniteGroup
    pairs: frozenset

    def __repr__(self):
        L = lattice(self.group)
        shown = ", ".join(f"{L.label(L.subgroups[k])}->{L.label(L.subgroups[h])}"
                          for k, h in self.proper_pairs())
        return f"IndexingSystem({self.group.name}: {{{shown}}})"

    def __contains__(self, pair) -> bool:
        return tuple(pair) in self.pairs

    def __le__(self, other: "IndexingSystem") -> bool:
        return self.pairs <= other.pairs

    def __lt__(self, other: "IndexingSystem") -> bool:
        return self.pairs < other.pairs

    def proper_pairs(self) -> list[Pair]:
        return sorted(p for p in self.pairs if p[0] != p[1])

    def sort_key(self):
        return (len(self.pairs), sorted(self.pairs))

    def admits(self, K: Subgroup | tuple, H: Subgroup | tuple) -> bool:
        L = lattice(self.group)
        k = L.find(K.elements if isinstance(K, Subgroup) else K)
        h = L.find(H.elements if isinstance(H, Subgroup) else H)
        return (k, h) in self.pairs

    def to_json(self) -> dict:
        L = lattice(self.group)
        return {"pairs": [[list(L.subgroups[k].elements), list(L.subgroups[h].elements)]
                          for k, h in sorted(self.pairs)]}


def all_pairs(G: FiniteGroup) -> list[Pair]:
    L = lattice(G)
    n = len(L.subgroups)
    return [(k, h) for h in range(n) for k in range(n) if L.contains(k, h)]


def reflexive_pairs(G: FiniteGroup) -> frozenset:
    return frozenset((i, i) for i in range(len(lattice(G).subgroups)))


def pair_classes(G: FiniteGroup) -> list[frozenset]:
    """Conjugacy classes of proper pairs K < H."""
    seen = set()
    out = []
    for k, h in all_pairs(G):
        if k == h or (k, h) in seen:
            continue
        cls = frozenset((_conj_index(G, k, g), _conj_index(G, h, g)) for g in G.elements)
        seen |= cls
        out.append(cls)
    return out


def minimal_system(G: FiniteGroup) -> IndexingSystem:
    return IndexingSystem(G, reflexive_pairs(G))


def full_system(G: FiniteGroup) -> IndexingSystem:
    return IndexingSystem(G, frozenset(all_pairs(G)))


def violation(G: FiniteGroup, pairs) -> str | None:
    """First failed closure rule, as a readable witness, or None."""
    L = lattice(G)
    S = set(pairs)
    lab = lambda i: L.label(L.subgroups[i])
    for k, h in S:
        if not L.contains(k, h):
            return f"not a subgroup pair: {lab(k)} is not contained in {lab(h)}"
    for i in range(len(L.subgroups)):
        if (i, i) not in S:
            return f"identity: missing {lab(i)}->{lab(i)}"
    for k, h in S:
        for g in G.elements:
            c = (_conj_index(G, k, g), _conj_index(G, h, g))
            if c not in S:
                return f"conjugation: {lab(k)}->{lab(h)} admitted but {lab(c[0])}->{lab(c[1])} not"
    for k, h in S:
        for h2, l in S:
            if h2 == h and (k, l) not in S:
                return f"composition: {lab(k)}->{lab(h)}->{lab(l)} admitted but {lab(k)}->{lab(l)} not"
    for k, h in S:
        K, H = L.subgroups[k], L.subgroups[h]
        for l, Lsub in enumerate(L.subgroups):
            if not Lsub <= H:
                continue
            for x in H.elements:
                r = _intersect(G, Lsub, K.conjugate(x))
                if (r, l) not in S:
                    return (f"base change: {lab(k)}->{lab(h)} admitted, restricting along "
                            f"{lab(l)} <= {lab(h)} needs {lab(r)}->{lab(l)}")
    return None


def is_indexing_system(G: FiniteGroup, pairs) -> tuple[bool, str | None]:
    w = violation(G, pairs)
    return w is None, w


def generate_closure(G: FiniteGroup, seed) -> IndexingSystem:
    """Least indexing system containing the seed pairs."""
    L = lattice(G)
    S = set(reflexive_pairs(G)) | {tuple(p) for p in seed}
    changed = True
    while changed:
        changed = False
        new = set()
        for k, h in S:
            for g in G.elements:
                new.add((_conj_index(G, k, g), _conj_index(G, h, g)))
            K, H = L.subgroups[k], L.subgroups[h]
            for l, Lsub in enumerate(L.subgroups):
                if Lsub <= H:
                    for x in H.elements:
                        new.add((_intersect(G, Lsub, K.conjugate(x)), l))
        for k, h in S:
            for h2, l in S:
                if h2 == h:
                    new.add((k, l))
        if not new <= S:
            S |= new
            changed = True
    return IndexingSystem(G, frozenset(S))


def enumerate_indexing_systems(G: FiniteGroup) -> list[IndexingSystem]:
    """All indexing systems, by breadth-first closure of single added pair classes."""
    classes = pair_classes(G)
    start = minimal_system(G)
    seen = {start.pairs: start}
    frontier = [start]
    while frontier:
        nxt = []
        for S in frontier:
            for cls in classes:
                if cls <= S.pairs:
                    continue
                T = generate_closure(G, S.pairs | cls)
                if T.pairs not in seen:
                    seen[T.pairs] = T
                    nxt.append(T)
        frontier = nxt
    return sorted(seen.values(), key=IndexingSystem.sort_key)


def enumerate_by_filter(G: FiniteGroup) -> list[IndexingSystem]:
    """Oracle: test every union of pair classes."""
    classes = pair_classes(G)
    refl = reflexive_pairs(G)
    out = []
    for r in range(len(classes) + 1):
        for combo in itertools.combinations(classes, r):
            S = refl.union(*combo)
            if violation(G, S) is None:
                out.append(IndexingSystem(G, S))
    return sorted(out, key=IndexingSystem.sort_key)


def hasse(systems: list[IndexingSystem]) -> list[tuple[int, int]]:
    """Covering relations (i, j) meaning systems[i] < systems[j] with nothing between."""
    out = []
    for i, a in enumerate(systems):
        for j, b in enumerate(systems):
            if a < b and not any(a < c < b for c in systems):
                out.append((i, j))
    return out


def meet(a: IndexingSystem, b: IndexingSystem) -> IndexingSystem:
    return IndexingSystem(a.group, a.pairs & b.pairs)


def join(a: IndexingSystem, b: IndexingSystem) -> IndexingSystem:
    return generate_closure(a.group, a.pairs | b.pairs)


def lattice_to_json(G: FiniteGroup, systems: list[IndexingSystem]) -> dict:
    return {"group": G.name, "systems": [s.to_json() for s in systems],
            "hasse": [list(e) for e in hasse(systems)]}


def lattice_to_dot(G: FiniteGroup, systems: list[IndexingSystem]) -> str:
    L = lattice(G)
    lines = [f"digraph indexing_{G.name} {{", "  rankdir=BT;"]
    for i, s in enumerate(systems):
        lab = ", ".join(f"{L.label(L.subgroups[k])}->{L.label(L.subgroups[h])}"
                        for k, h in s.proper_pairs()) or "isos"
        lines.append(f'  s{i} [label="{lab}"];')
    for i, j in hasse(systems):
        lines.append(f"  s{i} -> s{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- subcategory of finite G-sets ------------------------------------------------

@dataclass(frozen=True)
class BarClosure:
    """The subcategory Ī of finite G-sets generated by an indexing system."""
    system: IndexingSystem

    def contains(self, f: GMap | tuple, source: GSet | None = None, target: GSet | None = None) -> bool:
        if isinstance(f, GMap):
            source, target, f = f.source, f.target, f.map
        G = self.system.group
        L = lattice(G)
        for a in range(source.size):
            k = L.find(source.stabilizer(a))
            h = L.find(target.stabilizer(f[a]))
            if (k, h) not in self.system.pairs:
                return False
        return True

    def recover(self) -> IndexingSystem:
        """Restriction to orbit maps G/K -> G/H."""
        G = self.system.group
        pairs = set()
        for k, h in all_pairs(G):
            if self.contains(orbit_projection(G, k, h)):
                pairs.add((k, h))
        return IndexingSystem(G, frozenset(pairs))


def orbit_projection(G: FiniteGroup, k: int, h: int) -> GMap:
    """gK -> gH."""
    from .gset import coset_index, coset_reps
    L = lattice(G)
    K, H = L.subgroups[k], L.subgroups[h]
    A, B = orbit_gset(G, K), orbit_gset(G, H)
    return GMap(A, B, [coset_index(G, H, r) for r in coset_reps(G, K)])


def to_bar_closure(I: IndexingSystem) -> BarClosure:
    return BarClosure(I)


def fiber_hset(f: GMap, y: int) -> tuple[Subgroup, GSet]:
    """The fiber over y as a Stab(y)-set."""
    G = f.source.group
    H = Subgroup(G, f.target.stabilizer(y))
    pts = [a for a in range(f.source.size) if f.map[a] == y]
    idx = {a: i for i, a in enumerate(pts)}
    action = [[idx[f.source.action[h][a]] for a in pts] for h in H.elements]
    return H, GSet(H.as_group, action) if pts else GSet.empty(H.as_group)


def bar_by_fibers(family: "BHFamily", f: GMap) -> bool:
    """Direct generation: f is admitted iff every fiber over a point y is in I(Stab y)."""
    L = lattice(f.source.group)
    return all(family.member(L.find(H.elements), X)
               for H, X in (fiber_hset(f, y) for y in range(f.target.size)))


# -- Blumberg-Hill families ----------------------------------------------------

BH_CONDITIONS = ("trivial", "1", "2", "3", "4", "5", "6")


class BHFamily:
    """A family {I(H)} of finite H-sets for every subgroup H, given by a membership
    predicate on H-sets (H-sets are GSets over ``H.as_group``)."""

    def __init__(self, group: FiniteGroup, member: Callable[[int, GSet], bool], name: str = "family"):
        self.group = group
        self._member = member
        self.name = name

    def __repr__(self):
        return f"BHFamily({self.group.name}, {self.name})"

    def member(self, h: int, X: GSet) -> bool:
        return self._member(h, X)

    def orbit_generators(self) -> dict[int, list[int]]:
        """For each subgroup H, the subgroups K with H/K in I(H)."""
        L = lattice(self.group)
        out = {}
        for h, H in enumerate(L.subgroups):
            out[h] = [k for k, K in enumerate(L.subgroups) if K <= H
                      and self.member(h, _sub_orbit(H, K))]
        return out


def _sub(H: Subgroup, K: Subgroup) -> Subgroup:
    """K as a subgroup of H.as_group."""
    return Subgroup(H.as_group, tuple(H.index_of(k) for k in K.elements))


def _sub_orbit(H: Subgroup, K: Subgroup) -> GSet:
    return orbit_gset(H.as_group, _sub(H, K))


def _stab_in_G(H: Subgroup, X: GSet, x: int) -> tuple[int, ...]:
    return tuple(sorted(H.embed(i) for i in X.stabilizer(x)))


def to_blumberg_hill(I: IndexingSystem) -> BHFamily:
    G = I.group
    L = lattice(G)

    def member(h: int, X: GSet) -> bool:
        H = L.subgroups[h]
        return all((L.find(_stab_in_G(H, X, x)), h) in I.pairs for x in range(X.size))

    return BHFamily(G, member, "from-indexing")


def restrict_between(H: Subgroup, K: Subgroup, X: GSet) -> GSet:
    """Restrict an H-set to K <= H."""
    return GSet(K.as_group, [X.action[H.index_of(k)] for k in K.elements]) if X.size else GSet.empty(K.as_group)


def induce_between(H: Subgroup, K: Subgroup, Y: GSet) -> GSet:
    """Induce a K-set up to H >= K."""
    Ks = _sub(H, K)
    Y2 = GSet(Ks.as_group, Y.action) if Y.size else GSet.empty(Ks.as_group)
    return induce(Ks, Y2)


@dataclass
class BHReport:
    passed: bool = True
    violations: list[tuple[str, str]] = field(default_factory=list)

    def add(self, cond, witness):
        self.violations.append((cond, witness))
        self.passed = False

    @property
    def conditions(self) -> set[str]:
        return {c for c, _ in self.violations}


def check_bh(F: BHFamily, bound: int | None = None) -> BHReport:
    """Check the trivial-set condition and closure conditions (1)-(6) on H-sets of
    size <= bound (default 2|G|).  Condition (1) is tested by relabelling members
    along adjacent transpositions; the others feed canonical forms back in."""
    G = F.group
    L = lattice(G)
    bound = 2 * G.order if bound is None else bound
    rep = BHReport()
    first = {}

    def add(cond, w):
        if cond not in first:
            first[cond] = w
            rep.add(cond, w)

    canon_cache: dict = {}
    mem_cache: dict = {}

    def canon(X):
        if X not in canon_cache:
            canon_cache[X] = canonical_form(X).gset
        return canon_cache[X]

    def member(h, X):
        if (h, X) not in mem_cache:
            mem_cache[h, X] = F.member(h, X)
        return mem_cache[h, X]

    members = {}
    for h, H in enumerate(L.subgroups):
        members[h] = [X for X in gsets_up_to_iso(H.as_group, bound) if member(h, X)]
        for n in range(bound + 1):
            if not member(h, GSet.trivial(H.as_group, n)):
                add("trivial", f"{n} fixed points not in I({L.label(H)})")
    for h, H in enumerate(L.subgroups):
        lab = L.label(H)
        for xi, X in enumerate(members[h]):
            for i in range(X.size - 1):
                perm = list(range(X.size))
                perm[i], perm[i + 1] = perm[i + 1], perm[i]
                if not member(h, relabel_gset(X, perm)):
                    add("1", f"a relabelling of a member of I({lab}) is not a member")
            for k, K in enumerate(L.subgroups):
                if K <= H and not member(k, canon(restrict_between(H, K, X))):
                    add("2", f"restriction of a member of I({lab}) to {L.label(K)} is not a member")
            for g in G.elements:
                Hg, Xg = conjugate_hset(H, g, X)
                hg = L.find(Hg.elements)
                Xg = GSet(L.subgroups[hg].as_group, Xg.action) if Xg.size else GSet.empty(L.subgroups[hg].as_group)
                if not member(hg, canon(Xg)):
                    add("3", f"conjugate of a member of I({lab}) by {g} is not a member")
            for r in range(1, len(X.orbits())):
                for orbs in itertools.combinations(X.orbits(), r):
                    S, _ = sub_gset(X, [p for o in orbs for p in o])
                    if not member(h, canon(S)):
                        add("4", f"a summand of a member of I({lab}) is not a member")
            for Y in members[h][xi:]:
                if X.size + Y.size <= bound and not member(h, canon(coproduct(X, Y)[0])):
                    add("5", f"coproduct of two members of I({lab}) is not a member")
        for k, K in enumerate(L.subgroups):
            if not K <= H or not member(h, _sub_orbit(H, K)):
                continue
            for U in members[k]:
                if U.size * (H.order // K.order) <= bound:
                    if not member(h, canon(induce_between(H, K, U))):
                        add("6", f"induction from {L.label(K)} to {lab} of a member is not a member")
    return rep


def from_blumberg_hill(F: BHFamily, bound: int | None = None) -> IndexingSystem:
    rep = check_bh(F, bound)
    if not rep.passed:
        conds = ", ".join(sorted(rep.conditions, key=BH_CONDITIONS.index))
        raise ValueError(f"not an indexing system family; violated conditions: {conds}")
    G = F.group
    gens = F.orbit_generators()
    return IndexingSystem(G, frozenset((k, h) for h, ks in gens.items() for k in ks))


def bh_from_predicate(G: FiniteGroup, name: str, rule: Callable[[Subgroup, GSet], bool]) -> BHFamily:
    L = lattice(G)
    return BHFamily(G, lambda h, X: rule(L.subgroups[h], X), name)


def _orbit_stabs(H: Subgroup, X: GSet) -> list[tuple[int, ...]]:
    return [_stab_in_G(H, X, o[0]) for o in X.orbits()]


def seeded_bh_violations() -> dict[str, BHFamily]:
    """One family per closure condition that fails exactly that condition."""
    from .groups import load_group
    C2, C4, S3 = load_group("C2"), load_group("C4"), load_group("S3")
    out = {}

    def is_trivial(H, X):
        return all(X.action[g] == tuple(range(X.size)) for g in range(len(X.action)))

    out["1"] = BHFamily(C2, lambda h, X: X == canonical_form(X).gset, "canonical-labels-only")

    def c4_restrict(H, X):
        return is_trivial(H, X) if H.order == 2 else True
    out["2"] = bh_from_predicate(C4, "I(C2)-trivial", c4_restrict)

    La = lattice(S3)
    c2s = [K for K in La.subgroups if K.order == 2]
    ca = c2s[0]

    def s3_conj(H, X):
        if H.order == 2:
            return H == ca or is_trivial(H, X)
        if H.order in (3, 6):
            return is_trivial(H, X)
        return True
    out["3"] = bh_from_predicate(S3, "one-C2-free", s3_conj)

    def c2_summand(H, X):
        if H.order == 1:
            return True
        stabs = _orbit_stabs(H, X)
        return is_trivial(H, X) or (any(len(s) == 1 for s in stabs) and any(len(s) == 2 for s in stabs))
    out["4"] = bh_from_predicate(C2, "free-needs-fixed", c2_summand)

    def homogeneous(H, X):
        if H.order == 1:
            return True
        return len({len(s) for s in _orbit_stabs(H, X)}) <= 1
    out["5"] = bh_from_predicate(C4, "homogeneous", homogeneous)

    def c4_induction(H, X):
        if H.order == 4:
            return all(len(s) >= 2 for s in _orbit_stabs(H, X))
        return True
    out["6"] = bh_from_predicate(C4, "no-free-at-top", c4_induction)
    return out


# -- commutative suboperads ---------------------------------------------------------

def com_operad(I: IndexingSystem, base=None, max_size: int = 4):
    """Com_I: the wide subcategory of uFin on morphisms whose forward map lies in Ī."""
    from .operad import ComOperad
    from .spans import UFin
    if violation(I.group, I.pairs) is not None:
        raise ValueError("not an indexing system")
    base = base or UFin(I.group, max_size)
    bar = BarClosure(I)

    def admits(m):
        Z, _, _, fwd = m.apex()
        return bar.contains(fwd)

    return ComOperad(base, admits, f"Com_I{sorted(I.proper_pairs())}")


def recover_indexing(O) -> IndexingSystem:
    """Pairs (K, H) whose active map (G/K -> G/H)_+ lies in O (a wide suboperad of Com)."""
    from .spans import ArrowObject, compose, inverse, pointing
    B = O.base
    G = B.group
    pairs = set()
    for k, h in all_pairs(G):
        p = orbit_projection(G, k, h)
        if p.source.size > B.max_size:
            raise ValueError("orbit G/K exceeds the size bound")
        src = ArrowObject(p.source, p.target, p.map)
        tgt = ArrowObject(p.target, p.target, range(p.target.size))
        act = pointing(src, tgt, p.map)
        i, iso_s = B.canonical(src)
        j, iso_t = B.canonical(tgt)
        m = compose(iso_t, compose(act, inverse(iso_s)))
        if any(mm.base == m for mm in O.hom(i, j)):
            pairs.add((k, h))
    I = IndexingSystem(G, frozenset(pairs))
    if violation(G, I.pairs) is not None:
        raise ValueError("input is not a suboperad of the expected form")
    return I
