"""Discrete (Set-enriched) models of operads over pointed finite G-sets.

An operad here is a finite category with a functor ``p`` to a bounded
skeleton of uFin and a set of flagged (inert) morphisms.  The checkers verify
at set level:

* ``cocartesian-lift``: every inert base morphism has a flagged lift at every
  object, and flagged lifts have the unique-filler property;
* ``segal``: lifting characteristic morphisms gives a bijection of the fiber
  over ``[U -> V]`` with the product of fibers over the orbits of ``U``;
* ``decomposition-3prime``: for a fiberwise active ``alpha``, morphisms over
  ``alpha`` correspond to tuples of morphisms over the orbitwise pieces;
* ``functoriality``: ``p`` preserves composition and identities.

Objects must be skeletal: isomorphic objects in one fiber count as distinct.
"""

from __future__ import annotations

import itertools
import json
import random
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from math import prod

from .groups import FiniteGroup, Subgroup, lattice, load_group
from .gset import GSet, equivariant_maps, gsets_up_to_iso
from .spans import (ArrowObject, SpanMorphism, UFin, compose, fiberwise_automorphisms, identity,
                    inverse, pointing)

AXIOMS = ("cocartesian-lift", "segal", "decomposition-3prime", "functoriality")


@dataclass(frozen=True)
class Mor:
    src: object
    dst: object
    base: SpanMorphism
    data: object = None


@dataclass
class AxiomReport:
    passed: bool = True
    violations: list[tuple[str, str]] = field(default_factory=list)
    bound: int | None = None

    def add(self, axiom: str, witness: str) -> None:
        self.violations.append((axiom, witness))
        self.passed = False

    @property
    def axioms(self) -> set[str]:
        return {a for a, _ in self.violations}

    def sorted(self) -> "AxiomReport":
        order = {a: i for i, a in enumerate(AXIOMS)}
        v = sorted(set(self.violations), key=lambda t: (order.get(t[0], 99), t[0], t[1]))
        return AxiomReport(not v, v, self.bound)

    def to_json(self) -> dict:
        r = self.sorted()
        return {"passed": r.passed, "bound": r.bound,
                "violations": [{"axiom": a, "witness": w} for a, w in r.violations]}


class DiscreteTOperad:
    """Interface; subclasses supply objects, base_of, hom, compose, identity, flagged."""

    name = "operad"

    def __init__(self, base: UFin):
        self.base = base

    def __repr__(self):
        return f"{type(self).__name__}({self.name}, {self.base})"

    def objects(self) -> list:
        raise NotImplementedError

    def base_of(self, x) -> int:
        raise NotImplementedError

    def hom(self, x, y) -> list[Mor]:
        raise NotImplementedError

    def compose(self, g: Mor, f: Mor) -> Mor:
        raise NotImplementedError

    def identity(self, x) -> Mor:
        raise NotImplementedError

    def flagged(self, m: Mor) -> bool:
        raise NotImplementedError

    # -- derived structure --
    @cached_property
    def _fibers(self) -> dict[int, list]:
        out: dict[int, list] = {i: [] for i in range(len(self.base))}
        for x in self.objects():
            out[self.base_of(x)].append(x)
        return out

    def fiber(self, i: int) -> list:
        return self._fibers[i]

    @cached_property
    def _over(self) -> dict:
        return {}

    def hom_over(self, x, y, psi: SpanMorphism) -> list[Mor]:
        key = (x, y)
        table = self._over.get(key)
        if table is None:
            table = {}
            for m in self.hom(x, y):
                table.setdefault(m.base, []).append(m)
            self._over[key] = table
        return table.get(psi, [])

    def lifts(self, x, psi: SpanMorphism) -> list[Mor]:
        """Flagged morphisms out of x lying over psi."""
        j = self.base.index.get(psi.tgt)
        if j is None:
            return []
        return [m for y in self.fiber(j) for m in self.hom_over(x, y, psi) if self.flagged(m)]

    def fiber_isos(self, x) -> list[Mor]:
        """Isomorphisms out of x over fiberwise automorphisms of its base."""
        return [m for y in self.fiber(self.base_of(x)) for m in self.hom(x, y)
                if m.base.is_iso and m.base.is_fiberwise]

    def all_morphisms(self):
        objs = self.objects()
        for x in objs:
            for y in objs:
                yield from self.hom(x, y)

    def count_morphisms(self) -> int:
        objs = self.objects()
        return sum(len(self.hom(x, y)) for x in objs for y in objs)


# -- concrete operads --------------------------------------------------------

class ComOperad(DiscreteTOperad):
    """A wide subcategory of the base itself, with inert base morphisms flagged.

    ``admits`` selects morphisms; ``None`` gives all of uFin (the commutative
    operad).
    """

    def __init__(self, base: UFin, admits=None, name: str = "Com"):
        super().__init__(base)
        self.admits = admits
        self.name = name
        self._homs: dict = {}

    def objects(self):
        return list(range(len(self.base)))

    def base_of(self, x):
        return x

    def hom(self, x, y):
        key = (x, y)
        if key not in self._homs:
            ms = self.base.hom(x, y)
            if self.admits is not None:
                ms = [m for m in ms if self.admits(m)]
            self._homs[key] = [Mor(x, y, m) for m in ms]
        return self._homs[key]

    def compose(self, g, f):
        return Mor(f.src, g.dst, self.base.compose(g.base, f.base))

    def identity(self, x):
        return Mor(x, x, identity(self.base.objects[x]))

    def fiber_isos(self, x):
        isos = fiberwise_automorphisms(self.base.objects[x])
        return [Mor(x, x, s) for s in isos if self.admits is None or self.admits(s)]

    def flagged(self, m):
        return m.base.is_inert


def com_operad_all(base: UFin) -> ComOperad:
    return ComOperad(base, None, "Com")


def triv_operad_plain(base: UFin) -> ComOperad:
    return ComOperad(base, lambda m: m.is_inert, "Triv")


def e0_operad(base: UFin) -> ComOperad:
    """Forward map a summand inclusion (equivalently injective)."""
    return ComOperad(base, lambda m: len(set(m.forward_values())) == len(m.forward_values()), "E0")


class SubOperad(DiscreteTOperad):
    """Full/wide restriction of an operad by object and morphism predicates."""

    def __init__(self, parent: DiscreteTOperad, keep_object=None, keep_morphism=None, name="sub"):
        super().__init__(parent.base)
        self.parent = parent
        self.keep_object = keep_object
        self.keep_morphism = keep_morphism
        self.name = name

    def objects(self):
        objs = self.parent.objects()
        return [x for x in objs if self.keep_object is None or self.keep_object(x)]

    def base_of(self, x):
        return self.parent.base_of(x)

    def hom(self, x, y):
        ms = self.parent.hom(x, y)
        return ms if self.keep_morphism is None else [m for m in ms if self.keep_morphism(m)]

    def compose(self, g, f):
        return self.parent.compose(g, f)

    def identity(self, x):
        return self.parent.identity(x)

    def flagged(self, m):
        return self.parent.flagged(m)


class PosetCategory:
    """A finite T-category presented by a G-set of objects with a G-invariant
    partial order; its value on G/K is the subposet of K-fixed objects."""

    def __init__(self, objects: GSet, leq):
        self.objects = objects
        self.leq = frozenset(leq)      # pairs (a, b) meaning a <= b, reflexive

    def le(self, a: int, b: int) -> bool:
        return (a, b) in self.leq

    def orbit_value(self, K: Subgroup) -> list[int]:
        return self.objects.fixed_points(K)

    def validate(self) -> None:
        X = self.objects
        for a in range(X.size):
            if (a, a) not in self.leq:
                raise ValueError("order is not reflexive")
        for a, b in self.leq:
            if a != b and (b, a) in self.leq:
                raise ValueError("order is not antisymmetric")
            for g in X.group.elements:
                if (X.action[g][a], X.action[g][b]) not in self.leq:
                    raise ValueError("order is not G-invariant")
        for a, b in self.leq:
            for c, d in self.leq:
                if b == c and (a, d) not in self.leq:
                    raise ValueError("order is not transitive")


def point_category(G: FiniteGroup) -> PosetCategory:
    return PosetCategory(GSet.point(G), {(0, 0)})


def random_poset_category(G: FiniteGroup, rng: random.Random, max_size: int = 3) -> PosetCategory:
    """A random small G-poset: random G-set, orbits ranked, random invariant relations."""
    X = rng.choice(gsets_up_to_iso(G, max_size, 1))
    orbs = X.orbits()
    rank = {}
    order = list(range(len(orbs)))
    rng.shuffle(order)
    for r, oi in enumerate(order):
        for p in orbs[oi]:
            rank[p] = r
    rel = {(a, a) for a in range(X.size)}
    for a in range(X.size):
        for b in range(X.size):
            if rank[a] < rank[b] and rng.random() < 0.4:
                rel |= {(X.action[g][a], X.action[g][b]) for g in G.elements}
    changed = True
    while changed:
        changed = False
        for a, b in list(rel):
            for c, d in list(rel):
                if b == c and (a, d) not in rel:
                    rel.add((a, d))
                    changed = True
    return PosetCategory(X, rel)


class TrivC(DiscreteTOperad):
    """The operad Triv(C): objects over [U -> V] are equivariant maps U -> ob C,
    morphisms sit over inert base morphisms only (one per pointwise inequality),
    flagged when the inequality is an equality."""

    def __init__(self, base: UFin, C: PosetCategory, name: str = "Triv(C)"):
        super().__init__(base)
        self.C = C
        self.name = name
        self._homs: dict = {}

    @cached_property
    def _objects(self):
        out = []
        for i, a in enumerate(self.base.objects):
            for x in equivariant_maps(a.u, self.C.objects):
                out.append((i, x))
        return out

    def objects(self):
        return self._objects

    def base_of(self, x):
        return x[0]

    def _transport(self, psi: SpanMorphism, x) -> list[int | None]:
        """x pushed along an inert psi, as a function on the target's U."""
        out: list[int | None] = [None] * psi.tgt.u.size
        nY = psi.tgt.v.size
        for idx, val in enumerate(psi.zm):
            if val >= 0:
                out[val] = x[idx // nY]
        return out

    def hom(self, x, y):
        key = (x, y)
        if key not in self._homs:
            ms = []
            for psi in self.base.hom(x[0], y[0]):
                if not psi.is_inert:
                    continue
                t = self._transport(psi, x[1])
                if all(self.C.le(a, b) for a, b in zip(t, y[1])):
                    ms.append(Mor(x, y, psi))
            self._homs[key] = ms
        return self._homs[key]

    def compose(self, g, f):
        return Mor(f.src, g.dst, compose(g.base, f.base))

    def identity(self, x):
        return Mor(x, x, identity(self.base.objects[x[0]]))

    def flagged(self, m):
        return tuple(self._transport(m.base, m.src[1])) == tuple(m.dst[1])

    def fiber_isos(self, x):
        return [Mor(x, (x[0], tuple(self._transport(s, x[1]))), s)
                for s in fiberwise_automorphisms(self.base.objects[x[0]])]

    def orbit_fiber_product(self, i: int) -> int:
        """Independent count: product over orbits W of U of |C_W|."""
        a = self.base.objects[i]
        return prod(len(self.C.orbit_value(Subgroup(a.group, a.u.stabilizer(W[0]))))
                    for W in a.u.orbits())


def triv_operad(base: UFin, C: PosetCategory | None = None) -> DiscreteTOperad:
    if C is None:
        return triv_operad_plain(base)
    return TrivC(base, C)


# -- wrappers used for mutations -------------------------------------------

class ClearFlags(SubOperad):
    """Same category, flags kept only on identities."""

    def __init__(self, parent):
        super().__init__(parent, name=parent.name + "-noflags")

    def flagged(self, m):
        return m == self.parent.identity(m.src)


class DeleteFlag(SubOperad):
    def __init__(self, parent, target: Mor):
        super().__init__(parent, name=parent.name + "-deleted-flag")
        self.target = target

    def flagged(self, m):
        return m != self.target and self.parent.flagged(m)


class DuplicateObject(DiscreteTOperad):
    """Adds a second copy of one object, isomorphic to the original."""

    def __init__(self, parent: DiscreteTOperad, x):
        super().__init__(parent.base)
        self.parent = parent
        self.x = x
        self.copy = ("copy", x)
        self.name = parent.name + "-duplicated"

    def _orig(self, a):
        return self.x if a == self.copy else a

    def objects(self):
        return list(self.parent.objects()) + [self.copy]

    def base_of(self, a):
        return self.parent.base_of(self._orig(a))

    def hom(self, a, b):
        return [Mor(a, b, m.base, m.data) for m in self.parent.hom(self._orig(a), self._orig(b))]

    def _strip(self, m):
        return Mor(self._orig(m.src), self._orig(m.dst), m.base, m.data)

    def compose(self, g, f):
        c = self.parent.compose(self._strip(g), self._strip(f))
        return Mor(f.src, g.dst, c.base, c.data)

    def identity(self, a):
        m = self.parent.identity(self._orig(a))
        return Mor(a, a, m.base, m.data)

    def flagged(self, m):
        return self.parent.flagged(self._strip(m))


class ExplicitOperad(DiscreteTOperad):
    """Materialized tables: morphism ids, composition table, flags."""

    def __init__(self, base: UFin, objects, base_index, morphisms, comp, identities, name="explicit"):
        super().__init__(base)
        self.name = name
        self._objs = list(objects)
        self._base_index = dict(zip(self._objs, base_index))
        self.mors: list[Mor] = []
        self.flags: set[int] = set()
        self._homs: dict = {}
        for mid, (s, d, b, inert) in enumerate(morphisms):
            m = Mor(s, d, b, mid)
            self.mors.append(m)
            self._homs.setdefault((s, d), []).append(m)
            if inert:
                self.flags.add(mid)
        self.comp = dict(comp)
        self.ids = dict(identities)

    def objects(self):
        return self._objs

    def base_of(self, x):
        return self._base_index[x]

    def hom(self, x, y):
        return self._homs.get((x, y), [])

    def compose(self, g, f):
        key = (g.data, f.data)
        if key not in self.comp:
            raise KeyError(f"composite of morphisms {f.data} and {g.data} is undefined")
        return self.mors[self.comp[key]]

    def identity(self, x):
        return self.mors[self.ids[x]]

    def flagged(self, m):
        return m.data in self.flags

    @classmethod
    def materialize(cls, O: DiscreteTOperad, name: str | None = None) -> "ExplicitOperad":
        objs = list(O.objects())
        names = list(range(len(objs)))
        pos = {x: i for i, x in enumerate(objs)}
        morphisms, ids = [], {}
        where = {}
        for x in objs:
            for y in objs:
                for m in O.hom(x, y):
                    where[m] = len(morphisms)
                    morphisms.append((pos[x], pos[y], m.base, O.flagged(m)))
        comp = {}
        for f, fi in where.items():
            for y2 in objs:
                for g in O.hom(f.dst, y2):
                    comp[(where[g], fi)] = where[O.compose(g, f)]
        for x in objs:
            ids[pos[x]] = where[O.identity(x)]
        return cls(O.base, names, [O.base_of(x) for x in objs], morphisms, comp, ids,
                   name or O.name)

    def to_json(self) -> dict:
        b = self.base
        return {
            "base_variant": "big" if b.big else "small",
            "group": b.group.name,
            "max_size": b.max_size,
            "name": self.name,
            "objects": [{"id": x, "base": self.base_of(x)} for x in self._objs],
            "base_objects": [o.to_json() for o in b.objects],
            "morphisms": [{"src": m.src, "dst": m.dst, "inert": m.data in self.flags,
                           "base": {"k": list(m.base.k), "zm": list(m.base.zm)}} for m in self.mors],
            "identities": [[x, self.ids[x]] for x in self._objs],
            "comp": [[g, f, c] for (g, f), c in sorted(self.comp.items())],
        }

    @classmethod
    def from_json(cls, data: dict) -> "ExplicitOperad":
        """Load and validate an instance; raises ValueError on malformed input."""
        try:
            G = load_group(data["group"])
            base = UFin(G, int(data["max_size"]), big=data.get("base_variant", "small") == "big")
            if "base_objects" in data:
                for i, o in enumerate(data["base_objects"]):
                    a = ArrowObject(GSet(G, o["u"]["action"]) if o["u"]["size"] else GSet.empty(G),
                                    GSet(G, o["v"]["action"]), o["f"])
                    if base.index.get(a) != i:
                        raise ValueError(f"base object {i} does not match the skeleton")
            objs = [o["id"] for o in data["objects"]]
            bidx = [int(o["base"]) for o in data["objects"]]
            pos = dict(zip(objs, bidx))
            morphisms = []
            for m in data["morphisms"]:
                src, dst = base.objects[pos[m["src"]]], base.objects[pos[m["dst"]]]
                s = SpanMorphism(src, dst, m["base"]["k"], m["base"]["zm"])
                if len(s.zm) != src.u.size * dst.v.size or len(s.k) != dst.v.size:
                    raise ValueError("span data has the wrong shape")
                s.validate()
                morphisms.append((m["src"], m["dst"], s, bool(m["inert"])))
            comp = {(g, f): c for g, f, c in data["comp"]}
            ids = {x: i for x, i in data["identities"]}
        except (KeyError, TypeError, IndexError) as exc:
            raise ValueError(f"malformed operad instance: {exc!r}") from exc
        return cls(base, objs, bidx, morphisms, comp, ids, data.get("name", "explicit"))


def load_operad(path) -> ExplicitOperad:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValueError(f"not valid JSON: {exc}") from exc
    return ExplicitOperad.from_json(data)


# -- axiom checks ------------------------------------------------------------

class _Checker:
    def __init__(self, O: DiscreteTOperad, report: AxiomReport, limit: int):
        self.O = O
        self.base = O.base
        self.report = report
        self.limit = limit
        self._by_comp: dict = {}

    def add(self, axiom, witness):
        if sum(1 for a, _ in self.report.violations if a == axiom) < self.limit:
            self.report.add(axiom, witness)
        else:
            self.report.passed = False

    def comp(self, g, f):
        try:
            c = self.O.compose(g, f)
        except KeyError as exc:
            self.add("functoriality", str(exc))
            return None
        if c.base != self.base.compose(g.base, f.base):
            self.add("functoriality", f"base of composite differs at {f.data}, {g.data}")
        return c

    def composites_over(self, psi: SpanMorphism, k: int) -> dict:
        """Group base morphisms psi2: tgt(psi) -> object k by psi2 o psi."""
        key = (psi, k)
        hit = self._by_comp.get(key)
        if hit is None:
            hit = {}
            j = self.base.index[psi.tgt]
            for psi2 in self.base.hom(j, k):
                hit.setdefault(compose(psi2, psi), []).append(psi2)
            self._by_comp[key] = hit
        return hit

    def is_cocartesian(self, e: Mor, flagged_only_targets=None) -> str | None:
        """Unique-filler property of e; returns a witness of failure or None."""
        O = self.O
        for z in O.objects():
            kz = O.base_of(z)
            groups = self.composites_over(e.base, kz)
            counts = Counter()
            for g in O.hom(e.dst, z):
                c = self.comp(g, e)
                if c is not None:
                    counts[(g.base, c)] += 1
            for h in O.hom(e.src, z):
                for psi2 in groups.get(h.base, ()):
                    n = counts.get((psi2, h), 0)
                    if n != 1:
                        return f"{n} fillers for a morphism {e.src} -> {z} through the lift to {e.dst}"
        return None

    def check_identities(self):
        O = self.O
        for x in O.objects():
            idm = O.identity(x)
            if idm.base != identity(self.base.objects[O.base_of(x)]):
                self.add("functoriality", f"identity of {x} is not over an identity")
            if not O.flagged(idm):
                self.add("cocartesian-lift", f"identity of {x} is not flagged")

    def check_closure(self):
        """Composites g∘f with f active and g active or inert stay in the hom-set.
        Together with the factorization check this covers closure under composition."""
        O = self.O
        objs = O.objects()
        homs = {(x, y): O.hom(x, y) for x in objs for y in objs}
        members = {k: set(v) for k, v in homs.items()}
        for x in objs:
            for y in objs:
                for f in homs[x, y]:
                    if not f.base.is_active:
                        continue
                    for z in objs:
                        for g in homs[y, z]:
                            if not (g.base.is_active or g.base.is_inert):
                                continue
                            c = self.comp(g, f)
                            if c is not None and c not in members[x, z]:
                                self.add("functoriality", f"composite {x} -> {y} -> {z} is not a morphism")

    def check_cocartesian(self):
        O = self.O
        for x in O.objects():
            for y in O.objects():
                for m in O.hom(x, y):
                    if O.flagged(m) and not m.base.is_inert:
                        self.add("cocartesian-lift", f"flagged morphism {x} -> {y} over a non-inert base")
        for x in O.objects():
            i = O.base_of(x)
            for j in range(len(self.base)):
                for psi in self.base.hom(i, j):
                    if not psi.is_inert:
                        continue
                    lifts = O.lifts(x, psi)
                    if not lifts:
                        self.add("cocartesian-lift", f"no flagged lift at {x} of inert {psi}")
                        continue
                    for e in lifts:
                        w = self.is_cocartesian(e)
                        if w:
                            self.add("cocartesian-lift", w)

    def unique_lift(self, x, psi):
        ls = self.O.lifts(x, psi)
        return ls[0] if ls and len({e.dst for e in ls}) == 1 else None

    def check_segal(self):
        O = self.O
        for i, a in enumerate(self.base.objects):
            chis = [self.base.characteristic(i, W) for W in a.u.orbits()]
            targets = [O.fiber(self.base.index[c.tgt]) for c in chis]
            seen = {}
            ok = True
            for x in O.fiber(i):
                tup = []
                for chi in chis:
                    # lifts may differ by automorphisms of their common target
                    ends = {e.dst for e in O.lifts(x, chi)}
                    if len(ends) != 1:
                        self.add("segal", f"{len(ends)} targets of flagged lifts of a characteristic morphism at {x}")
                        ok = False
                        break
                    tup.append(ends.pop())
                else:
                    t = tuple(tup)
                    if t in seen:
                        self.add("segal", f"objects {seen[t]} and {x} over {a} have the same orbit components")
                        ok = False
                    seen[t] = x
            expected = prod(len(t) for t in targets)
            if ok and len(seen) != expected:
                self.add("segal", f"fiber over {a} has {len(seen)} objects, product of orbit fibers has {expected}")

    def check_decomposition(self):
        B = self.base
        for i, a in enumerate(B.objects):
            for j, b in enumerate(B.objects):
                if a.v != b.v:
                    continue
                for alpha in B.hom(i, j):
                    if not (alpha.is_fiberwise and alpha.is_active):
                        continue
                    pieces = []
                    for W in b.u.orbits():
                        chi = B.characteristic(j, W)
                        rho, aw = B.factorize(compose(chi, alpha))
                        pieces.append((chi, rho, aw))
                    self._decompose(alpha, pieces)

    def _decompose(self, alpha, pieces):
        O = self.O
        for x in O.fiber(self.base.index[alpha.src]):
            erhos = [self.unique_lift(x, rho) for _, rho, _ in pieces]
            if any(e is None for e in erhos):
                continue
            for y in O.fiber(self.base.index[alpha.tgt]):
                echis = [self.unique_lift(y, chi) for chi, _, _ in pieces]
                if any(e is None for e in echis):
                    continue
                targets = [O.hom_over(er.dst, ec.dst, aw)
                           for er, ec, (_, _, aw) in zip(erhos, echis, pieces)]
                images = set()
                for f in O.hom_over(x, y, alpha):
                    tup = []
                    for er, ec, cands in zip(erhos, echis, targets):
                        lhs = self.comp(ec, f)
                        fill = [g for g in cands if self.comp(g, er) == lhs]
                        if len(fill) != 1:
                            self.add("decomposition-3prime", f"{len(fill)} fillers for a morphism {x} -> {y}")
                            return
                        tup.append(fill[0])
                    images.add(tuple(tup))
                n = len(O.hom_over(x, y, alpha))
                if len(images) != n or n != prod(len(t) for t in targets):
                    self.add("decomposition-3prime",
                             f"{n} morphisms {x} -> {y} over an active map but {prod(len(t) for t in targets)} tuples")


def check_operad_axioms(O: DiscreteTOperad, limit: int = 5) -> AxiomReport:
    report = AxiomReport(bound=O.base.max_size)
    c = _Checker(O, report, limit)
    c.check_identities()
    c.check_closure()
    c.check_cocartesian()
    c.check_segal()
    c.check_decomposition()
    return report.sorted()


def check_simplified(O: DiscreteTOperad, limit: int = 5) -> AxiomReport:
    """Criterion for cocartesian instances: every base morphism has a
    cocartesian lift (flagged whenever the base is inert) and the Segal
    condition holds."""
    report = AxiomReport(bound=O.base.max_size)
    c = _Checker(O, report, limit)
    c.check_identities()
    in_bounds = getattr(O, "lift_in_bounds", None)
    for x in O.objects():
        i = O.base_of(x)
        for j in range(len(O.base)):
            for psi in O.base.hom(i, j):
                if in_bounds is not None and not in_bounds(x, psi):
                    continue
                cands = [m for y in O.fiber(j) for m in O.hom_over(x, y, psi)]
                if psi.is_inert:
                    cands = [m for m in cands if O.flagged(m)]
                if not any(c.is_cocartesian(e) is None for e in cands):
                    c.add("cocartesian-lift", f"no cocartesian lift at {x} of {psi}")
    c.check_segal()
    return report.sorted()


def check_cocartesian_fibration(O: DiscreteTOperad, in_bounds=None) -> AxiomReport:
    """Every base morphism (not only inert ones) has a cocartesian lift.
    ``in_bounds(x, psi)`` can exclude lifts that leave a truncation."""
    report = AxiomReport(bound=O.base.max_size)
    c = _Checker(O, report, 5)
    in_bounds = in_bounds or getattr(O, "lift_in_bounds", None)
    for x in O.objects():
        i = O.base_of(x)
        for j in range(len(O.base)):
            for psi in O.base.hom(i, j):
                if in_bounds is not None and not in_bounds(x, psi):
                    continue
                cands = [m for y in O.fiber(j) for m in O.hom_over(x, y, psi)]
                if not any(c.is_cocartesian(e) is None for e in cands):
                    c.add("cocartesian-lift", f"no cocartesian lift at {x} of {psi}")
    return report.sorted()


# -- multimorphisms ------------------------------------------------------------

@dataclass
class MulSet:
    alpha: SpanMorphism
    x: object
    y: object
    xs: tuple
    ys: tuple
    elements: list


def _pieces(O: DiscreteTOperad, alpha: SpanMorphism):
    B = O.base
    j = B.index[alpha.tgt]
    out = []
    for W in alpha.tgt.u.orbits():
        chi = B.characteristic(j, W)
        rho, aw = B.factorize(compose(chi, alpha))
        out.append((chi, rho, aw))
    return out


def restrict_mul(O: DiscreteTOperad, f: Mor, chi: SpanMorphism) -> Mor:
    """Base change of f (over a fiberwise active alpha) along an inert chi out of
    its target: the unique filler g with g o lift(rho) = lift(chi) o f."""
    B = O.base
    rho, aw = B.factorize(compose(chi, f.base))
    er = O.lifts(f.src, rho)
    ec = O.lifts(f.dst, chi)
    if not er or not ec:
        raise ValueError("missing cocartesian lift")
    lhs = O.compose(ec[0], f)
    fill = [g for g in O.hom_over(er[0].dst, ec[0].dst, aw) if O.compose(g, er[0]) == lhs]
    if len(fill) != 1:
        raise ValueError("no unique filler")
    return fill[0]


def mul_set(O: DiscreteTOperad, alpha: SpanMorphism, x, y) -> MulSet:
    """Mul^alpha(x, y) as tuples over the orbits of the target."""
    if not (alpha.is_fiberwise and alpha.is_active):
        raise ValueError("alpha must be fiberwise active")
    B = O.base
    if O.base_of(x) != B.index[alpha.src] or O.base_of(y) != B.index[alpha.tgt]:
        raise ValueError("objects do not lie over alpha")
    pieces = _pieces(O, alpha)
    xs = tuple(O.lifts(x, rho)[0].dst for _, rho, _ in pieces)
    ys = tuple(O.lifts(y, chi)[0].dst for chi, _, _ in pieces)
    elements = list(itertools.product(*[O.hom_over(a, b, aw)
                                         for a, b, (_, _, aw) in zip(xs, ys, pieces)]))
    return MulSet(alpha, x, y, xs, ys, elements)


def mul_to_tuple(O: DiscreteTOperad, f: Mor) -> tuple:
    return tuple(restrict_mul(O, f, chi) for chi, _, _ in _pieces(O, f.base))


def mul_from_tuple(O: DiscreteTOperad, alpha: SpanMorphism, x, y, tup) -> Mor:
    for f in O.hom_over(x, y, alpha):
        if mul_to_tuple(O, f) == tuple(tup):
            return f
    raise ValueError("tuple is not in the image")


def compose_mul(O: DiscreteTOperad, g: Mor, f: Mor) -> Mor:
    """Composition of multimorphisms; fiberwise active morphisms compose to one."""
    c = O.compose(g, f)
    if not (c.base.is_fiberwise and c.base.is_active):
        raise ValueError("composite is not fiberwise active")
    return c


def base_change_mul(O: DiscreteTOperad, f: Mor, chi: SpanMorphism) -> Mor:
    return restrict_mul(O, f, chi)


def is_unital(O: DiscreteTOperad) -> bool:
    """Mul(empty, y) is a singleton for every y over an orbit."""
    B = O.base
    for o in B.orbit_objects():
        ob = B.objects[o]
        e = B.index.get(ArrowObject(GSet.empty(B.group), ob.v, ()))
        if e is None:
            return False
        xs = O.fiber(e)
        if len(xs) != 1:
            return False
        alpha = pointing(B.objects[e], ob, ())
        for y in O.fiber(o):
            if len(O.hom_over(xs[0], y, alpha)) != 1:
                return False
    return True


def is_operad_morphism(O: DiscreteTOperad, P: DiscreteTOperad, fobj=None, fmor=None) -> bool:
    """Checks that (fobj, fmor) is a functor over the base and carries flagged
    morphisms to flagged morphisms.  Defaults give the identity/inclusion."""
    fobj = fobj or (lambda x: x)
    fmor = fmor or (lambda m: m)
    pobjs = set(P.objects())
    for x in O.objects():
        if fobj(x) not in pobjs or P.base_of(fobj(x)) != O.base_of(x):
            raise ValueError("object map does not lie over the base")
        if fmor(O.identity(x)) != P.identity(fobj(x)):
            raise ValueError("identities are not preserved")
    ok = True
    for x in O.objects():
        for y in O.objects():
            for m in O.hom(x, y):
                fm = fmor(m)
                if fm.base != m.base or fm not in P.hom(fobj(x), fobj(y)):
                    raise ValueError("morphism map is not over the base")
                if O.flagged(m) and not P.flagged(fm):
                    ok = False
                for z in O.objects():
                    for g in O.hom(y, z):
                        if fmor(O.compose(g, m)) != P.compose(fmor(g), fm):
                            raise ValueError("composition is not preserved")
    return ok


def is_suboperad(O: DiscreteTOperad, P: DiscreteTOperad) -> bool:
    """Every morphism of O is a morphism of P (same objects and base)."""
    objs = O.objects()
    return all(set(O.hom(x, y)) <= set(P.hom(x, y)) for x in objs for y in objs)


def suboperad_check(O: DiscreteTOperad, keep_object=None, keep_morphism=None) -> AxiomReport:
    S = SubOperad(O, keep_object, keep_morphism)
    objs = S.objects()
    for x in objs:
        if S.identity(x) not in S.hom(x, x):
            raise ValueError("subset does not contain identities")
        for y in objs:
            for f in S.hom(x, y):
                for z in objs:
                    for g in S.hom(y, z):
                        if S.compose(g, f) not in S.hom(x, z):
                            raise ValueError("subset is not closed under composition")
    return check_operad_axioms(S)


# -- sieves ------------------------------------------------------------------

def sieves(G: FiniteGroup) -> list[frozenset[int]]:
    """Downward-closed sets of subgroup classes (sieves of the orbit category)."""
    L = lattice(G)
    n = len(L.classes)
    below = {c: set() for c in range(n)}
    for i, K in enumerate(L.subgroups):
        for j, H in enumerate(L.subgroups):
            if K <= H:
                below[L.class_of[j]].add(L.class_of[i])
    out = []
    for mask in range(1 << n):
        S = {c for c in range(n) if mask >> c & 1}
        if all(below[c] <= S for c in S):
            out.append(frozenset(S))
    return sorted(out, key=lambda s: (len(s), sorted(s)))


def orbit_class_set(a: ArrowObject) -> set[int]:
    L = lattice(a.group)
    return {L.class_id(a.u.stabilizer(W[0])) for W in a.u.orbits()}


def full_on_classes(O: DiscreteTOperad, classes) -> SubOperad:
    """Full suboperad on objects whose U has orbit types among ``classes``."""
    classes = set(classes)
    B = O.base
    return SubOperad(O, lambda x: orbit_class_set(B.objects[O.base_of(x)]) <= classes,
                     name=f"{O.name}|{sorted(classes)}")


# -- envelope ----------------------------------------------------------------

class Envelope(DiscreteTOperad):
    """Objects: (x, alpha) with alpha fiberwise active out of p(x), up to
    isomorphism over the identity; morphisms (h, beta) with
    alpha' o p(h) = beta o alpha; flagged when h is flagged and beta inert."""

    def __init__(self, O: DiscreteTOperad, target_filter=None, max_target: int | None = None,
                 max_arity: int | None = None, name=None):
        base = O.base
        if max_target is not None and max_target < base.max_size:
            base = UFin(base.group, max_target, base.big)
        super().__init__(base)
        self.O = O
        self.name = name or f"Env({O.name})"
        self.target_filter = target_filter
        self.max_target = max_target
        self.max_arity = max_arity
        self._homs: dict = {}

    def _keep(self, j: int, alpha: SpanMorphism) -> bool:
        # Objects with |X| <= max_target and fibers of alpha of size <= max_arity
        # are closed under inert lifts as long as the base bound is their product.
        if self.target_filter and not self.target_filter(j):
            return False
        if self.max_target is not None and alpha.tgt.u.size > self.max_target:
            return False
        if self.max_arity is not None:
            sizes = Counter(alpha.forward_values())
            if sizes and max(sizes.values()) > self.max_arity:
                return False
        return True

    @cached_property
    def _objects(self):
        O, B = self.O, self.O.base
        raw = []
        for x in O.objects():
            i = O.base_of(x)
            a = B.objects[i]
            for j, b in enumerate(B.objects):
                if b.v != a.v:
                    continue
                if b not in self.base.index:
                    continue
                for alpha in B.hom(i, j):
                    if alpha.is_fiberwise and alpha.is_active and self._keep(j, alpha):
                        raw.append((x, alpha))
        # identify objects related by an isomorphism (h, id)
        parent = {r: r for r in raw}

        def find(r):
            while parent[r] != r:
                parent[r] = parent[parent[r]]
                r = parent[r]
            return r

        by_fiber: dict = {}
        for r in raw:
            by_fiber.setdefault(r[1].tgt, []).append(r)
        for rs in by_fiber.values():
            for x, alpha in rs:
                for h in O.fiber_isos(x):
                    other = (h.dst, compose(alpha, inverse(h.base)))
                    if other in parent:
                        ra, rb = find((x, alpha)), find(other)
                        if ra != rb:
                            parent[max(ra, rb, key=raw.index)] = min(ra, rb, key=raw.index)
        return sorted({find(r) for r in raw}, key=raw.index)

    def objects(self):
        return self._objects

    def base_of(self, obj):
        return self.base.index[obj[1].tgt]

    def lift_in_bounds(self, obj, psi: SpanMorphism) -> bool:
        """Whether the expected cocartesian lift of psi at obj is inside the truncation."""
        x, alpha = obj
        rho, a2 = self.O.base.factorize(compose(psi, alpha))
        j = self.base.index.get(a2.tgt)
        return rho.tgt in self.O.base.index and j is not None and self._keep(j, a2)

    def hom(self, s, t):
        key = (s, t)
        if key not in self._homs:
            (x, a), (y, b) = s, t
            B = self.base
            out = []
            betas = B.hom(self.base_of(s), self.base_of(t))
            for h in self.O.hom(x, y):
                lhs = compose(b, h.base)
                for beta in betas:
                    if beta.k == h.base.k and compose(beta, a) == lhs:
                        out.append(Mor(s, t, beta, h))
            self._homs[key] = out
        return self._homs[key]

    def compose(self, g, f):
        return Mor(f.src, g.dst, compose(g.base, f.base), self.O.compose(g.data, f.data))

    def identity(self, s):
        return Mor(s, s, identity(s[1].tgt), self.O.identity(s[0]))

    def flagged(self, m):
        return m.base.is_inert and self.O.flagged(m.data)

    def arity_counts(self) -> dict[tuple[int, int], int]:
        """Objects over each orbit [G/H = G/H], keyed by (class id, arity)."""
        B = self.base
        L = lattice(B.group)
        out: Counter = Counter()
        for x, alpha in self.objects():
            t = alpha.tgt
            if t.u == t.v and t.v.is_transitive():
                a = alpha.src
                K = L.class_id(t.v.stabilizer(0))
                out[(K, a.u.size // t.v.size)] += 1
        return dict(out)


def envelope(O: DiscreteTOperad, target_filter=None, max_target=None, max_arity=None) -> Envelope:
    return Envelope(O, target_filter, max_target, max_arity)


def orbit_targets(base: UFin):
    orbs = set(base.orbit_objects())
    return lambda j: j in orbs


def underlying_cocart_comparison(env: Envelope) -> list[tuple]:
    """Compare hom counts of the underlying category of Env(Triv) (objects over
    orbits, morphisms over base maps with full apex) with the cocartesian
    morphisms of uFin between the corresponding objects.  Returns mismatches."""
    B = env.O.base
    objs = [o for o in env.objects() if o[1].tgt.u == o[1].tgt.v]

    bad = []
    for s in objs:
        for t in objs:
            n_env = sum(1 for m in env.hom(s, t) if m.base.is_active)
            i, j = env.O.base_of(s[0]), env.O.base_of(t[0])
            n_cocart = sum(1 for m in B.hom(i, j) if m.is_inert and m.is_active)
            if n_env != n_cocart:
                bad.append((s, t, n_env, n_cocart))
    return bad
