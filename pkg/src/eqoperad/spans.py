"""Span categories over finite G-sets.

``uFin`` (pointed finite G-sets over an orbit) has objects ``[f: U -> V]`` and
morphisms ``[U -> V] -> [X -> Y]`` given by spans ``U <- Z -> X`` lying over
``V <- Y = Y``.  Because ``Z -> U x_V Y`` is a summand inclusion, a morphism is
determined up to isomorphism of spans by three pieces of data:

* the base map ``k: Y -> V``;
* the subset ``Z`` of ``U x_V Y`` (a union of orbits);
* the forward map ``m: Z -> X`` over ``Y``.

We store exactly that, so equality of morphisms is equality of data.  The
pair ``(u, y)`` of the pullback sits at index ``u*|Y| + y`` of ``zm``, whose
entry is ``NOT_OVER`` if ``f(u) != k(y)``, ``DROPPED`` if the pair is not in
``Z`` and otherwise ``m(u, y)``.

The big variant allows any finite G-set as base ``V``; the small variant
requires ``V`` to be an orbit.  Both share this implementation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .groups import FiniteGroup, Subgroup, lattice
from .gset import (GMap, GSet, automorphisms, canonical_form, canonical_over, coproduct,
                   coset_reps, equivariant_maps, gsets_up_to_iso, orbit_gset, product,
                   pullback)

NOT_OVER = -2
DROPPED = -1


class ArrowObject:
    __slots__ = ("u", "v", "f", "_hash", "__dict__")

    def __init__(self, u: GSet, v: GSet, f):
        self.u = u
        self.v = v
        self.f = tuple(f)
        self._hash = None

    @classmethod
    def from_map(cls, f: GMap) -> "ArrowObject":
        return cls(f.source, f.target, f.map)

    def __repr__(self):
        return f"[{_short(self.u)} -> {_short(self.v)}]"

    def __eq__(self, other):
        return (self is other or isinstance(other, ArrowObject) and self.f == other.f
                and self.v == other.v and self.u == other.u)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.u, self.v, self.f))
        return self._hash

    @property
    def group(self) -> FiniteGroup:
        return self.u.group

    @property
    def small(self) -> bool:
        return self.v.is_transitive()

    @property
    def map(self) -> GMap:
        return GMap(self.u, self.v, self.f)

    @property
    def arity(self) -> int:
        return self.u.size // self.v.size if self.v.size else 0

    def validate(self, small: bool = True) -> None:
        self.u.validate()
        self.v.validate()
        self.map.validate()
        if small and not self.small:
            raise ValueError("small base requires the target to be an orbit")

    def to_json(self) -> dict:
        return {"u": self.u.to_json(), "v": self.v.to_json(), "f": list(self.f)}


def _short(X: GSet) -> str:
    L = lattice(X.group)
    parts = []
    for orb in X.orbits():
        H = Subgroup(X.group, X.stabilizer(orb[0]))
        parts.append(f"{X.group.name}/{L.label(L.representative(H))}")
    return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class MorphismClass:
    inert: bool
    active: bool
    fiberwise: bool

    @property
    def label(self) -> str:
        if self.inert and self.active:
            return "cocartesian"
        return "inert" if self.inert else "active" if self.active else "mixed"


class SpanMorphism:
    __slots__ = ("src", "tgt", "k", "zm", "_hash")

    def __init__(self, src: ArrowObject, tgt: ArrowObject, k, zm):
        self.src = src
        self.tgt = tgt
        self.k = tuple(k)
        self.zm = tuple(zm)
        self._hash = None

    def __repr__(self):
        return f"Span({self.src} -> {self.tgt}, k={self.k}, zm={self.zm})"

    def __eq__(self, other):
        return (self is other or isinstance(other, SpanMorphism) and self.zm == other.zm
                and self.k == other.k and self.src == other.src and self.tgt == other.tgt)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.src, self.tgt, self.k, self.zm))
        return self._hash

    def __lt__(self, other):
        return (self.k, self.zm) < (other.k, other.zm)

    # -- structure --
    def points(self) -> list[tuple[int, int]]:
        """Apex points as pairs (u, y), in increasing order."""
        nY = self.tgt.v.size
        return [divmod(i, nY) for i, x in enumerate(self.zm) if x >= 0]

    def apex(self) -> tuple[GSet, GMap, GMap, GMap]:
        """(Z, Z -> Y, backward Z -> U, forward m: Z -> X)."""
        G = self.src.group
        pts = self.points()
        idx = {p: i for i, p in enumerate(pts)}
        U, Y = self.src.u, self.tgt.v
        action = [[idx[(U.action[g][u], Y.action[g][y])] for u, y in pts] for g in G.elements]
        Z = GSet(G, action) if pts else GSet.empty(G)
        nY = Y.size
        return (Z, GMap(Z, Y, [y for _, y in pts]), GMap(Z, U, [u for u, _ in pts]),
                GMap(Z, self.tgt.u, [self.zm[u * nY + y] for u, y in pts]))

    def forward_values(self) -> list[int]:
        return [x for x in self.zm if x >= 0]

    @property
    def is_inert(self) -> bool:
        vals = self.forward_values()
        return len(vals) == self.tgt.u.size and len(set(vals)) == len(vals)

    @property
    def is_active(self) -> bool:
        return DROPPED not in self.zm

    @property
    def is_fiberwise(self) -> bool:
        return self.src.v == self.tgt.v and self.k == tuple(range(len(self.k)))

    @property
    def is_iso(self) -> bool:
        return (self.is_inert and self.is_active and len(set(self.k)) == len(self.k)
                and len(self.k) == self.src.v.size)

    def classify(self) -> MorphismClass:
        return MorphismClass(self.is_inert, self.is_active, self.is_fiberwise)

    def validate(self) -> None:
        """Check the span conditions: Z is G-stable, m is equivariant over Y."""
        U, X, Y, V = self.src.u, self.tgt.u, self.tgt.v, self.src.v
        G = U.group
        if not GMap(Y, V, self.k).is_equivariant():
            raise ValueError("base map is not equivariant")
        nY = Y.size
        for u in range(U.size):
            for y in range(nY):
                x = self.zm[u * nY + y]
                over = self.src.f[u] == self.k[y]
                if over != (x != NOT_OVER):
                    raise ValueError("pullback membership mislabelled")
                if x >= self.tgt.u.size or x < NOT_OVER:
                    raise ValueError(f"apex point ({u}, {y}) maps outside the target")
                if x >= 0 and self.tgt.f[x] != y:
                    raise ValueError("forward map does not lie over Y")
                for g in G.elements:
                    x2 = self.zm[U.action[g][u] * nY + Y.action[g][y]]
                    if x >= 0 and x2 != X.action[g][x]:
                        raise ValueError("apex is not G-stable or m not equivariant")
                    if x == DROPPED and x2 != DROPPED:
                        raise ValueError("apex is not a union of orbits")

    def to_json(self) -> dict:
        Z, zy, back, fwd = self.apex()
        return {"source": self.src.to_json(), "target": self.tgt.to_json(), "z": Z.to_json(),
                "legs": {"base": list(self.k), "zy": list(zy.map), "back": list(back.map),
                         "fwd": list(fwd.map)}}


# -- basic constructions ----------------------------------------------------

def identity(a: ArrowObject) -> SpanMorphism:
    nV = a.v.size
    zm = [NOT_OVER] * (a.u.size * nV)
    for u in range(a.u.size):
        zm[u * nV + a.f[u]] = u
    return SpanMorphism(a, a, range(nV), zm)


def compose(g: SpanMorphism, f: SpanMorphism) -> SpanMorphism:
    """g after f; the apex is the pullback of the middle legs, stored canonically."""
    if f.tgt != g.src:
        raise ValueError("morphisms are not composable")
    a, c = f.src, g.tgt
    nY, nB = f.tgt.v.size, c.v.size
    k1, k2, z1, z2 = f.k, g.k, f.zm, g.zm
    k = tuple(k1[y] for y in k2)
    zm = []
    for u, fu in enumerate(a.f):
        base = u * nY
        for b in range(nB):
            y = k2[b]
            if fu != k1[y]:
                zm.append(NOT_OVER)
                continue
            x = z1[base + y]
            zm.append(DROPPED if x < 0 else z2[x * nB + b])
    return SpanMorphism(a, c, k, zm)


def iso_morphism(a: ArrowObject, b: ArrowObject, phi, beta) -> SpanMorphism:
    """The isomorphism a -> b induced by bijections phi: U_a -> U_b and beta: V_a -> V_b."""
    nY = b.v.size
    k = [0] * nY
    for v, y in enumerate(beta):
        k[y] = v
    zm = [NOT_OVER] * (a.u.size * nY)
    for u in range(a.u.size):
        zm[u * nY + beta[a.f[u]]] = phi[u]
    return SpanMorphism(a, b, k, zm)


def pointing(a: ArrowObject, b: ArrowObject, fmap) -> SpanMorphism:
    """The active morphism f_+ : [U -> V] -> [X -> V] for f: U -> X over V."""
    if a.v != b.v:
        raise ValueError("pointing needs a common base")
    fmap = tuple(fmap.map if isinstance(fmap, GMap) else fmap)
    if any(b.f[fmap[u]] != a.f[u] for u in range(a.u.size)):
        raise ValueError("map does not lie over the base")
    nV = a.v.size
    zm = [NOT_OVER] * (a.u.size * nV)
    for u in range(a.u.size):
        zm[u * nV + a.f[u]] = fmap[u]
    return SpanMorphism(a, b, range(nV), zm)


def cocartesian_morphism(a: ArrowObject, k, target_base: GSet) -> tuple[ArrowObject, SpanMorphism]:
    """The base change of [U -> V] along k: Y -> V, with the full pullback as apex."""
    kmap = GMap(target_base, a.v, k)
    P, pu, py = pullback(a.map, kmap)
    b = ArrowObject(P, target_base, py.map)
    nY = target_base.size
    zm = [NOT_OVER] * (a.u.size * nY)
    for i, (u, y) in enumerate(zip(pu.map, py.map)):
        zm[u * nY + y] = i
    return b, SpanMorphism(a, b, k, zm)


def factorize(m: SpanMorphism, skeleton: "UFin | None" = None,
              mode: str = "active") -> tuple[SpanMorphism, SpanMorphism]:
    """Inert-then-active factorization m = active o inert.

    The active factor is fiberwise (its base map is an identity), so the
    ``"fiberwise"`` mode returns the same pair.  With a skeleton the middle
    object is replaced by its skeletal representative.
    """
    if mode not in ("active", "fiberwise"):
        raise ValueError(f"unknown factorization mode {mode!r}")
    Z, zy, _, _ = m.apex()
    mid = ArrowObject(Z, m.tgt.v, zy.map)
    pts = m.points()
    where = {p: i for i, p in enumerate(pts)}
    nY = m.tgt.v.size
    izm = [NOT_OVER if x == NOT_OVER else DROPPED if x == DROPPED else where[divmod(i, nY)]
           for i, x in enumerate(m.zm)]
    inert = SpanMorphism(m.src, mid, m.k, izm)
    fwd = [m.zm[u * nY + y] for u, y in pts]
    active = pointing(mid, m.tgt, fwd)
    if skeleton is not None:
        _, iso = skeleton.canonical(mid)
        inert = compose(iso, inert)
        active = compose(active, inverse(iso))
    return inert, active


def inverse(iso: SpanMorphism) -> SpanMorphism:
    if not iso.is_iso:
        raise ValueError("not an isomorphism")
    nY = iso.tgt.v.size
    phi = [0] * iso.src.u.size
    for i, x in enumerate(iso.zm):
        if x >= 0:
            phi[i // nY] = x
    beta = [0] * iso.src.v.size
    for y, v in enumerate(iso.k):
        beta[v] = y
    inv_phi = [0] * len(phi)
    for u, x in enumerate(phi):
        inv_phi[x] = u
    inv_beta = [0] * len(beta)
    for v, y in enumerate(beta):
        inv_beta[y] = v
    return iso_morphism(iso.tgt, iso.src, inv_phi, inv_beta)


def fiberwise_automorphisms(a: ArrowObject) -> list[SpanMorphism]:
    """Isomorphisms a -> a over the identity of the base."""
    out = []
    for phi in equivariant_maps(a.u, a.u, lambda u, w: a.f[u] == a.f[w]):
        if len(set(phi)) == len(phi):
            out.append(iso_morphism(a, a, phi, range(a.v.size)))
    return out


def hom_set(a: ArrowObject, b: ArrowObject) -> list[SpanMorphism]:
    """All morphisms a -> b: base map k, summand Z of U x_V Y, forward map Z -> X over Y."""
    G = a.group
    U, V, X, Y = a.u, a.v, b.u, b.v
    nY = Y.size
    out = []
    for k in equivariant_maps(Y, V):
        zm0 = [NOT_OVER] * (U.size * nY)
        seen = set()
        orbit_choices = []
        for u in range(U.size):
            for y in range(nY):
                if a.f[u] != k[y] or (u, y) in seen:
                    continue
                orb = {(U.action[g][u], Y.action[g][y]) for g in G.elements}
                seen |= orb
                stab = [g for g in G.elements if U.action[g][u] == u and Y.action[g][y] == y]
                xs = [x for x in range(X.size) if b.f[x] == y
                      and all(X.action[s][x] == x for s in stab)]
                orbit_choices.append((u, y, [DROPPED] + xs))
        for choice in itertools.product(*[c for _, _, c in orbit_choices]):
            zm = list(zm0)
            for (u, y, _), x in zip(orbit_choices, choice):
                for g in G.elements:
                    zm[U.action[g][u] * nY + Y.action[g][y]] = DROPPED if x < 0 else X.action[g][x]
            out.append(SpanMorphism(a, b, k, zm))
    return out


def characteristic_morphism(a: ArrowObject, orbit, skeleton: "UFin | None" = None) -> SpanMorphism:
    """chi_[W in U]: [U -> V] -> [W = W], with W replaced by the standard orbit G/K
    where K is the least stabilizer occurring in W."""
    U = a.u
    G = U.group
    orbit = tuple(sorted(orbit))
    if orbit not in U.orbits():
        raise ValueError("not an orbit of the source")
    w = min(orbit, key=lambda p: U.stabilizer(p))
    K = Subgroup(G, U.stabilizer(w))
    O = orbit_gset(G, K)
    reps = coset_reps(G, K)
    sigma = [U.action[r][w] for r in reps]          # O -> W
    target = ArrowObject(O, O, range(O.size))
    k = [a.f[s] for s in sigma]
    nY = O.size
    zm = [NOT_OVER] * (U.size * nY)
    for u in range(U.size):
        for y in range(nY):
            if a.f[u] == k[y]:
                zm[u * nY + y] = y if sigma[y] == u else DROPPED
    m = SpanMorphism(a, target, k, zm)
    if skeleton is not None:
        _, iso = skeleton.canonical(target)
        m = compose(iso, m)
    return m


# -- the skeletal bounded category -------------------------------------------

class UFin:
    """Skeletal full subcategory of pointed finite G-sets on objects with |U| <= max_size.

    ``big=False``: the base V ranges over the orbits G/K (K a class
    representative).  ``big=True``: V ranges over all G-sets with
    |V| <= max_base.
    """

    def __init__(self, group: FiniteGroup, max_size: int = 4, big: bool = False,
                 max_base: int | None = None):
        self.group = group
        self.max_size = max_size
        self.big = big
        self.max_base = max_size if max_base is None else max_base
        self._homs: dict[tuple[int, int], list[SpanMorphism]] = {}
        self._canon: dict[ArrowObject, tuple[int, SpanMorphism]] = {}
        self._comp: dict = {}
        self.objects: list[ArrowObject] = []
        self.index: dict[ArrowObject, int] = {}
        self._build()

    def __repr__(self):
        kind = "big" if self.big else "small"
        return f"UFin({self.group.name}, |U|<={self.max_size}, {kind}, {len(self.objects)} objects)"

    def _bases(self) -> list[GSet]:
        G = self.group
        if self.big:
            return gsets_up_to_iso(G, self.max_base)
        return [orbit_gset(G, K) for K in lattice(G).representatives]

    def _build(self) -> None:
        G = self.group
        found = {}
        for V in self._bases():
            for U in gsets_up_to_iso(G, self.max_size):
                for f in equivariant_maps(U, V):
                    obj, _ = self._canonical_raw(ArrowObject(U, V, f))
                    found[obj] = None
        objs = sorted(found, key=self._sort_key)
        self.objects = objs
        self.index = {o: i for i, o in enumerate(objs)}

    @staticmethod
    def _sort_key(o: ArrowObject):
        return (o.v.size, canonical_form(o.v).key, o.u.size, canonical_over(o.u, o.f, o.v).key)

    def _canonical_raw(self, a: ArrowObject) -> tuple[ArrowObject, SpanMorphism]:
        cv = canonical_form(a.v)
        V = cv.gset
        f0 = [cv.relabel[y] for y in a.f]
        best = None
        for sigma in automorphisms(V):
            c = canonical_over(a.u, [sigma[y] for y in f0], V)
            if best is None or c.key < best[0].key:
                best = (c, sigma)
        c, sigma = best
        obj = ArrowObject(c.gset, V, c.over)
        beta = [sigma[cv.relabel[v]] for v in range(a.v.size)]
        return obj, iso_morphism(a, obj, c.relabel, beta)

    def canonical(self, a: ArrowObject) -> tuple[int | None, SpanMorphism]:
        """(index of the skeletal representative or None if out of bounds, iso a -> rep)."""
        hit = self._canon.get(a)
        if hit is None:
            obj, iso = self._canonical_raw(a)
            idx = self.index.get(obj)
            if idx is not None:
                obj = self.objects[idx]
                iso = SpanMorphism(iso.src, obj, iso.k, iso.zm)
            hit = (idx, iso)
            self._canon[a] = hit
        return hit

    def __len__(self):
        return len(self.objects)

    def hom(self, i: int, j: int) -> list[SpanMorphism]:
        key = (i, j)
        if key not in self._homs:
            self._homs[key] = hom_set(self.objects[i], self.objects[j])
        return self._homs[key]

    def identity(self, i: int) -> SpanMorphism:
        return identity(self.objects[i])

    def compose(self, g: SpanMorphism, f: SpanMorphism) -> SpanMorphism:
        """Memoized composition, shared by the operads built on this base."""
        key = (g, f)
        c = self._comp.get(key)
        if c is None:
            c = self._comp[key] = compose(g, f)
        return c

    def idx(self, a: ArrowObject) -> int:
        return self.index[a]

    def orbit_object(self, K: Subgroup) -> int:
        O = orbit_gset(self.group, lattice(self.group).representative(K))
        return self.index[ArrowObject(O, O, range(O.size))]

    def orbit_objects(self) -> list[int]:
        return [i for i, o in enumerate(self.objects) if o.u == o.v and o.f == tuple(range(o.v.size))
                and o.v.is_transitive()]

    def empty_object(self, V: GSet) -> int:
        return self.index[ArrowObject(GSet.empty(self.group), V, ())]

    def morphisms(self):
        for i in range(len(self.objects)):
            for j in range(len(self.objects)):
                for m in self.hom(i, j):
                    yield i, j, m

    def count_homs(self) -> int:
        return sum(len(self.hom(i, j)) for i in range(len(self)) for j in range(len(self)))

    def characteristic(self, i: int, orbit) -> SpanMorphism:
        return characteristic_morphism(self.objects[i], orbit, self)

    def factorize(self, m: SpanMorphism) -> tuple[SpanMorphism, SpanMorphism]:
        return factorize(m, self)

    def to_dot(self) -> str:
        lines = ["digraph ufin {"]
        for i, o in enumerate(self.objects):
            lines.append(f'  n{i} [label="{o}"];')
        for i in range(len(self)):
            for j in range(len(self)):
                counts: dict[str, int] = {}
                for m in self.hom(i, j):
                    if m.is_inert and m.is_active and m.is_fiberwise and i == j:
                        continue
                    lab = m.classify().label
                    counts[lab] = counts.get(lab, 0) + 1
                for lab in sorted(counts):
                    lines.append(f'  n{i} -> n{j} [label="{lab} x{counts[lab]}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def automorphism_group(cat: UFin, i: int) -> list[SpanMorphism]:
    return [m for m in cat.hom(i, i) if m.is_iso]


# -- factorization system checks ------------------------------------------------

def factorization_failures(cat: UFin, fiberwise: bool = True, limit: int = 5,
                           sources=None) -> list[str]:
    """Exhaustive check that every morphism factors as active o inert through a
    unique middle object, with any two factorizations differing by an
    automorphism of it.

    With ``fiberwise=False`` the right class is all active morphisms; the middle
    object is then not unique (the base of an empty source can be anything),
    which the returned list shows.  Morphisms whose middle object leaves the
    truncation are skipped; ``sources`` restricts the check to morphisms out of
    the given objects.
    """
    n = len(cat)
    inert = {(i, k): [m for m in cat.hom(i, k) if m.is_inert] for i in range(n) for k in range(n)}
    active = {(k, j): [m for m in cat.hom(k, j) if m.is_active and (m.is_fiberwise or not fiberwise)]
              for k in range(n) for j in range(n)}
    auts = {k: automorphism_group(cat, k) for k in range(n)}
    bad: list[str] = []
    for i in (range(n) if sources is None else sources):
        found: dict = {}
        for k in range(n):
            for f in inert[i, k]:
                for j in range(n):
                    for a in active[k, j]:
                        found.setdefault(compose(a, f), []).append((k, f, a))
        for j in range(n):
            for m in cat.hom(i, j):
                if cat.canonical(factorize(m)[0].tgt)[0] is None:
                    continue  # middle object leaves the truncation
                fi, fa = cat.factorize(m)
                if not (fi.is_inert and fa.is_active and compose(fa, fi) == m):
                    bad.append(f"factorize fails on {m}")
                alts = found.get(m, [])
                if not alts:
                    bad.append(f"no factorization of {m}")
                    continue
                k0, f0, a0 = alts[0]
                for k, f, a in alts[1:]:
                    if k != k0 or not any(compose(s_, f0) == f and compose(a, s_) == a0 for s_ in auts[k]):
                        bad.append(f"two unrelated factorizations of {m}")
                        break
                if len(bad) >= limit:
                    return bad
    return bad


def is_cocartesian_shaped(m: SpanMorphism) -> bool:
    """m is the cocartesian transport along its base map followed by an
    isomorphism over the identity of the target base."""
    obj, c = cocartesian_morphism(m.src, m.k, m.tgt.v)
    if obj.u.size != m.tgt.u.size:
        return False
    return any(s_.is_iso and s_.is_fiberwise and compose(s_, c) == m for s_ in hom_set(obj, m.tgt))


def right_cancellation_failures(cat: UFin, limit: int = 5) -> list[str]:
    """f inert and g o f inert must force g inert."""
    n = len(cat)
    bad = []
    for i in range(n):
        for k in range(n):
            for f in cat.hom(i, k):
                if not f.is_inert:
                    continue
                for j in range(n):
                    for g in cat.hom(k, j):
                        if not g.is_inert and compose(g, f).is_inert:
                            bad.append(f"g o f inert with f inert but g not: f={f}, g={g}")
                            if len(bad) >= limit:
                                return bad
    return bad


def left_cancellation_failures(cat: UFin, fiberwise: bool = False, limit: int = 5) -> list[tuple]:
    """Pairs (f, g) with g and g o f in the class but f not; the class is
    active morphisms, or fiberwise active ones when ``fiberwise``."""
    def ok(m):
        return m.is_active and (m.is_fiberwise or not fiberwise)

    n = len(cat)
    bad = []
    for k in range(n):
        gs = [(j, g) for j in range(n) for g in cat.hom(k, j) if ok(g)]
        for i in range(n):
            for f in cat.hom(i, k):
                if ok(f):
                    continue
                for _, g in gs:
                    if ok(compose(g, f)):
                        bad.append((f, g))
                        if len(bad) >= limit:
                            return bad
    return bad


def active_left_cancellation_counterexample(G: FiniteGroup) -> tuple[SpanMorphism, SpanMorphism]:
    """f: [* -> *] -> [* -> *] forgetting the point, g: [* -> *] -> [0 -> 0] over the
    empty base.  g and g o f are active (nothing is dropped over an empty base)
    while f is not."""
    pt, empty = GSet.point(G), GSet.empty(G)
    a = ArrowObject(pt, pt, [0])
    z = ArrowObject(empty, empty, [])
    f = SpanMorphism(a, a, (0,), (DROPPED,))
    g = SpanMorphism(a, z, (), ())
    return f, g


# -- Burnside category Span(F_G) ----------------------------------------------

class BurnsideSpan:
    """A span A <- Z -> B of finite G-sets, stored in canonical form over A x B."""

    __slots__ = ("a", "b", "z", "left", "right", "key")

    def __init__(self, a: GSet, b: GSet, z: GSet, left, right):
        c = canonical_over(z, [l * b.size + r for l, r in zip(left, right)], product(a, b)[0])
        self.a, self.b = a, b
        self.z = c.gset
        self.left = tuple(p // b.size for p in c.over)
        self.right = tuple(p % b.size for p in c.over)
        self.key = c.key

    def __eq__(self, other):
        return isinstance(other, BurnsideSpan) and self.a == other.a and self.b == other.b and self.key == other.key

    def __hash__(self):
        return hash((self.a, self.b, self.key))

    def __repr__(self):
        return f"BurnsideSpan({_short(self.a)} <- {_short(self.z)} -> {_short(self.b)})"


def burnside_identity(a: GSet) -> BurnsideSpan:
    return BurnsideSpan(a, a, a, range(a.size), range(a.size))


def burnside_compose(g: BurnsideSpan, f: BurnsideSpan) -> BurnsideSpan:
    """g after f: apex Z1 x_B Z2."""
    if f.b != g.a:
        raise ValueError("spans are not composable")
    P, p1, p2 = pullback(GMap(f.z, f.b, f.right), GMap(g.z, g.a, g.left))
    return BurnsideSpan(f.a, g.b, P, [f.left[x] for x in p1.map], [g.right[y] for y in p2.map])


def burnside_hom_set(a: GSet, b: GSet, bound_apex: int) -> list[BurnsideSpan]:
    """All spans a <- Z -> b with |Z| <= bound_apex, one per isomorphism class."""
    G = a.group
    AB = product(a, b)[0]
    # orbit classes over A x B: (point, subgroup of its stabilizer) up to conjugation
    kinds = []
    L = lattice(G)
    for orb in AB.orbits():
        p = orb[0]
        stab = set(AB.stabilizer(p))
        seen = set()
        for S in L.subgroups:
            if set(S.elements) <= stab:
                key = canonical_over(orbit_gset(G, S), [AB.action[r][p] for r in _reps(G, S)], AB).key
                if key not in seen:
                    seen.add(key)
                    kinds.append((p, S))
    kinds.sort(key=lambda t: (t[0], G.order // t[1].order, t[1].elements))
    out = []
    sizes = [G.order // S.order for _, S in kinds]

    def rec(i, remaining, chosen):
        if i == len(kinds):
            parts, over = [], []
            for (p, S), m in zip(kinds, chosen):
                for _ in range(m):
                    parts.append(orbit_gset(G, S))
                    over.extend(AB.action[r][p] for r in _reps(G, S))
            Z = coproduct(*parts)[0] if parts else GSet.empty(G)
            out.append(BurnsideSpan(a, b, Z, [q // b.size for q in over], [q % b.size for q in over]))
            return
        for m in range(remaining // sizes[i] + 1):
            rec(i + 1, remaining - m * sizes[i], chosen + [m])

    rec(0, bound_apex, [])
    return out


def _reps(G: FiniteGroup, S: Subgroup):
    return coset_reps(G, S)


# -- atomic / orbital verification -----------------------------------------

@dataclass
class FiniteCategory:
    """A small category given by explicit hom-sets and a composition table."""
    objects: list[str]
    homs: dict[tuple[str, str], list[str]]
    comp: dict[tuple[str, str], str]     # (g, f) -> g o f
    ids: dict[str, str]

    def hom(self, a: str, b: str) -> list[str]:
        return self.homs.get((a, b), [])

    def compose(self, g: str, f: str) -> str:
        return self.comp[(g, f)]

    def is_iso(self, a: str, b: str, s: str) -> bool:
        return any(self.compose(t, s) == self.ids[a] and self.compose(s, t) == self.ids[b]
                   for t in self.hom(b, a))

    def validate(self) -> None:
        owner = {m: (a, b) for (a, b), ms in self.homs.items() for m in ms}
        for a in self.objects:
            for b in self.objects:
                for f in self.hom(a, b):
                    if self.compose(self.ids[b], f) != f or self.compose(f, self.ids[a]) != f:
                        raise ValueError(f"identity law fails at {f}")
                    for c in self.objects:
                        for g in self.hom(b, c):
                            if owner[self.compose(g, f)] != (a, c):
                                raise ValueError("composite has wrong endpoints")
                            for d in self.objects:
                                for h in self.hom(c, d):
                                    if self.compose(h, self.compose(g, f)) != self.compose(self.compose(h, g), f):
                                        raise ValueError(f"associativity fails at {(h, g, f)}")


@dataclass
class AtomicReport:
    passed: bool
    pullbacks_ok: bool
    retracts_ok: bool
    witness: str | None = None
    checked: int = 0


def retract_witness(cat: FiniteCategory) -> str | None:
    """A map with a left inverse that is not an isomorphism, if one exists."""
    for a in cat.objects:
        for b in cat.objects:
            for s in cat.hom(a, b):
                for r in cat.hom(b, a):
                    if cat.compose(r, s) == cat.ids[a] and not cat.is_iso(a, b, s):
                        return f"{s}: {a} -> {b} has left inverse {r} but is not an isomorphism"
    return None


def orbit_category(G: FiniteGroup) -> FiniteCategory:
    """O_G on the standard orbits G/K (K a class representative)."""
    L = lattice(G)
    names = [L.label(K) for K in L.representatives]
    orbits = [orbit_gset(G, K) for K in L.representatives]
    homs, comp, ids = {}, {}, {}
    label = {}
    for i, A in enumerate(orbits):
        for j, B in enumerate(orbits):
            ms = equivariant_maps(A, B)
            homs[(names[i], names[j])] = [f"{names[i]}>{names[j]}:{m}" for m in ms]
            for m, s in zip(ms, homs[(names[i], names[j])]):
                label[(i, j, m)] = s
        ids[names[i]] = label[(i, i, tuple(range(A.size)))]
    for i, A in enumerate(orbits):
        for j, B in enumerate(orbits):
            for k, C in enumerate(orbits):
                for f in equivariant_maps(A, B):
                    for g in equivariant_maps(B, C):
                        comp[(label[(j, k, g)], label[(i, j, f)])] = label[(i, k, tuple(g[x] for x in f))]
    return FiniteCategory(names, homs, comp, ids)


def verify_atomic_orbital(G: FiniteGroup | FiniteCategory) -> AtomicReport:
    """Orbital: pullbacks of orbits exist in F_G (checked by a mediating-map count
    against every orbit test object).  Atomic: every map of orbits with a left
    inverse is an isomorphism."""
    if isinstance(G, FiniteCategory):
        w = retract_witness(G)
        return AtomicReport(w is None, True, w is None, w)
    L = lattice(G)
    orbits = [orbit_gset(G, K) for K in L.representatives]
    checked = 0
    for A, B, C in itertools.product(orbits, repeat=3):
        for a in equivariant_maps(A, C):
            for b in equivariant_maps(B, C):
                P, pa, pb = pullback(GMap(A, C, a), GMap(B, C, b))
                for T in orbits:
                    cones = sum(1 for s in equivariant_maps(T, A) for t in equivariant_maps(T, B)
                                if all(a[s[x]] == b[t[x]] for x in range(T.size)))
                    mediating = len(equivariant_maps(T, P)) if P.size else 0
                    checked += 1
                    if cones != mediating:
                        return AtomicReport(False, False, True,
                                            f"pullback of {a} and {b} fails against test orbit of size {T.size}", checked)
    w = retract_witness(orbit_category(G))
    return AtomicReport(w is None, True, w is None, w, checked)


def split_epi_category() -> FiniteCategory:
    """Three objects A, B, C with s: A -> B, r: B -> A, r s = id_A and e = s r != id_B."""
    homs = {("A", "A"): ["1A"], ("B", "B"): ["1B", "e"], ("C", "C"): ["1C"],
            ("A", "B"): ["s"], ("B", "A"): ["r"], ("C", "B"): ["c", "ec"], ("C", "A"): ["rc"]}
    comp = {}
    ids = {"A": "1A", "B": "1B", "C": "1C"}
    for (a, b), ms in homs.items():
        for m in ms:
            comp[(ids[b], m)] = m
            comp[(m, ids[a])] = m
    comp.update({("r", "s"): "1A", ("s", "r"): "e", ("e", "e"): "e", ("e", "s"): "s", ("r", "e"): "r",
                 ("e", "c"): "ec", ("e", "ec"): "ec", ("r", "c"): "rc", ("r", "ec"): "rc",
                 ("s", "rc"): "ec"})
    return FiniteCategory(["A", "B", "C"], homs, comp, ids)
