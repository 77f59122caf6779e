"""Set-valued colored operads over finite G-sets and their operadic nerve.

Colors are given by a finite G-set C: a color on a G-set U is an equivariant
map U -> C, so restriction along any map is precomposition and colors on a
disjoint union are tuples of colors on the pieces.

Multimorphism sets are specified on *pieces*: an equivariant map f: A -> W
onto a single orbit W, together with colors on A and W.  For a general map
f: A -> B the multimorphisms are tuples, one element per orbit of B, in the
order of ``B.orbits()``.  Elements are hashable values and must not depend on
how the points of a piece are labelled (``check_colored_axioms`` tests this
under the id ``product``).

Subclasses provide ``mul``, ``unit``, ``comp`` and ``bc``:

* ``comp(g, eg, children)``: ``g`` a piece B -> W with element ``eg``,
  ``children`` one ``(piece, element)`` per orbit of B (same order);
* ``bc(piece, h, e)``: base change of ``e`` along an orbit map h: W' -> W.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Callable

from .groups import FiniteGroup, lattice
from .gset import GMap, GSet, equivariant_maps, gsets_up_to_iso, orbit_gset, pullback, relabel_gset, sub_gset
from .operad import AxiomReport, DiscreteTOperad, Mor, PosetCategory
from .spans import SpanMorphism, UFin, compose, fiberwise_automorphisms, identity

COLORED_AXIOMS = ("unitality", "associativity", "base-change", "product", "composition")


@dataclass(frozen=True)
class Piece:
    f: GMap             # A -> W with W transitive
    x: tuple            # colors on A
    y: tuple            # colors on W

    @property
    def source(self) -> GSet:
        return self.f.source

    @property
    def target(self) -> GSet:
        return self.f.target

    @property
    def fiber_size(self) -> int:
        return self.source.size // self.target.size

    def is_iso(self) -> bool:
        return self.source.size == self.target.size and self.f.is_iso()


def identity_piece(W: GSet, y) -> Piece:
    return Piece(GMap(W, W, range(W.size)), tuple(y), tuple(y))


def piece_over(f: GMap, orbit, x, y) -> Piece:
    """Restriction of f: A -> B (colored by x, y) over one orbit of B."""
    W, _ = sub_gset(f.target, orbit)
    pos = {b: i for i, b in enumerate(orbit)}
    pts = [a for a in range(f.source.size) if f.map[a] in pos]
    A, _ = sub_gset(f.source, pts)
    return Piece(GMap(A, W, [pos[f.map[a]] for a in pts]), tuple(x[a] for a in pts),
                 tuple(y[b] for b in orbit))


def pieces_of(f: GMap, x, y) -> list[Piece]:
    return [piece_over(f, orb, x, y) for orb in f.target.orbits()]


def pull_piece(p: Piece, h: GMap) -> Piece:
    """Base change of a piece along an orbit map h: W' -> W."""
    P, p1, p2 = pullback(p.f, h)
    return Piece(GMap(P, h.source, p2.map), tuple(p.x[a] for a in p1.map),
                 tuple(p.y[h.map[w]] for w in range(h.source.size)))


class SetColoredTOperad:
    name = "colored"

    def __init__(self, group: FiniteGroup, colors: GSet | None = None):
        self.group = group
        self.colors = colors if colors is not None else GSet.point(group)

    def __repr__(self):
        return f"{type(self).__name__}({self.name}, {self.group.name})"

    def color_maps(self, U: GSet) -> list[tuple]:
        return [tuple(c) for c in equivariant_maps(U, self.colors)]

    def mul(self, p: Piece) -> list:
        raise NotImplementedError

    def unit(self, W: GSet, y) -> object:
        raise NotImplementedError

    def comp(self, g: Piece, eg, children: list[tuple[Piece, object]]) -> object:
        raise NotImplementedError

    def bc(self, p: Piece, h: GMap, e) -> object:
        raise NotImplementedError

    def is_unit_image(self, p: Piece, e) -> bool:
        """e is the base change of a unit along the iso p (colors must match)."""
        if not p.is_iso():
            return False
        if any(p.x[a] != p.y[p.f.map[a]] for a in range(p.source.size)):
            return False
        return e == self.unit(p.target, p.y)

    # -- general maps: tuples over the orbits of the target --
    def mul_map(self, f: GMap, x, y) -> list[tuple]:
        return [tuple(t) for t in itertools.product(*(self.mul(p) for p in pieces_of(f, x, y)))]

    def comp_map(self, g: GMap, eg, f: GMap, ef, x, y, z) -> tuple:
        """(g, eg) after (f, ef) for A -f-> B -g-> C colored x, y, z."""
        fp = pieces_of(f, x, y)
        b_orbit = {b: i for i, orb in enumerate(f.target.orbits()) for b in orb}
        out = []
        for ci, orb in enumerate(g.target.orbits()):
            gp = piece_over(g, orb, y, z)
            members = [b for b in range(g.source.size) if g.map[b] in set(orb)]
            kids = []
            for sub in gp.source.orbits():
                bi = b_orbit[members[sub[0]]]
                kids.append((fp[bi], ef[bi]))
            out.append(self.comp(gp, eg[ci], kids))
        return tuple(out)


class UniformColoredOperad(SetColoredTOperad):
    """mul(f) = Z/n when admitted (colors ignored), composition adds elements
    weighted by the fiber count of each child orbit over a point of W."""

    def __init__(self, group: FiniteGroup, admits: Callable[[GMap], bool] | None = None,
                 modulus: int = 1, colors: GSet | None = None, name: str = "Com"):
        super().__init__(group, colors)
        self.admits = admits
        self.modulus = modulus
        self.name = name

    def admitted(self, p: Piece) -> bool:
        return self.admits is None or self.admits(p.f)

    def mul(self, p):
        return list(range(self.modulus)) if self.admitted(p) else []

    def unit(self, W, y):
        return 0

    def comp(self, g, eg, children):
        W = g.target.size
        total = eg
        for (p, e), d in zip(children, g.source.orbits()):
            total += e * (len(d) // W)
        return total % self.modulus

    def bc(self, p, h, e):
        return e


class PosetColoredOperad(UniformColoredOperad):
    """One multimorphism f: x -> y when x(a) <= y(f(a)) for every a in A."""

    def __init__(self, P: PosetCategory, admits=None, name: str = "Com(C)"):
        super().__init__(P.objects.group, admits, 1, P.objects, name)
        self.P = P

    def mul(self, p):
        ok = self.admitted(p) and all(self.P.le(p.x[a], p.y[p.f.map[a]]) for a in range(p.source.size))
        return [0] if ok else []


def commutative_colored(G: FiniteGroup, modulus: int = 1) -> UniformColoredOperad:
    return UniformColoredOperad(G, None, modulus, name="Com" if modulus == 1 else f"Com[Z/{modulus}]")


def triv_colored(G: FiniteGroup) -> UniformColoredOperad:
    return UniformColoredOperad(G, lambda f: f.is_iso(), name="Triv")


def colored_from_indexing(I, check: bool = True) -> UniformColoredOperad:
    """mul(f) a singleton exactly when f lies in the subcategory generated by I."""
    from .indexing import BarClosure, violation
    if check:
        w = violation(I.group, I.pairs)
        if w is not None:
            raise ValueError(f"not an indexing system: {w}")
    bar = BarClosure(I)
    return UniformColoredOperad(I.group, bar.contains, name=f"Com_I{I.proper_pairs()}")


# -- seeded mutations -------------------------------------------------------------

class RerouteComp(UniformColoredOperad):
    """Z/3 theory with the composite of (1; 1, ..., 1) sent one step further."""

    def __init__(self, G):
        super().__init__(G, None, 3, name="Com[Z/3]-rerouted")

    def comp(self, g, eg, children):
        r = super().comp(g, eg, children)
        if eg == 1 and children and all(e == 1 for _, e in children):
            r = (r + 1) % 3
        return r


class ShiftUnit(UniformColoredOperad):
    def __init__(self, G):
        super().__init__(G, None, 2, name="Com[Z/2]-shifted-unit")

    def unit(self, W, y):
        return 1


class ShiftBaseChange(UniformColoredOperad):
    def __init__(self, G):
        super().__init__(G, None, 2, name="Com[Z/2]-shifted-bc")

    def bc(self, p, h, e):
        return e if h.is_iso() else (e + 1) % 2


def seeded_colored_mutations(G: FiniteGroup) -> dict[str, SetColoredTOperad]:
    return {"associativity": RerouteComp(G), "unitality": ShiftUnit(G),
            "base-change": ShiftBaseChange(G)}


# -- axiom check ------------------------------------------------------------------

def _orbit_reps(G: FiniteGroup) -> list[GSet]:
    L = lattice(G)
    return [orbit_gset(G, H) for H in L.representatives]


class _ColoredChecker:
    def __init__(self, O: SetColoredTOperad, bound: int, limit: int):
        self.O = O
        self.bound = bound
        self.limit = limit
        self.report = AxiomReport(bound=bound)
        self.G = O.group
        self.gsets = gsets_up_to_iso(self.G, bound)
        self.orbits = _orbit_reps(self.G)

    def add(self, axiom, witness):
        if sum(1 for a, _ in self.report.violations if a == axiom) < self.limit:
            self.report.add(axiom, witness)
        else:
            self.report.passed = False

    def elements(self, p: Piece) -> list:
        try:
            es = self.O.mul(p)
            hash(tuple(es))
        except Exception as exc:       # noqa: BLE001 - any failure here is ill-typed data
            raise ValueError(f"ill-typed multimorphism data: {exc!r}") from exc
        return es

    def pieces(self):
        O = self.O
        for W in self.orbits:
            for A in self.gsets:
                for f in equivariant_maps(A, W):
                    fm = GMap(A, W, f)
                    for x in O.color_maps(A):
                        for y in O.color_maps(W):
                            yield Piece(fm, x, y)

    def check_units(self):
        O = self.O
        for W in self.orbits:
            for y in O.color_maps(W):
                idp = identity_piece(W, y)
                u = O.unit(W, y)
                if u not in self.elements(idp):
                    self.add("unitality", f"unit at {y} over {W} is not a multimorphism")
        for p in self.pieces():
            for e in self.elements(p):
                left = O.comp(identity_piece(p.target, p.y), O.unit(p.target, p.y), [(p, e)])
                if left != e:
                    self.add("unitality", f"unit o {e} = {left} over {p.f}")
                kids = []
                for orb in p.source.orbits():
                    d, _ = sub_gset(p.source, orb)
                    yd = [p.x[a] for a in orb]
                    kids.append((identity_piece(d, yd), O.unit(d, yd)))
                right = O.comp(p, e, kids)
                if right != e:
                    self.add("unitality", f"{e} o units = {right} over {p.f}")

    def check_product(self):
        for p in self.pieces():
            es = set(self.elements(p))
            A = p.source
            for i in range(A.size - 1):
                perm = list(range(A.size))
                perm[i], perm[i + 1] = perm[i + 1], perm[i]
                inv = sorted(range(A.size), key=lambda a: perm[a])
                A2 = relabel_gset(A, perm)
                q = Piece(GMap(A2, p.target, [p.f.map[inv[a]] for a in range(A.size)]),
                          tuple(p.x[inv[a]] for a in range(A.size)), p.y)
                if set(self.elements(q)) != es:
                    self.add("product", f"multimorphisms over {p.f} depend on the labelling")
                    break

    def _triples(self, max_size):
        """Composable A -f-> B -g-> C -h-> W with colors, |A|, |B|, |C| <= max_size."""
        sets = [X for X in self.gsets if X.size <= max_size]
        for W in self.orbits:
            for C in sets:
                for h in equivariant_maps(C, W):
                    for B in sets:
                        for g in equivariant_maps(B, C):
                            for A in sets:
                                for f in equivariant_maps(A, B):
                                    yield W, GMap(C, W, h), GMap(B, C, g), GMap(A, B, f)

    def check_associativity(self, max_size):
        O = self.O
        for W, h, g, f in self._triples(max_size):
            C, B, A = h.source, g.source, f.source
            for w in O.color_maps(W):
                for z in O.color_maps(C):
                    eh_all = O.mul_map(h, z, w)
                    if not eh_all:
                        continue
                    for y in O.color_maps(B):
                        eg_all = O.mul_map(g, y, z)
                        if not eg_all:
                            continue
                        for x in O.color_maps(A):
                            ef_all = O.mul_map(f, x, y)
                            if not ef_all:
                                continue
                            hg, gf, hgf = h.compose(g), g.compose(f), h.compose(g).compose(f)
                            ok_hgf = set(O.mul_map(hgf, x, w))
                            for eh, eg, ef in itertools.product(eh_all, eg_all, ef_all):
                                e_hg = O.comp_map(h, eh, g, eg, y, z, w)
                                e_gf = O.comp_map(g, eg, f, ef, x, y, z)
                                if e_hg not in O.mul_map(hg, y, w) or e_gf not in O.mul_map(gf, x, z):
                                    self.add("composition", f"composite outside its multimorphism set at {g.map}")
                                    continue
                                left = O.comp_map(hg, e_hg, f, ef, x, y, w)
                                right = O.comp_map(h, eh, gf, e_gf, x, z, w)
                                if left not in ok_hgf or right not in ok_hgf:
                                    self.add("composition", f"composite outside its multimorphism set at {f.map}")
                                elif left != right:
                                    self.add("associativity",
                                             f"(h g) f = {left} but h (g f) = {right} for "
                                             f"f={f.map}, g={g.map}, h={h.map}, elements {ef}, {eg}, {eh}")

    def check_base_change(self):
        O = self.O
        orbit_maps = [(W2, GMap(W2, W, hm)) for W in self.orbits for W2 in self.orbits
                      for hm in equivariant_maps(W2, W)]
        by_target: dict = {}
        for W2, h in orbit_maps:
            by_target.setdefault(id(h.target), []).append(h)
        for W in self.orbits:
            for y in O.color_maps(W):
                for h in by_target.get(id(W), []):
                    u2 = O.bc(identity_piece(W, y), h, O.unit(W, y))
                    yh = tuple(y[w] for w in h.map)
                    if u2 != O.unit(h.source, yh):
                        self.add("base-change", f"base change of the unit at {y} along {h.map} is {u2}")
        for p in self.pieces():
            W = p.target
            for e in self.elements(p):
                if O.bc(p, GMap(W, W, range(W.size)), e) != e:
                    self.add("base-change", f"base change along an identity moves {e} over {p.f}")
                for h in by_target.get(id(W), []):
                    q = pull_piece(p, h)
                    e2 = O.bc(p, h, e)
                    if e2 not in self.elements(q):
                        self.add("base-change", f"base change of {e} along {h.map} leaves the multimorphisms")
                        continue
                    for h2 in by_target.get(id(h.source), []):
                        lhs = O.bc(q, h2, e2)
                        rhs = O.bc(p, h.compose(h2), e)
                        if lhs != rhs:
                            self.add("base-change", f"pasting along {h2.map} then {h.map} gives {lhs} != {rhs}")

    def check_naturality(self, max_size):
        """Composites land in the right multimorphism set and commute with base
        change along orbit maps."""
        sets = [X for X in self.gsets if X.size <= max_size]
        for W in self.orbits:
            hs = [GMap(W2, W, hm) for W2 in self.orbits for hm in equivariant_maps(W2, W)]
            for B in sets:
                for gm in equivariant_maps(B, W):
                    g = GMap(B, W, gm)
                    pulled = [self._pull_geometry(g, h) for h in hs]
                    for A in sets:
                        for fm in equivariant_maps(A, B):
                            self._naturality(g, GMap(A, B, fm), hs, pulled)

    @staticmethod
    def _pull_geometry(g, h):
        """g': B' -> W' and, per orbit d of B', (orbit index of B, map d -> that orbit)."""
        B = g.source
        Bp, pb, pg = pullback(g, h)
        b_orbit = {b: i for i, orb in enumerate(B.orbits()) for b in orb}
        kids = []
        for d in Bp.orbits():
            bi = b_orbit[pb.map[d[0]]]
            orb_b = B.orbits()[bi]
            D, _ = sub_gset(Bp, d)
            kids.append((bi, GMap(D, sub_gset(B, orb_b)[0], [orb_b.index(pb.map[q]) for q in d])))
        return GMap(Bp, h.source, pg.map), pb, kids

    def _naturality(self, g, f, hs, pulled):
        O = self.O
        A, B, W = f.source, g.source, g.target
        gf = g.compose(f)
        for w in O.color_maps(W):
            for y in O.color_maps(B):
                egs = O.mul_map(g, y, w)
                if not egs:
                    continue
                gpiece = Piece(g, tuple(y), tuple(w))
                for x in O.color_maps(A):
                    efs = O.mul_map(f, x, y)
                    if not efs:
                        continue
                    whole = Piece(gf, tuple(x), tuple(w))
                    allowed = O.mul(whole)
                    fp = pieces_of(f, x, y)
                    geo = []
                    for h, (g2, pb, kids) in zip(hs, pulled):
                        y2 = tuple(y[b] for b in pb.map)
                        w2 = tuple(w[v] for v in h.map)
                        geo.append((h, Piece(g2, y2, w2),
                                    [(bi, hd, pull_piece(fp[bi], hd)) for bi, hd in kids]))
                    for eg in egs:
                        for ef in efs:
                            e = O.comp_map(g, eg, f, ef, x, y, w)[0]
                            if e not in allowed:
                                self.add("composition", f"composite of {g.map} and {f.map} has no multimorphism")
                                continue
                            for h, gp2, kids in geo:
                                lhs = O.bc(whole, h, e)
                                rhs = O.comp(gp2, O.bc(gpiece, h, eg[0]),
                                             [(q, O.bc(fp[bi], hd, ef[bi])) for bi, hd, q in kids])
                                if lhs != rhs:
                                    self.add("base-change",
                                             f"composition not natural along {h.map}: {lhs} != {rhs}")


def check_colored_axioms(O: SetColoredTOperad, bound: int = 4, assoc_bound: int = 2,
                         limit: int = 3) -> AxiomReport:
    """Unit laws, product (labelling) invariance, base change and composition
    over pieces with source size <= bound; associativity over triples of
    G-sets of size <= assoc_bound.  Raises ValueError on ill-typed data."""
    c = _ColoredChecker(O, bound, limit)
    c.check_units()
    c.check_product()
    c.check_associativity(min(assoc_bound, bound))
    c.check_base_change()
    c.check_naturality(bound)
    order = {a: i for i, a in enumerate(COLORED_AXIOMS)}
    v = sorted(set(c.report.violations), key=lambda t: (order.get(t[0], 99), t[1]))
    return AxiomReport(not v and c.report.passed, v, bound)


# -- operadic nerve -------------------------------------------------------------

class OperadicNerve(DiscreteTOperad):
    """Objects (i, x): a base object [U -> V] and a color x on U.  A morphism over
    psi: [U -> V] -> [U' -> V'] is one multimorphism per orbit of U' for the
    forward leg of psi, with sources colored by restriction of x."""

    def __init__(self, O: SetColoredTOperad, base: UFin):
        super().__init__(base)
        self.O = O
        self.name = f"N({O.name})"
        self._homs: dict = {}
        self._pieces: dict = {}
        self._piece_cache: dict = {}
        self._kids: dict = {}

    @cached_property
    def _objects(self):
        return [(i, c) for i, a in enumerate(self.base.objects) for c in self.O.color_maps(a.u)]

    def objects(self):
        return self._objects

    def base_of(self, x):
        return x[0]

    def _forward(self, psi: SpanMorphism):
        hit = self._pieces.get(psi)
        if hit is None:
            Z, _, back, fwd = psi.apex()
            hit = (Z, back, fwd, psi.tgt.u.orbits())
            self._pieces[psi] = hit
        return hit

    def pieces(self, psi: SpanMorphism, x, y) -> list[Piece]:
        key = (psi, x, y)
        hit = self._piece_cache.get(key)
        if hit is None:
            Z, back, fwd, orbs = self._forward(psi)
            zx = tuple(x[u] for u in back.map)
            hit = [piece_over(fwd, orb, zx, y) for orb in orbs]
            self._piece_cache[key] = hit
        return hit

    def hom(self, a, b):
        key = (a, b)
        if key not in self._homs:
            out = []
            for psi in self.base.hom(a[0], b[0]):
                sets = [self.O.mul(p) for p in self.pieces(psi, a[1], b[1])]
                for t in itertools.product(*sets):
                    out.append(Mor(a, b, psi, tuple(t)))
            self._homs[key] = out
        return self._homs[key]

    def count_homs(self) -> int:
        return self.count_morphisms()

    def identity(self, a):
        psi = identity(self.base.objects[a[0]])
        ps = self.pieces(psi, a[1], a[1])
        return Mor(a, a, psi, tuple(self.O.unit(p.target, p.y) for p in ps))

    def flagged(self, m):
        if not m.base.is_inert:
            return False
        ps = self.pieces(m.base, m.src[1], m.dst[1])
        return all(self.O.is_unit_image(p, e) for p, e in zip(ps, m.data))

    def fiber_isos(self, a):
        out = []
        for s in fiberwise_automorphisms(self.base.objects[a[0]]):
            for m in self.hom_to_any(a, s):
                out.append(m)
        return out

    def hom_to_any(self, a, psi):
        j = self.base.index[psi.tgt]
        return [m for b in self.fiber(j) for m in self.hom_over(a, b, psi) if self.flagged(m)]

    def _children(self, psi1, psi2, x, y, z):
        """Per orbit of the final target: the pulled-back pieces of psi1 feeding
        each orbit of psi2's piece, with the orbit index in psi1's target and
        the orbit map used for base change."""
        key = (psi1, psi2, x, y, z)
        hit = self._kids.get(key)
        if hit is not None:
            return hit
        p1 = self.pieces(psi1, x, y)
        p2 = self.pieces(psi2, y, z)
        Z2, back2, fwd2, orbs_c = self._forward(psi2)
        orbs_b = psi1.tgt.u.orbits()
        b_of = {u: i for i, orb in enumerate(orbs_b) for u in orb}
        hit = []
        for ci, orb in enumerate(orbs_c):
            gp = p2[ci]
            members = [q for q in range(Z2.size) if fwd2.map[q] in set(orb)]
            kids = []
            for sub in gp.source.orbits():
                d_pts = [members[s] for s in sub]
                bi = b_of[back2.map[d_pts[0]]]
                orb_b = orbs_b[bi]
                D, _ = sub_gset(Z2, d_pts)
                hd = GMap(D, p1[bi].target, [orb_b.index(back2.map[q]) for q in d_pts])
                kids.append((bi, hd, pull_piece(p1[bi], hd)))
            hit.append((gp, kids))
        self._kids[key] = hit
        return hit

    def compose(self, g, f):
        x, y, z = f.src[1], f.dst[1], g.dst[1]
        p1 = self.pieces(f.base, x, y)
        bc, comp = self.O.bc, self.O.comp
        out = []
        for ci, (gp, kids) in enumerate(self._children(f.base, g.base, x, y, z)):
            out.append(comp(gp, g.data[ci], [(q, bc(p1[bi], hd, f.data[bi])) for bi, hd, q in kids]))
        return Mor(f.src, g.dst, compose(g.base, f.base), tuple(out))


class _ConstantNerve(OperadicNerve):
    """Fast path when every multimorphism set is empty or the single element 0."""

    def compose(self, g, f):
        psi = compose(g.base, f.base)
        return Mor(f.src, g.dst, psi, (0,) * len(psi.tgt.u.orbits()))

    def identity(self, a):
        psi = identity(self.base.objects[a[0]])
        return Mor(a, a, psi, (0,) * len(psi.tgt.u.orbits()))

    def flagged(self, m):
        if not m.base.is_inert:
            return False
        if len(set(self.O.colors.action[0])) == 1 and self.O.colors.size == 1:
            return True
        return super().flagged(m)


def operadic_nerve(O: SetColoredTOperad, base: UFin | int = 4) -> OperadicNerve:
    if isinstance(base, int):
        base = UFin(O.group, base)
    constant = (type(O) in (UniformColoredOperad, PosetColoredOperad) and O.modulus == 1)
    return (_ConstantNerve if constant else OperadicNerve)(O, base)


def nerve_morphism(N1: OperadicNerve, N2: OperadicNerve):
    """Identity on objects and data: the functor induced by an inclusion of theories."""
    return (lambda a: a), (lambda m: Mor(m.src, m.dst, m.base, m.data))


def colored_to_json(O: SetColoredTOperad, bound: int = 2) -> dict:
    G = O.group
    L = lattice(G)
    colors = {}
    for H in L.representatives:
        colors[L.label(H)] = O.colors.fixed_points(H)
    restrictions = {}
    for K in L.subgroups:
        for H in L.subgroups:
            if K != H and K <= H:
                # C^H sits inside C^K; restriction along G/K -> G/H is this inclusion
                restrictions[f"{L.label(K)}<{L.label(H)}"] = O.colors.fixed_points(H)
    chk = _ColoredChecker(O, bound, 1)
    mul = []
    for p in chk.pieces():
        mul.append({"f": {"source": p.source.to_json(), "target": p.target.to_json(), "map": list(p.f.map)},
                    "x": list(p.x), "y": list(p.y), "elements": len(O.mul(p))})
    comp = []
    for p in chk.pieces():
        for e in O.mul(p):
            kids = []
            for orb in p.source.orbits():
                d, _ = sub_gset(p.source, orb)
                yd = [p.x[a] for a in orb]
                kids.append((identity_piece(d, yd), O.unit(d, yd)))
            comp.append({"g": list(p.f.map), "element": e, "with": "units", "result": O.comp(p, e, kids)})
    return {"name": O.name, "group": G.name, "colors": colors, "restrictions": restrictions,
            "mul": mul, "comp": comp}
