"""Burnside multiplication tables and graph subgroups of G x Sigma_n."""

from __future__ import annotations

from dataclasses import dataclass

from .groups import FiniteGroup, GroupHom, Subgroup, enumerate_homs, lattice, normalizer, symmetric_group
from .gset import GSet, canonical_form, gsets_up_to_iso, orbit_gset, product
from .spans import BurnsideSpan, burnside_compose

METHODS = ("orbits", "double-cosets", "spans")


# -- Burnside tables -------------------------------------------------------------

@dataclass
class BurnsideTable:
    group: FiniteGroup
    method: str
    products: dict          # (i, j) -> tuple of coefficients indexed by class id

    @property
    def basis(self) -> list[str]:
        L = lattice(self.group)
        return [L.label(H) for H in L.representatives]

    def multiply(self, x, y) -> tuple[int, ...]:
        """Product of two elements given as coefficient vectors."""
        n = len(self.basis)
        out = [0] * n
        for i, a in enumerate(x):
            if not a:
                continue
            for j, b in enumerate(y):
                if b:
                    for k, c in enumerate(self.products[i, j]):
                        out[k] += a * b * c
        return tuple(out)

    def basis_vector(self, i: int) -> tuple[int, ...]:
        return tuple(int(k == i) for k in range(len(self.basis)))

    def format_entry(self, coeffs) -> str:
        names = self.basis
        G = self.group.name
        terms = [(f"{c}" if c > 1 else "") + f"[{G}/{names[k]}]" for k, c in enumerate(coeffs) if c]
        return " + ".join(terms) or "0"

    def to_text(self) -> str:
        G = self.group.name
        lines = [f"Burnside ring of {G}, basis " + ", ".join(f"[{G}/{b}]" for b in self.basis)]
        n = len(self.basis)
        for i in range(n):
            for j in range(i, n):
                lines.append(f"[{G}/{self.basis[i]}] * [{G}/{self.basis[j]}] = "
                             + self.format_entry(self.products[i, j]))
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        n = len(self.basis)
        return {"group": self.group.name, "basis": self.basis,
                "products": [{"left": self.basis[i], "right": self.basis[j],
                              "coefficients": dict((self.basis[k], c)
                                                   for k, c in enumerate(self.products[i, j]) if c)}
                             for i in range(n) for j in range(n)]}

    def matrix(self) -> list[list[int]]:
        """Total number of orbits in each product, for plotting."""
        n = len(self.basis)
        return [[sum(self.products[i, j]) for j in range(n)] for i in range(n)]


def _vector(G: FiniteGroup, X: GSet) -> tuple[int, ...]:
    L = lattice(G)
    out = [0] * len(L.classes)
    for orb in X.orbits():
        out[L.class_id(X.stabilizer(orb[0]))] += 1
    return tuple(out)


def _by_orbits(G, H, K):
    return _vector(G, product(orbit_gset(G, H), orbit_gset(G, K))[0])


def double_cosets(G: FiniteGroup, H: Subgroup, K: Subgroup) -> list[int]:
    """Representatives g of the double cosets HgK, found by scanning."""
    seen = set()
    reps = []
    for g in G.elements:
        if g in seen:
            continue
        reps.append(g)
        seen |= {G.mult[G.mult[h][g]][k] for h in H.elements for k in K.elements}
    return reps


def _by_double_cosets(G, H, K):
    L = lattice(G)
    out = [0] * len(L.classes)
    for g in double_cosets(G, H, K):
        inter = set(H.elements) & set(K.conjugate(g).elements)
        out[L.class_id(tuple(inter))] += 1
    return tuple(out)


def _by_spans(G, H, K):
    pt = GSet.point(G)
    a, b = orbit_gset(G, H), orbit_gset(G, K)
    s1 = BurnsideSpan(pt, pt, a, [0] * a.size, [0] * a.size)
    s2 = BurnsideSpan(pt, pt, b, [0] * b.size, [0] * b.size)
    return _vector(G, burnside_compose(s2, s1).z)


def burnside_table(G: FiniteGroup, method: str = "orbits") -> BurnsideTable:
    fn = {"orbits": _by_orbits, "double-cosets": _by_double_cosets, "spans": _by_spans}[method]
    reps = lattice(G).representatives
    prods = {(i, j): fn(G, H, K) for i, H in enumerate(reps) for j, K in enumerate(reps)}
    return BurnsideTable(G, method, prods)


def compare_burnside(G: FiniteGroup) -> list[tuple]:
    """Entries where the three methods disagree."""
    tables = [burnside_table(G, m) for m in METHODS]
    bad = []
    for key in tables[0].products:
        vals = [t.products[key] for t in tables]
        if len(set(vals)) > 1:
            bad.append((key, vals))
    return bad


def check_burnside_laws(T: BurnsideTable) -> list[str]:
    """Associativity, commutativity and unit on basis elements; returns failures."""
    n = len(T.basis)
    unit = n - 1                   # the class of G itself sorts last
    e = [T.basis_vector(i) for i in range(n)]
    bad = []
    for i in range(n):
        if T.products[unit, i] != e[i] or T.products[i, unit] != e[i]:
            bad.append(f"unit fails at {T.basis[i]}")
        for j in range(n):
            if T.products[i, j] != T.products[j, i]:
                bad.append(f"not commutative at {T.basis[i]}, {T.basis[j]}")
            for k in range(n):
                if T.multiply(T.multiply(e[i], e[j]), e[k]) != T.multiply(e[i], T.multiply(e[j], e[k])):
                    bad.append(f"not associative at {T.basis[i]}, {T.basis[j]}, {T.basis[k]}")
    return bad


# -- graph subgroups --------------------------------------------------------------

@dataclass(frozen=True)
class GraphSubgroupClass:
    n: int
    H: Subgroup
    phi: GroupHom           # H.as_group -> Sigma_n

    @property
    def sigma(self) -> FiniteGroup:
        return self.phi.target

    def hset(self) -> GSet:
        """The n-element H-set through phi."""
        perms = self.sigma.perms
        return GSet(self.H.as_group, [perms[self.phi(h)] for h in self.H.as_group.elements])

    def gamma(self) -> list[tuple[int, int]]:
        """The graph {(h, phi(h))} inside G x Sigma_n."""
        return [(self.H.embed(i), self.phi(i)) for i in self.H.as_group.elements]

    def to_json(self) -> dict:
        L = lattice(self.H.parent)
        return {"n": self.n, "H": L.label(self.H), "H_elements": list(self.H.elements),
                "phi": [list(self.sigma.perms[p]) for p in self.phi.image]}


def _twist(H: Subgroup, g: int, image: tuple[int, ...]) -> tuple[int, ...]:
    """phi o c_g for g normalizing H: h -> phi(g^-1 h g)."""
    G = H.parent
    gi = G.inv(g)
    return tuple(image[H.index_of(G.mult[G.mult[gi][H.embed(i)]][g])] for i in range(H.order))


def graph_subgroups(G: FiniteGroup, n: int, H: Subgroup | None = None) -> list[GraphSubgroupClass]:
    """One graph subgroup per (G x Sigma_n)-conjugacy class of Sigma_n-free
    subgroups; with H given, only those projecting to H."""
    S = symmetric_group(n)
    L = lattice(G)
    reps = L.representatives if H is None else [L.representative(H)]
    out = []
    for K in reps:
        N = normalizer(G, K)
        seen = set()
        for phi in enumerate_homs(K.as_group, S, up_to_conjugacy=True):
            if phi.image in seen:
                continue
            orbit = set()
            for g in N.elements:
                tw = _twist(K, g, phi.image)
                orbit.add(min(tuple(S.conj(s, x) for x in tw) for s in S.elements))
            seen |= orbit
            out.append(GraphSubgroupClass(n, K, GroupHom(K.as_group, S, min(orbit))))
    return out


def direct_product(G: FiniteGroup, K: FiniteGroup) -> FiniteGroup:
    """G x K with (g, k) at index g * |K| + k."""
    m = K.order
    mult = [[G.mult[a // m][b // m] * m + K.mult[a % m][b % m] for b in range(G.order * m)]
            for a in range(G.order * m)]
    return FiniteGroup(f"{G.name}x{K.name}", mult, G.identity * m + K.identity)


def sigma_free_subgroup_classes(G: FiniteGroup, n: int) -> int:
    """Oracle: conjugacy classes of subgroups of G x Sigma_n meeting Sigma_n trivially."""
    S = symmetric_group(n)
    P = direct_product(G, S)
    m = S.order
    L = lattice(P)
    count = 0
    for cls in L.classes:
        Gam = L.subgroups[cls[0]]
        if all(x // m != G.identity or x % m == S.identity for x in Gam.elements):
            count += 1
    return count


def hset_classes(G: FiniteGroup, H: Subgroup, n: int, modulo_weyl: bool = False) -> int:
    """Oracle: isomorphism classes of n-element H-sets (optionally identified
    under twisting by the normalizer of H)."""
    Hg = H.as_group
    sets = gsets_up_to_iso(Hg, n, n)
    if not modulo_weyl:
        return len(sets)
    N = normalizer(H.parent, H)
    keys = set()
    for X in sets:
        variants = []
        for g in N.elements:
            gi = H.parent.inv(g)
            act = [X.action[H.index_of(H.parent.mult[H.parent.mult[gi][H.embed(i)]][g])]
                   for i in range(H.order)]
            variants.append(canonical_form(GSet(Hg, act)).key)
        keys.add(min(variants))
    return len(keys)


@dataclass
class CorrespondenceCell:
    H: str
    n: int
    envelope: int | None
    graph: int
    hsets: int
    hsets_plain: int
    homs_ok: bool | None

    @property
    def status(self) -> str:
        if self.envelope is None:
            return "skipped"
        ok = self.envelope == self.graph == self.hsets and self.homs_ok
        return "agree" if ok else "disagree"

    def to_json(self) -> dict:
        return {"H": self.H, "n": self.n, "envelope": self.envelope, "graph_subgroups": self.graph,
                "hsets": self.hsets, "hsets_plain": self.hsets_plain, "homs_ok": self.homs_ok,
                "status": self.status}


def _centralizer_size(phi: GroupHom) -> int:
    S = phi.target
    return sum(1 for s in S.elements if all(S.conj(s, x) == x for x in phi.image))


def envelope_triv_correspondence(G: FiniteGroup, bound: int = 3, max_size: int | None = None):
    """Per orbit G/H and arity n <= bound, compare envelope objects, graph-subgroup
    classes and H-set classes (modulo the Weyl twist).  Cells whose objects need
    more than ``max_size`` points (default min(bound * |G|, 6)) report envelope=None.
    The hom check compares endomorphisms over the identity with the
    centralizer of phi(H) in Sigma_n."""
    from .operad import envelope, orbit_targets, triv_operad_plain
    from .spans import UFin
    L = lattice(G)
    size = max_size if max_size is not None else min(bound * G.order, 6)
    base = UFin(G, size)
    env = envelope(triv_operad_plain(base), orbit_targets(base))
    counts = env.arity_counts()
    # endomorphism counts over the identity, keyed by (class, arity)
    endo: dict = {}
    for s in env.objects():
        t = s[1].tgt
        if not (t.u == t.v and t.v.is_transitive()):
            continue
        n_over = sum(1 for m in env.hom(s, s) if m.base == _identity_of(t))
        cid = L.class_id(t.v.stabilizer(0))
        endo.setdefault((cid, _arity(s[1])), []).append(n_over)
    cells = []
    for cid, H in enumerate(L.representatives):
        idx = G.order // H.order
        for n in range(bound + 1):
            graph = graph_subgroups(G, n, H)
            in_range = n * idx <= size
            env_count = counts.get((cid, n), 0) if in_range else None
            homs_ok = None
            if in_range:
                expected = sorted(_centralizer_size(c.phi) for c in graph)
                seen = sorted(endo.get((cid, n), []))
                homs_ok = expected == seen
            cells.append(CorrespondenceCell(L.label(H), n, env_count, len(graph),
                                            hset_classes(G, H, n, True), hset_classes(G, H, n), homs_ok))
    return cells


def _identity_of(a):
    from .spans import identity
    return identity(a)


def _arity(alpha) -> int:
    """Size of the fiber of alpha: [U -> G/H] -> [G/H = G/H] over the basepoint."""
    a = alpha.src
    return sum(1 for u in range(a.u.size) if a.f[u] == 0)
