import itertools

import pytest
from hypothesis import given, strategies as st

from eqoperad.groups import FIXTURE_NAMES, lattice, load_group
from eqoperad.gset import GMap, equivariant_maps, fold, gsets_up_to_iso, orbit_gset
from eqoperad.indexing import (BH_CONDITIONS, all_pairs, bar_by_fibers, check_bh, com_operad,
                               enumerate_by_filter, enumerate_indexing_systems, from_blumberg_hill,
                               full_system, generate_closure, hasse, is_indexing_system, join,
                               lattice_to_dot, lattice_to_json, meet, minimal_system, recover_indexing,
                               seeded_bh_violations, to_bar_closure, to_blumberg_hill)

C2, C4, S3 = (load_group(n) for n in ("C2", "C4", "S3"))


def idx(G, label):
    L = lattice(G)
    return next(i for i, H in enumerate(L.subgroups) if L.label(H) == label)


def pair(G, k, h):
    return idx(G, k), idx(G, h)


def test_examples_c4():
    assert is_indexing_system(C4, full_system(C4).pairs)[0]
    assert is_indexing_system(C4, minimal_system(C4).pairs)[0]
    ok, why = is_indexing_system(C4, minimal_system(C4).pairs | {pair(C4, "e", "C4")})
    assert not ok and why.startswith("base change")
    closed = generate_closure(C4, {pair(C4, "e", "C4")})
    assert set(closed.proper_pairs()) == {pair(C4, "e", "H2"), pair(C4, "e", "C4")}
    assert generate_closure(C4, set()) == minimal_system(C4)
    assert generate_closure(C4, full_system(C4).pairs) == full_system(C4)


def test_join_forces_transitivity():
    a = generate_closure(C4, {pair(C4, "e", "H2")})
    b = generate_closure(C4, {pair(C4, "H2", "C4")})
    assert pair(C4, "e", "C4") in join(a, b)
    assert meet(minimal_system(C4), a) == minimal_system(C4)
    assert join(a, a) == a


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_two_oracles_agree(name):
    G = load_group(name)
    fast = enumerate_indexing_systems(G)
    slow = enumerate_by_filter(G)
    assert fast == slow
    assert len(set(fast)) == len(fast)
    assert fast[0] == minimal_system(G) and fast[-1] == full_system(G)


@pytest.mark.parametrize("name", ["C2", "C4", "S3", "C2xC2"])
def test_lattice_laws(name):
    G = load_group(name)
    systems = enumerate_indexing_systems(G)
    known = set(systems)
    for a, b in itertools.product(systems, repeat=2):
        m, j = meet(a, b), join(a, b)
        assert m in known and j in known
        assert m == meet(b, a) and j == join(b, a)
        assert meet(a, join(a, b)) == a and join(a, meet(a, b)) == a
    for i, j in hasse(systems):
        assert systems[i] < systems[j]


@st.composite
def seeds(draw):
    G = load_group(draw(st.sampled_from(["C2", "C4", "S3", "C2xC2", "C6"])))
    pairs = all_pairs(G)
    return G, set(draw(st.lists(st.sampled_from(pairs), max_size=4)))


@given(seeds())
def test_closure_is_a_closure_operator(data):
    G, seed = data
    c = generate_closure(G, seed)
    assert is_indexing_system(G, c.pairs)[0]
    assert seed <= c.pairs
    assert generate_closure(G, c.pairs) == c
    bigger = generate_closure(G, seed | {all_pairs(G)[-1]})
    assert c <= bigger


def test_bh_examples_c2():
    L = lattice(C2)
    e, top = idx(C2, "e"), idx(C2, "C2")
    gens = to_blumberg_hill(minimal_system(C2)).orbit_generators()
    assert gens == {e: [e], top: [top]}
    assert to_blumberg_hill(full_system(C2)).orbit_generators()[top] == [e, top]
    assert len(L) == 2


@pytest.mark.parametrize("G", [C2, C4], ids=lambda G: G.name)
def test_bh_roundtrip(G):
    for I in enumerate_indexing_systems(G):
        F = to_blumberg_hill(I)
        assert check_bh(F).passed
        assert from_blumberg_hill(F) == I
        assert to_bar_closure(I).recover() == I


def test_seeded_bh_violations():
    fams = seeded_bh_violations()
    assert sorted(fams) == list(BH_CONDITIONS[1:])
    for cond, F in fams.items():
        assert check_bh(F).conditions == {cond}
        with pytest.raises(ValueError):
            from_blumberg_hill(F)


@pytest.mark.parametrize("G", [C2, C4, S3], ids=lambda G: G.name)
def test_bar_closure_matches_fiber_generation(G):
    """The pair description of I-bar agrees with admitting maps fiber by fiber."""
    sets = gsets_up_to_iso(G, 3)
    for I in enumerate_indexing_systems(G):
        bar, F = to_bar_closure(I), to_blumberg_hill(I)
        for X, Y in itertools.product(sets, repeat=2):
            for m in equivariant_maps(X, Y):
                f = GMap(X, Y, m)
                assert bar.contains(f) == bar_by_fibers(F, f)


def test_bar_closure_minimal_contains_folds():
    bar = to_bar_closure(minimal_system(C4))
    for H in lattice(C4).representatives:
        O = orbit_gset(C4, H)
        assert bar.contains(fold(O, 2)) and bar.contains(fold(O, 0))


def test_presentations_are_order_isomorphic():
    systems = enumerate_indexing_systems(C4)
    for a, b in itertools.product(systems, repeat=2):
        ga = to_blumberg_hill(a).orbit_generators()
        gb = to_blumberg_hill(b).orbit_generators()
        bh_le = all(set(ga[h]) <= set(gb[h]) for h in ga)
        assert (a <= b) == bh_le


def test_com_bijection_c2():
    systems = enumerate_indexing_systems(C2)
    ops = [com_operad(I, max_size=2) for I in systems]
    assert [recover_indexing(O) for O in ops] == systems
    with pytest.raises(ValueError):
        com_operad(type(systems[0])(C2, frozenset({pair(C2, "e", "C2")})))


def test_serialization():
    systems = enumerate_indexing_systems(C4)
    data = lattice_to_json(C4, systems)
    assert data["group"] == "C4" and len(data["systems"]) == 5
    assert data["hasse"] == [[0, 1], [0, 2], [1, 3], [2, 4], [3, 4]]
    dot = lattice_to_dot(C4, systems)
    assert dot.startswith("digraph") and dot.count("->") == 5 + sum(len(s.proper_pairs()) for s in systems)
