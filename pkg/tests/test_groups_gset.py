import itertools

import pytest
from hypothesis import given, strategies as st

from eqoperad.groups import (FIXTURE_NAMES, all_fixture_groups, enumerate_homs, lattice,
                             load_group, normalizer, symmetric_group, weyl_group)
from eqoperad.gset import (GMap, GSet, canonical_form, coproduct, fold, gsets_up_to_iso,
                           is_isomorphic_bruteforce, is_summand_inclusion, orbit_decomposition,
                           orbit_gset, product, pullback, relabel_gset)

# subgroup counts and conjugacy class counts, known from the group structure
LATTICE_SIZES = {"trivial": (1, 1), "C2": (2, 2), "C3": (2, 2), "C4": (3, 3), "C2xC2": (5, 5),
                 "C6": (4, 4), "S3": (6, 4), "Q8": (6, 6)}


def test_fixture_order():
    assert [G.name for G in all_fixture_groups()] == list(FIXTURE_NAMES)
    assert [G.order for G in all_fixture_groups()] == [1, 2, 3, 4, 4, 6, 6, 8]


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_lattice_sizes(name):
    G = load_group(name)
    G.validate()
    L = lattice(G)
    assert (len(L), len(L.classes)) == LATTICE_SIZES[name]
    for H in L:
        assert H.is_valid()
        assert G.order % H.order == 0


def test_unknown_group():
    with pytest.raises(KeyError):
        load_group("D8")


def test_weyl_groups_s3():
    G = load_group("S3")
    L = lattice(G)
    orders = {L.label(H): weyl_group(G, H).order for H in L.representatives}
    # N(C2) = C2, N(C3) = S3
    assert orders == {"e": 6, "H2_0": 1, "H3": 2, "S3": 1}
    assert normalizer(G, L.representatives[1]).order == 2


def test_homs_c2_to_sigma3():
    S = symmetric_group(3)
    C2 = load_group("C2")
    assert len(enumerate_homs(C2, S)) == 4
    assert len(enumerate_homs(C2, S, up_to_conjugacy=True)) == 2


def gset_strategy(names=("C2", "C4", "S3", "C2xC2")):
    @st.composite
    def build(draw):
        G = load_group(draw(st.sampled_from(names)))
        reps = lattice(G).representatives
        parts = draw(st.lists(st.sampled_from(reps), min_size=0, max_size=3))
        X = coproduct(*[orbit_gset(G, H) for H in parts])[0] if parts else GSet.empty(G)
        perm = draw(st.permutations(range(X.size)))
        return relabel_gset(X, perm)
    return build()


@given(gset_strategy())
def test_canonical_form_is_invariant(X):
    X.validate()
    c = canonical_form(X)
    assert sorted(c.relabel) == list(range(X.size))
    assert relabel_gset(X, c.relabel) == c.gset
    Y = relabel_gset(X, list(reversed(range(X.size))))
    assert canonical_form(Y).gset == c.gset


@given(gset_strategy(("C2", "S3")), gset_strategy(("C2", "S3")))
def test_canonical_key_matches_bruteforce(X, Y):
    if X.group is not Y.group or X.size > 6 or Y.size > 6:
        return
    same = canonical_form(X).key == canonical_form(Y).key
    assert same == is_isomorphic_bruteforce(X, Y)


@given(gset_strategy(), st.data())
def test_product_and_pullback(X, data):
    G = X.group
    H = data.draw(st.sampled_from(lattice(G).representatives))
    Y = orbit_gset(G, H)
    P, p1, p2 = product(X, Y)
    assert P.size == X.size * Y.size
    assert p1.is_equivariant() and p2.is_equivariant()
    assert sum(len(o.points) for o in orbit_decomposition(P)) == P.size
    # pullback along the fold of the product over the point agrees in size
    f = GMap(X, GSet.point(G), [0] * X.size)
    g = GMap(Y, GSet.point(G), [0] * Y.size)
    assert pullback(f, g)[0].size == P.size


def test_gsets_up_to_iso_counts():
    # C2: sizes 0..2 give {0}, {*}, {2*, C2/e}
    assert len(gsets_up_to_iso(load_group("C2"), 2)) == 4
    # brute-force oracle on C4 up to size 4
    G = load_group("C4")
    sets = gsets_up_to_iso(G, 4)
    for X, Y in itertools.combinations(sets, 2):
        assert not is_isomorphic_bruteforce(X, Y)


def test_fold_is_not_a_summand_inclusion():
    X = orbit_gset(load_group("C2"), lattice(load_group("C2")).representatives[0])
    nabla = fold(X, 2)
    assert nabla.is_equivariant()
    assert not is_summand_inclusion(nabla)
    assert fold(X, 0).source.size == 0
