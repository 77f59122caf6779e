import pytest
from hypothesis import given, strategies as st

from eqoperad.equivariant import (burnside_table, check_burnside_laws, compare_burnside,
                                  envelope_triv_correspondence, graph_subgroups, hset_classes,
                                  sigma_free_subgroup_classes)
from eqoperad.groups import FIXTURE_NAMES, lattice, load_group
from eqoperad.gset import orbit_gset

GROUPS = {n: load_group(n) for n in FIXTURE_NAMES}


def marks(G, v):
    """Fixed-point counts of a virtual G-set given by coefficients on orbit classes."""
    L = lattice(G)
    reps = L.representatives
    return tuple(sum(c * orbit_gset(G, K).fixed_points(H).__len__() for c, K in zip(v, reps))
                 for H in reps)


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_methods_agree_and_laws_hold(name):
    G = GROUPS[name]
    assert compare_burnside(G) == []
    T = burnside_table(G)
    assert check_burnside_laws(T) == []
    assert all(c >= 0 for v in T.products.values() for c in v)


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_table_of_marks_is_multiplicative(name):
    """Fixed points of a product are products of fixed points."""
    G = GROUPS[name]
    T = burnside_table(G, "spans")
    n = len(T.basis)
    for i in range(n):
        for j in range(n):
            a, b = marks(G, T.basis_vector(i)), marks(G, T.basis_vector(j))
            assert marks(G, T.products[i, j]) == tuple(x * y for x, y in zip(a, b))


def test_examples():
    T = burnside_table(GROUPS["C2"])
    assert T.format_entry(T.products[0, 0]) == "2[C2/e]"
    S = burnside_table(GROUPS["S3"], "double-cosets")
    c2 = next(i for i, H in enumerate(lattice(S.group).representatives) if H.order == 2)
    assert S.format_entry(S.products[c2, c2]) == f"[S3/e] + [S3/{S.basis[c2]}]"
    for G in GROUPS.values():
        T = burnside_table(G)
        top = len(T.basis) - 1
        assert T.basis[top] == G.name or lattice(G).representatives[top].order == G.order
        for i in range(len(T.basis)):
            assert T.products[top, i] == T.basis_vector(i)


@given(st.sampled_from(["C2", "C4", "S3", "C2xC2", "C6"]), st.data())
def test_ring_laws_on_random_elements(name, data):
    T = burnside_table(GROUPS[name])
    n = len(T.basis)
    vec = st.lists(st.integers(0, 3), min_size=n, max_size=n).map(tuple)
    x, y, z = data.draw(vec), data.draw(vec), data.draw(vec)
    assert T.multiply(x, y) == T.multiply(y, x)
    assert T.multiply(T.multiply(x, y), z) == T.multiply(x, T.multiply(y, z))
    total = tuple(a + b for a, b in zip(y, z))
    assert T.multiply(x, total) == tuple(a + b for a, b in zip(T.multiply(x, y), T.multiply(x, z)))


def test_graph_subgroup_examples():
    C2 = GROUPS["C2"]
    L = lattice(C2)
    e, top = L.representatives
    assert len(graph_subgroups(C2, 2)) == 3
    assert len(graph_subgroups(C2, 2, top)) == 2 and len(graph_subgroups(C2, 2, e)) == 1
    for H in L.representatives:
        assert len(graph_subgroups(C2, 0, H)) == 1
        assert len(graph_subgroups(C2, 1, H)) == 1
    for n in range(4):
        assert len(graph_subgroups(GROUPS["trivial"], n)) == 1


@pytest.mark.parametrize("name,max_n", [("C2", 4), ("C3", 3), ("C4", 3), ("S3", 3), ("C2xC2", 2)])
def test_graph_subgroups_dual_enumeration(name, max_n):
    G = GROUPS[name]
    L = lattice(G)
    for n in range(max_n + 1):
        classes = graph_subgroups(G, n)
        assert len(classes) == sigma_free_subgroup_classes(G, n)
        for H in L.representatives:
            assert len(graph_subgroups(G, n, H)) == hset_classes(G, H, n, modulo_weyl=True)
        for c in classes:
            gam = c.gamma()
            assert len(gam) == c.H.order
            # meets Sigma_n trivially: the only element over the identity of G is the identity
            assert [s for h, s in gam if h == G.identity] == [c.sigma.identity]
            assert c.hset().size == n


def test_envelope_correspondence_c2():
    cells = envelope_triv_correspondence(GROUPS["C2"], bound=3)
    by = {(c.H, c.n): c for c in cells}
    assert by["C2", 2].envelope == by["C2", 2].graph == by["C2", 2].hsets == 2
    assert by["C2", 3].envelope == 2
    assert all(by[H, 1].graph == 1 for H in ("e", "C2"))
    assert all(c.status == "agree" for c in cells)
