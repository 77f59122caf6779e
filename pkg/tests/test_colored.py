import random

import pytest

from eqoperad import colored
from eqoperad.groups import load_group
from eqoperad.indexing import IndexingSystem, enumerate_indexing_systems, full_system, minimal_system
from eqoperad.operad import check_operad_axioms, random_poset_category, triv_operad_plain
from eqoperad.spans import UFin

C2 = load_group("C2")


def instances(G):
    return [colored.commutative_colored(G), colored.triv_colored(G),
            colored.commutative_colored(G, 2),
            colored.PosetColoredOperad(random_poset_category(G, random.Random(0)))]


@pytest.mark.parametrize("O", instances(C2), ids=lambda O: O.name)
def test_instances_satisfy_axioms(O):
    assert check_colored_axioms_passes(O)


def check_colored_axioms_passes(O):
    r = colored.check_colored_axioms(O, bound=3)
    return r.passed and not r.violations


def test_seeded_mutations_caught_individually():
    for axiom, O in colored.seeded_colored_mutations(C2).items():
        r = colored.check_colored_axioms(O, bound=3)
        assert not r.passed
        assert {a for a, _ in r.violations} == {axiom}


def test_nerve_of_com_is_the_base():
    B = UFin(C2, 3)
    N = colored.operadic_nerve(colored.commutative_colored(C2), B)
    assert len(N.objects()) == len(B) == 8
    assert N.count_homs() == B.count_homs()


def test_nerve_of_triv_matches_plain_triv():
    B = UFin(C2, 3)
    N = colored.operadic_nerve(colored.triv_colored(C2), B)
    T = triv_operad_plain(B)
    plain = sum(len(T.hom(a, b)) for a in T.objects() for b in T.objects())
    assert N.count_homs() == plain


def test_nerve_of_z2_theory_counts_labels():
    """Each base morphism carries one Z/2 label per orbit of its target."""
    B = UFin(C2, 3)
    N = colored.operadic_nerve(colored.commutative_colored(C2, 2), B)
    expected = sum(2 ** len(m.tgt.u.orbits()) for _, _, m in B.morphisms())
    assert N.count_homs() == expected > B.count_homs()


@pytest.mark.parametrize("O", instances(C2)[:3], ids=lambda O: O.name)
def test_nerves_are_operads(O):
    N = colored.operadic_nerve(O, 2)
    assert check_operad_axioms(N).passed


def test_colored_from_indexing():
    for I in enumerate_indexing_systems(C2):
        assert check_colored_axioms_passes(colored.colored_from_indexing(I))
    bad = IndexingSystem(load_group("C4"), frozenset(minimal_system(load_group("C4")).pairs | {(0, 2)}))
    with pytest.raises(ValueError):
        colored.colored_from_indexing(bad)


def test_full_indexing_gives_com():
    O = colored.colored_from_indexing(full_system(C2))
    N1 = colored.operadic_nerve(O, 3)
    N2 = colored.operadic_nerve(colored.commutative_colored(C2), 3)
    assert N1.count_homs() == N2.count_homs()


def test_colored_to_json():
    data = colored.colored_to_json(colored.commutative_colored(C2, 2))
    assert data["group"] == "C2" and data["name"] == "Com[Z/2]"
    assert data["mul"] and all(m["elements"] == 2 for m in data["mul"])
    assert all(c["result"] == c["element"] for c in data["comp"])
