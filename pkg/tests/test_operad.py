import random
from importlib import resources

import pytest

from eqoperad.groups import load_group
from eqoperad.indexing import com_operad, enumerate_indexing_systems, minimal_system
from eqoperad.operad import (AXIOMS, ClearFlags, ComOperad, DeleteFlag, DuplicateObject, ExplicitOperad,
                             Mor, check_cocartesian_fibration, check_operad_axioms, check_simplified,
                             com_operad_all, e0_operad, envelope, full_on_classes, is_operad_morphism,
                             is_suboperad, is_unital, load_operad, mul_set, orbit_targets, random_poset_category,
                             sieves, suboperad_check, triv_operad, triv_operad_plain,
                             underlying_cocart_comparison)
from eqoperad.spans import UFin

C2 = load_group("C2")
B3 = UFin(C2, 3)
B2 = UFin(C2, 2)


@pytest.mark.parametrize("make", [com_operad_all, triv_operad_plain, e0_operad])
def test_basic_operads_pass(make):
    O = make(B3)
    r = check_operad_axioms(O)
    assert r.passed, r.violations
    assert r.bound == 3


def test_simplified_criterion_on_cocartesian_instances():
    # truncation: targets |X| <= 2, arity <= 2, over a base bounded by their product
    env = envelope(triv_operad_plain(UFin(C2, 4)), max_target=2, max_arity=2)
    for O in (com_operad_all(B3), env):
        assert check_simplified(O).passed and check_operad_axioms(O).passed
    assert check_cocartesian_fibration(env).passed
    broken = DeleteFlag(env, _inert_non_identity(env))
    assert not check_operad_axioms(broken).passed and not check_simplified(broken).passed


def test_minimal_com_is_not_cocartesian():
    # the norm [0 -> C2/C2] -> [C2/e -> C2/C2] has no lift without e->C2
    O = com_operad(minimal_system(C2), base=B3)
    assert check_operad_axioms(O).passed
    assert check_simplified(O).axioms == {"cocartesian-lift"}


def test_unitality():
    # uFin is unital and Triv is not
    assert is_unital(com_operad_all(B3))
    assert not is_unital(triv_operad_plain(B3))
    assert is_unital(e0_operad(B3))


def _inert_non_identity(O):
    for x in O.objects():
        for y in O.objects():
            if x != y:
                for m in O.hom(x, y):
                    if O.flagged(m):
                        return m
    raise AssertionError("no inert morphism found")


def test_deleted_flag_fails_cocartesian_lift():
    com = com_operad_all(B2)
    mutant = DeleteFlag(com, _inert_non_identity(com))
    r = check_operad_axioms(mutant)
    assert not r.passed and "cocartesian-lift" in r.axioms
    assert not check_simplified(mutant).passed


def test_cleared_flags_fail():
    r = check_operad_axioms(ClearFlags(com_operad_all(B2)))
    assert "cocartesian-lift" in r.axioms


def test_duplicated_object_fails_segal():
    com = com_operad_all(B2)
    x = next(x for x in com.objects() if len(B2.objects[x].u.orbits()) == 2)
    mutant = DuplicateObject(com, x)
    r = check_operad_axioms(mutant)
    assert r.axioms == {"segal"}
    assert not check_simplified(mutant).passed


def test_raw_subset_fails_decomposition():
    def admits(m):
        return not (m.is_active and m.is_fiberwise and m.tgt.v.size == 1 and m.src.u.size == 3
                    and m.tgt.u.size == 2 and len(set(m.forward_values())) == 2
                    and all(len(o) == 1 for o in m.tgt.u.orbits()))
    r = check_operad_axioms(ComOperad(B3, admits, "raw"))
    assert "decomposition-3prime" in r.axioms
    assert set(r.axioms) <= set(AXIOMS)


def test_shipped_broken_fixture():
    path = resources.files("eqoperad").joinpath("data", "operads", "broken.json")
    O = load_operad(str(path))
    r = check_operad_axioms(O)
    assert r.axioms == {"segal"}
    roundtrip = ExplicitOperad.from_json(O.to_json())
    assert len(roundtrip.objects()) == len(O.objects())


def test_malformed_operad_rejected(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"group": "C2"}')
    with pytest.raises(ValueError):
        load_operad(bad)
    bad.write_text("{not json")
    with pytest.raises(ValueError):
        load_operad(bad)


def test_materialize_roundtrip():
    com = com_operad_all(B2)
    E = ExplicitOperad.materialize(com)
    assert check_operad_axioms(E).passed
    assert E.count_morphisms() == com.count_morphisms() == B2.count_homs()


def test_operad_morphisms():
    com, triv = com_operad_all(B3), triv_operad_plain(B3)
    assert is_operad_morphism(com, com)
    assert is_operad_morphism(triv, com)
    # Com_{min} <= Com_I <= Com for every I
    for I in enumerate_indexing_systems(C2):
        O = com_operad(I, base=B3)
        assert is_suboperad(O, com)
        assert is_operad_morphism(O, com)
    # a morphism map that ignores the base is rejected as malformed
    with pytest.raises(ValueError):
        is_operad_morphism(com, com, fmor=lambda m: Mor(m.src, m.dst, B3.hom(m.src, m.dst)[0]))


def test_collapsing_functor_is_not_inert_preserving():
    # Triv -> Com_I with flags compared against a structure that flags nothing but identities
    com = com_operad_all(B2)
    assert not is_operad_morphism(com, ClearFlags(com))


def test_mul_sets():
    com, triv = com_operad_all(B3), triv_operad_plain(B3)
    for j in B3.orbit_objects():
        for i in range(len(B3)):
            for alpha in B3.hom(i, j):
                if not (alpha.is_active and alpha.is_fiberwise):
                    continue
                assert len(mul_set(com, alpha, i, j).elements) == 1
                expected = 1 if alpha.is_iso else 0
                assert len(mul_set(triv, alpha, i, j).elements) == expected
    chi = next(m for m in com.all_morphisms() if m.base.is_inert and not m.base.is_fiberwise)
    with pytest.raises(ValueError):
        mul_set(com, chi.base, chi.src, chi.dst)


def test_triv_of_poset_fiber_products():
    rng = random.Random(7)
    for _ in range(5):
        C = random_poset_category(C2, rng)
        C.validate()
        T = triv_operad(B2, C)
        for i in range(len(B2)):
            assert len(T.fiber(i)) == T.orbit_fiber_product(i)
        assert check_operad_axioms(T).passed


def test_sieves_of_c2():
    S = sieves(C2)
    assert len(S) == 3
    triv = triv_operad_plain(B3)
    for s in S:
        assert check_operad_axioms(full_on_classes(triv, s)).passed


def test_suboperad_check():
    com = com_operad_all(B2)
    assert suboperad_check(com, keep_morphism=lambda m: m.base.is_inert).passed
    with pytest.raises(ValueError):
        # drops identities
        suboperad_check(com, keep_morphism=lambda m: not m.base.is_iso)


def test_envelope_of_triv():
    base = UFin(C2, 4)
    env = envelope(triv_operad_plain(base), orbit_targets(base))
    assert check_cocartesian_fibration(env).passed
    # the envelope of Triv is the cocartesian part of uFin
    assert underlying_cocart_comparison(env) == []


def test_minimal_com_is_fold_maps():
    I = minimal_system(C2)
    O = com_operad(I, base=B3)
    for i in range(len(B3)):
        for j in range(len(B3)):
            admitted = {m.base for m in O.hom(i, j)}
            for m in B3.hom(i, j):
                Z, _, _, fwd = m.apex()
                X = m.tgt.u
                folds = all(len(Z.orbit_of(z)) == len(X.orbit_of(fwd.map[z])) for z in range(Z.size))
                assert (m in admitted) == folds
