import pytest
from hypothesis import given, strategies as st

from eqoperad.groups import FIXTURE_NAMES, lattice, load_group
from eqoperad.gset import GSet, coproduct, fold, orbit_gset
from eqoperad.spans import (DROPPED, ArrowObject, SpanMorphism, UFin, active_left_cancellation_counterexample,
                            burnside_compose, burnside_hom_set, burnside_identity, characteristic_morphism,
                            compose, factorization_failures, factorize, identity, is_cocartesian_shaped,
                            left_cancellation_failures, pointing, right_cancellation_failures,
                            split_epi_category, verify_atomic_orbital)

C2 = load_group("C2")
BASE = UFin(C2, 3)


def orbit(G, label):
    L = lattice(G)
    return orbit_gset(G, next(H for H in L.representatives if L.label(H) == label))


def test_ufin_c2_object_counts():
    # over C2/C2: C2-sets of size <= 3 (0, *, 2*, C2/e, 3*, * + C2/e) -> 6
    # over C2/e: e-sets of size <= 1 as fibers (U = 0 or C2/e) -> 2
    assert len(BASE) == 8
    assert len(UFin(C2, 4)) == 12


def morphisms(cat):
    return [m for _, _, m in cat.morphisms()]


MORS = morphisms(BASE)


@st.composite
def composable(draw, length=3):
    n = len(BASE)
    chain = []
    i = draw(st.integers(0, n - 1))
    for _ in range(length):
        j = draw(st.integers(0, n - 1))
        homs = BASE.hom(i, j)
        if not homs:
            j = i
            homs = BASE.hom(i, i)
        chain.append(draw(st.sampled_from(homs)))
        i = j
    return chain


@given(composable())
def test_composition_associative_and_unital(chain):
    f, g, h = chain
    assert compose(h, compose(g, f)) == compose(compose(h, g), f)
    assert compose(f, identity(f.src)) == f
    assert compose(identity(f.tgt), f) == f
    compose(g, f).validate()


@given(composable(2))
def test_class_closure(chain):
    f, g = chain
    c = compose(g, f)
    if f.is_inert and g.is_inert:
        assert c.is_inert
    if f.is_active and g.is_active:
        assert c.is_active
    if f.is_fiberwise and g.is_fiberwise:
        assert c.is_fiberwise


@given(st.sampled_from(MORS))
def test_factorization_composes_back(m):
    i, a = factorize(m)
    assert i.is_inert and a.is_active and a.is_fiberwise
    assert compose(a, i) == m
    assert factorize(m, mode="fiberwise") == (i, a)
    if m.is_inert:
        # inert input factors as (input, identity) up to the iso onto the apex
        assert a.is_iso


def test_factorize_rejects_unknown_mode():
    with pytest.raises(ValueError):
        factorize(MORS[0], mode="bogus")


def test_inert_and_active_iff_cocartesian():
    for m in MORS:
        assert (m.is_inert and m.is_active) == is_cocartesian_shaped(m)


def test_factorization_system_checks():
    assert factorization_failures(BASE) == []
    assert right_cancellation_failures(BASE) == []
    assert left_cancellation_failures(BASE, fiberwise=True) == []


def test_plain_active_factorization_is_not_unique():
    # the base of an empty middle object is unconstrained
    assert factorization_failures(BASE, fiberwise=False)


def test_active_left_cancellation_counterexample():
    f, g = active_left_cancellation_counterexample(C2)
    f.validate()
    g.validate()
    assert g.is_active and compose(g, f).is_active and not f.is_active
    assert f.zm == (DROPPED,) and g.tgt.v.size == 0
    # exhaustive search in the big base finds the same phenomenon
    big = UFin(C2, 1, big=True, max_base=1)
    assert left_cancellation_failures(big)
    assert left_cancellation_failures(big, fiberwise=True) == []


def test_characteristic_morphisms():
    G = C2
    free, pt = orbit(G, "e"), orbit(G, "C2")
    U, _ = coproduct(free, pt)
    a = ArrowObject(U, pt, [0] * U.size)
    for W in U.orbits():
        chi = characteristic_morphism(a, W)
        chi.validate()
        assert chi.is_inert and not chi.is_active or len(U.orbits()) == 1
        assert chi.tgt.u.size == len(W)
    chi = characteristic_morphism(a, U.orbits()[0])
    assert chi.tgt == ArrowObject(free, free, range(2))
    with pytest.raises(ValueError):
        characteristic_morphism(a, (0, 2))
    for i in range(len(BASE)):
        for W in BASE.objects[i].u.orbits():
            assert BASE.characteristic(i, W).is_inert


def test_pointing_of_fold():
    X = orbit(C2, "e")
    nabla = fold(X, 2)
    a = ArrowObject(nabla.source, orbit(C2, "C2"), [0] * 4)
    b = ArrowObject(X, a.v, [0] * 2)
    p = pointing(a, b, nabla)
    assert p.is_active and not p.is_inert and p.is_fiberwise
    # pointing is functorial
    c = ArrowObject(GSet.point(C2), a.v, [0])
    q = pointing(b, c, [0, 0])
    assert compose(q, p) == pointing(a, c, [0] * 4)


def test_pointing_rejects_map_off_the_base():
    X = orbit(C2, "e")
    a = ArrowObject(X, X, [0, 1])
    with pytest.raises(ValueError):
        pointing(a, a, [1, 0])


def test_malformed_span_rejected():
    pt = GSet.point(C2)
    a = ArrowObject(pt, pt, [0])
    with pytest.raises(ValueError):
        SpanMorphism(a, a, (0,), (3,)).validate()


def test_burnside_spans_small():
    A, B = orbit(C2, "e"), orbit(C2, "C2")
    spans = burnside_hom_set(A, B, 2)
    idA = burnside_identity(A)
    for s in spans:
        assert burnside_compose(s, idA) == s
    assert len(spans) == len(set(spans))


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_atomic_orbital_fixtures(name):
    r = verify_atomic_orbital(load_group(name))
    assert r.passed and r.pullbacks_ok and r.retracts_ok and r.witness is None
    assert r.checked > 0


def test_atomic_fails_on_split_epi():
    cat = split_epi_category()
    cat.validate()
    r = verify_atomic_orbital(cat)
    assert not r.passed and not r.retracts_ok
    assert r.witness.startswith("s: A -> B")
