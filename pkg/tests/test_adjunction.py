import pytest

from catq.adjunction import (
    LEMMA_PAIRS,
    Adjunction,
    adjunction_from_universal_morphisms,
    compose_adjunctions,
    identity_adjunction,
    is_adjoint_equivalence,
    lemma_properties_report,
    verify_adjunction,
)
from catq.errors import NotAdjoint, NotUniversal
from catq.functor import NatTransformation, functor_props, identity_functor, inclusion
from catq.instances import chain, galois_instance, named_fixtures, regsierp, sierpinski
from catq.reflection import composite_adjunction, find_coreflector, find_reflector

import oracles

F_GOOD = {"0": "0", "1": "1", "2": "1"}
F_BAD = {"0": "0", "1": "0", "2": "1"}
G_MAP = {"0": "0", "1": "2"}


def test_identity_adjunction_from_universal_family():
    C = chain(3)
    Id = identity_functor(C)
    adj = adjunction_from_universal_morphisms(Id, {x: (x, C.id(x)) for x in C.objects})
    assert verify_adjunction(adj).holds
    assert adj.left == Id
    assert all(C.is_identity(adj.counit[x]) for x in C.objects)
    assert is_adjoint_equivalence(identity_adjunction(C)).holds


def test_non_universal_family_is_rejected():
    S = sierpinski()
    J = inclusion(S.reflective)
    C = S.ambient
    fam = {x: ("{1,2}", C.hom(x, "{1,2}")[0]) for x in C.objects}
    with pytest.raises(NotUniversal) as ei:
        adjunction_from_universal_morphisms(J, fam)
    assert ei.value.witness == ("{}",)


def test_sierpinski_closure_matches_set_closure():
    S = sierpinski()
    C = S.ambient
    closed = [frozenset(), frozenset({2}), frozenset({1, 2})]
    refl = find_reflector(C, S.reflective)
    names = {oracles.name(s): s for s in oracles.subsets([1, 2])}
    for x in C.objects:
        assert refl.reflector.ob(x) == oracles.name(oracles.closure(names[x], closed))
    # the reflector's action on all nine morphisms is the monotone closure map
    for f in C.morphisms:
        N = refl.reflector
        assert refl.sub.category.dom(N.mor(f)) == N.ob(C.dom(f))
        assert refl.sub.category.cod(N.mor(f)) == N.ob(C.cod(f))
    assert len(C.morphisms) == 9


def test_galois_pair_valid_and_invalid():
    C3, C2 = chain(3), chain(2)
    assert oracles.galois_biconditional_failures(C3, C2, F_GOOD, G_MAP) == []
    adj = galois_instance(C3, C2, F_GOOD, G_MAP)
    assert verify_adjunction(adj).holds
    fails = oracles.galois_biconditional_failures(C3, C2, F_BAD, G_MAP)
    assert fails
    with pytest.raises(NotAdjoint) as ei:
        galois_instance(C3, C2, F_BAD, G_MAP)
    assert ei.value.witness == fails[0]
    same = galois_instance(C3, C3, {x: x for x in C3.objects}, {x: x for x in C3.objects})
    assert is_adjoint_equivalence(same).holds


def test_left_adjoint_reconstructed_from_right_adjoint():
    C3, C2 = chain(3), chain(2)
    G = galois_instance(C3, C2, F_GOOD, G_MAP).right
    candidates = [f for f in oracles.monotone_maps(C3, C2)
                  if not oracles.galois_biconditional_failures(C3, C2, f, G_MAP)]
    assert candidates == [F_GOOD]
    family = {}
    from catq.comma import universal_from
    for x in C3.objects:
        u = universal_from(x, G)
        family[x] = (u.obj, u.arrow)
    adj = adjunction_from_universal_morphisms(G, family)
    assert {x: adj.left.ob(x) for x in C3.objects} == F_GOOD


def test_corrupted_unit_fails_verification():
    S = sierpinski()
    adj = find_reflector(S.ambient, S.reflective).adjunction
    comps = dict(adj.unit.components)
    # θ_{} should be the identity of {}; point it at the top instead
    comps["{}"] = "{}<={1,2}"
    bad = Adjunction(adj.left, adj.right,
                     NatTransformation(adj.unit.source, adj.unit.target, comps, "θ'"), adj.counit, "bad")
    rep = verify_adjunction(bad)
    assert not rep.holds
    assert rep.first_failure().witness


def test_composites_verify_on_fixtures():
    for b in named_fixtures().values():
        refl = find_reflector(b.ambient, b.reflective)
        corefl = find_coreflector(b.ambient, b.coreflective)
        comp = composite_adjunction(refl, corefl)
        assert verify_adjunction(comp).holds
        assert verify_adjunction(refl.adjunction).holds
        assert verify_adjunction(corefl.adjunction).holds


def test_compose_with_identity_adjunction():
    S = sierpinski()
    adj = find_reflector(S.ambient, S.reflective).adjunction
    left = compose_adjunctions(identity_adjunction(S.ambient), adj)
    right = compose_adjunctions(adj, identity_adjunction(adj.target))
    for c in (left, right):
        assert c.left == adj.left and c.right == adj.right
        assert c.unit.components == adj.unit.components
        assert c.counit.components == adj.counit.components


def test_composition_is_associative():
    C3, C2 = chain(3), chain(2)
    a = galois_instance(C3, C2, F_GOOD, G_MAP)
    b = identity_adjunction(C2)
    c = galois_instance(C2, C3, {"0": "0", "1": "2"}, {"0": "0", "1": "0", "2": "1"})
    one = compose_adjunctions(compose_adjunctions(a, b), c)
    two = compose_adjunctions(a, compose_adjunctions(b, c))
    assert one.unit.components == two.unit.components
    assert one.counit.components == two.counit.components


def test_sierpinski_composite_unit_not_iso_at_one():
    S = sierpinski()
    comp = composite_adjunction(find_reflector(S.ambient, S.reflective),
                                find_coreflector(S.ambient, S.coreflective))
    assert comp.unit["{1}"] == "{1}<={1,2}"
    v = is_adjoint_equivalence(comp)
    assert not v.holds and v.witness[:2] == ("unit", "{1}")


def test_regsierp_composite_is_equivalence_with_identity_components():
    R = regsierp()
    comp = composite_adjunction(find_reflector(R.ambient, R.reflective),
                                find_coreflector(R.ambient, R.coreflective))
    assert is_adjoint_equivalence(comp).holds
    assert [comp.unit[x] for x in comp.source.objects] == ["id_{}", "id_{1,2}"]


def test_lemma_pairs_identity_and_sierpinski():
    rep = lemma_properties_report(identity_adjunction(chain(3)))
    assert all(c.holds for c in rep)
    S = sierpinski()
    adj = find_reflector(S.ambient, S.reflective).adjunction
    rep = lemma_properties_report(adj)
    assert rep["right-fully-faithful"].holds and rep["counit-iso"].holds
    assert rep["left-faithful"].holds and rep["unit-mono"].holds
    assert not rep["left-full"].holds
    for a, b in LEMMA_PAIRS:
        assert rep[a].holds == rep[b].holds


def test_equivalence_implies_fully_faithful_adjoints():
    for b in named_fixtures().values():
        comp = composite_adjunction(find_reflector(b.ambient, b.reflective),
                                    find_coreflector(b.ambient, b.coreflective))
        if is_adjoint_equivalence(comp).holds:
            assert functor_props(comp.left).fully_faithful
            assert functor_props(comp.right).fully_faithful
