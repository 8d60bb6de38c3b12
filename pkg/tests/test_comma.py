import pytest

from catq.category import find_initial, terminal_category
from catq.comma import (
    comma,
    over,
    transport_iso,
    under,
    universal_from,
    universal_to,
)
from catq.errors import CodomainMismatch
from catq.functor import (
    compose_functors,
    identity_functor,
    inclusion,
    opposite_functor,
)
from catq.adjunction import identity_adjunction
from catq.instances import chain, galois_instance, regsierp, sierpinski, suite
from catq.reflection import composite_adjunction, find_coreflector, find_reflector


def arrow_category():
    return chain(2, "Arrow")


def test_comma_of_identities_on_terminal_is_terminal():
    T = terminal_category()
    K = comma(identity_functor(T), identity_functor(T)).category
    assert len(K.objects) == 1 and len(K.morphisms) == 1


def test_slice_over_b_in_arrow_category():
    A = arrow_category()
    K = over(identity_functor(A), "1")
    assert len(K.category.objects) == 2
    non_id = [m for m in K.category.morphisms if not K.category.is_identity(m)]
    assert len(non_id) == 1
    assert {t.f for t in K.triples.values()} == {"0<=1", "id_1"}


def test_closed_supersets_of_point_one():
    S = sierpinski()
    K = under("{1}", inclusion(S.reflective))
    assert [t.y for t in K.triples.values()] == ["{1,2}"]


def test_codomain_mismatch():
    with pytest.raises(CodomainMismatch):
        comma(identity_functor(chain(2)), identity_functor(chain(3)))


def test_object_count_is_sum_of_hom_sizes():
    for b in suite(n_random=30):
        F = inclusion(b.coreflective)
        G = inclusion(b.reflective)
        D = b.ambient
        K = comma(F, G)
        expected = sum(len(D.hom(F.ob(x), G.ob(y))) for x in F.source.objects for y in G.source.objects)
        assert len(K.category.objects) == expected


def test_universal_arrow_examples():
    C = chain(3)
    assert universal_from("1", identity_functor(C)).obj == "1"
    S = sierpinski()
    u = universal_from("{1}", inclusion(S.reflective))
    assert (u.obj, u.arrow) == ("{1,2}", "{1}<={1,2}")
    v = universal_to(inclusion(S.coreflective), "{2}")
    assert (v.obj, v.arrow) == ("{}", "{}<={2}")


def test_universal_arrow_agrees_with_initial_objects_of_under():
    for b in suite(n_random=40):
        G = inclusion(b.reflective)
        for x in b.ambient.objects:
            u = universal_from(x, G)
            K = under(x, G)
            initial = find_initial(K.category)
            assert (u is not None) == bool(initial)
            if u is not None:
                assert K.triples[initial[0]].y == u.obj


def test_universal_to_is_dual_of_universal_from():
    for b in suite(n_random=40):
        G = inclusion(b.coreflective)
        Gop = opposite_functor(G)
        for x in b.ambient.objects:
            a = universal_to(G, x)
            c = universal_from(x, Gop)
            assert (a is None) == (c is None)
            if a is not None:
                assert (a.obj, a.arrow) == (c.obj, c.arrow)


def test_transport_along_identity_adjunction_is_identity():
    C = chain(3)
    Id = identity_functor(C)
    T = transport_iso(Id, identity_adjunction(C), Id)
    K = T.source.category
    assert all(T.forward.ob(o) == o for o in K.objects)
    assert all(T.forward.mor(m) == m for m in K.morphisms)
    assert compose_functors(T.backward, T.forward) == identity_functor(T.source.category)


def test_transport_for_galois_pair_is_bijective():
    C3, C2 = chain(3), chain(2)
    adj = galois_instance(C3, C2, {"0": "0", "1": "1", "2": "1"}, {"0": "0", "1": "2"})
    T = transport_iso(identity_functor(C3), adj, identity_functor(C2))
    assert len(T.source.category.objects) == len(T.target.category.objects)
    assert compose_functors(T.forward, T.backward) == identity_functor(T.target.category)
    assert compose_functors(T.backward, T.forward) == identity_functor(T.source.category)


def test_transport_sends_theta_to_composite_unit():
    R = regsierp()
    refl = find_reflector(R.ambient, R.reflective)
    corefl = find_coreflector(R.ambient, R.coreflective)
    I, J, N = corefl.inclusion, refl.inclusion, refl.reflector
    Mcat = corefl.sub.category
    JNI = compose_functors(J, compose_functors(N, I))
    T = transport_iso(identity_functor(Mcat), corefl.adjunction, JNI)
    eta = composite_adjunction(refl, corefl).unit
    for x in Mcat.objects:
        src = T.source.object_of(x, x, refl.unit[I.ob(x)])
        t = T.target.triples[T.forward.ob(src)]
        assert (t.x, t.y, t.f) == (x, x, eta[x])
