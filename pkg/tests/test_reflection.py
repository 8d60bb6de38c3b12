import pytest

from catq.category import full_subcategory, is_epi, is_iso, is_mono
from catq.errors import NotCoreflective, NotReflective, PreconditionUnmet
from catq.functor import functor_props, is_identity_functor, restrict
from catq.instances import (
    SIERPINSKI,
    chain,
    chain3_ends,
    diamond,
    named_fixtures,
    regsierp,
    sierpinski,
)
from catq.reflection import (
    check_hypothesis_factor_initial,
    check_property_F,
    check_property_I,
    check_report,
    check_factorization_corollaries,
    check_main_conditions,
    composite_adjunction,
    dual_report,
    dual_structures,
    dual_witness,
    find_coreflector,
    find_reflector,
    is_exact_isomorphism,
    report_signature,
    search_epi_mono_counterexample,
)

import oracles


def structures(bundle):
    return (find_reflector(bundle.ambient, bundle.reflective),
            find_coreflector(bundle.ambient, bundle.coreflective))


def sierp_sets():
    points, opens = SIERPINSKI
    opens = [frozenset(u) for u in opens]
    closeds = [frozenset(points) - u for u in opens]
    return {oracles.name(s): s for s in oracles.subsets(points)}, opens, closeds


def test_whole_category_gives_identity_structures():
    C = chain(3)
    whole = full_subcategory(C, C.objects)
    r = find_reflector(C, whole)
    c = find_coreflector(C, whole)
    assert all(C.is_identity(r.unit[x]) for x in C.objects)
    assert all(C.is_identity(c.counit[x]) for x in C.objects)
    for rep in check_report(r, c):
        assert rep.holds
    assert check_hypothesis_factor_initial(r, c).holds
    cor = check_factorization_corollaries(r, c)
    assert cor.holds


def test_sierpinski_operators_match_closure_and_interior():
    names, opens, closeds = sierp_sets()
    r, c = structures(sierpinski())
    for x, s in names.items():
        assert r.reflector.ob(x) == oracles.name(oracles.closure(s, closeds))
        assert c.coreflector.ob(x) == oracles.name(oracles.interior(s, opens))


def test_diamond_antichain_is_neither_reflective_nor_coreflective():
    D = diamond()
    sub = full_subcategory(D, ["a", "b"])
    ups = {x: [s for s in ("a", "b") if oracles.leq(D, x, s)] for x in D.objects}
    lacking = tuple(x for x in D.objects if oracles.poset_least_above(D, ["a", "b"], x) is None)
    assert ups["bot"] == ["a", "b"] and "bot" in lacking
    with pytest.raises(NotReflective) as ei:
        find_reflector(D, sub)
    assert ei.value.witness == lacking
    lacking = tuple(x for x in D.objects if oracles.poset_greatest_below(D, ["a", "b"], x) is None)
    assert "top" in lacking
    with pytest.raises(NotCoreflective) as ei:
        find_coreflector(D, sub)
    assert ei.value.witness == lacking


def test_sierpinski_properties_fail_at_the_two_points():
    r, c = structures(sierpinski())
    F, I = check_property_F(r, c), check_property_I(r, c)
    assert not F.holds and F["F"].witness == ("{1}",)
    assert not I.holds and I["I"].witness == ("{2}",)


def test_sierpinski_main_conditions_split_into_two_groups():
    r, c = structures(sierpinski())
    main = check_main_conditions(r, c)
    for k in ("i", "ii", "iii", "iv", "v", "vi", "vii", "viii"):
        assert not main[f"main.{k}"].holds
    assert main["main.i"].witness == ("{1}",)
    assert main["main.iv"].witness == ("{1}",)
    assert main["main.v"].witness == ("{2}",)
    assert main["main.viii"].witness == ("{2}",)
    # Mθ_{1} is M({1} <= X) = ({1} <= X) in the opens, which is not invertible
    assert not is_iso(c.sub.category, c.coreflector.mor(r.unit["{1}"]))
    assert not is_iso(r.sub.category, r.reflector.mor(c.counit["{2}"]))


def test_regsierp_main_conditions_all_hold():
    r, c = structures(regsierp())
    main = check_main_conditions(r, c)
    assert main.holds and len(main) == 8


def test_regsierp_factorization_fails_at_point_one():
    names, opens, closeds = sierp_sets()
    X = frozenset({1, 2})
    reg = [frozenset(), X]
    # N restricted to the clopen core: least clopen above; M: greatest clopen below
    bad = [x for x, s in names.items()
           if oracles.closure(oracles.interior(s, reg), reg) != oracles.closure(s, reg)]
    assert bad[0] == "{1}"
    r, c = structures(regsierp())
    rep = check_hypothesis_factor_initial(r, c)
    assert not rep["factor.i"].holds and rep["factor.i"].witness == ("{1}",)
    assert not rep["factor.ii"].holds and rep["factor.ii"].witness == ("{1}",)
    with pytest.raises(PreconditionUnmet):
        check_factorization_corollaries(r, c)


def test_chain3_ends_factorization_holds():
    r, c = structures(chain3_ends())
    rep = check_hypothesis_factor_initial(r, c)
    assert rep["factor.i"].holds and rep["factor.ii"].holds


def test_adjoint_equivalence_matches_F_and_I_on_fixtures():
    for b in named_fixtures().values():
        r, c = structures(b)
        reps = {rep.title: rep for rep in check_report(r, c)}
        props = reps["factorization properties"]
        assert reps["equivalence"]["equivalence"].holds == props.holds


@pytest.mark.parametrize("key", ["layered", "layered-twisted", "layered-parallel"])
def test_layered_fixtures_are_exactly_isomorphic(key):
    b = named_fixtures()[key]
    r, c = structures(b)
    comp = composite_adjunction(r, c)
    assert all(comp.source.is_identity(comp.unit[x]) for x in comp.source.objects)
    assert all(comp.target.is_identity(comp.counit[y]) for y in comp.target.objects)
    assert is_exact_isomorphism(r, c).holds
    assert is_identity_functor(restrict(r.reflector, r.sub))
    assert is_identity_functor(restrict(c.coreflector, c.sub))


def test_twisted_layer_is_four_way_unfaithful():
    r, c = structures(named_fixtures()["layered-twisted"])
    cor = check_factorization_corollaries(r, c)
    assert cor["N-factor"].holds and cor["reflector"].holds
    verdicts = [cor[f"faithful.{k}"].holds for k in ("i", "ii", "iii", "iv")]
    assert verdicts == [False] * 4
    C = r.ambient
    w = cor["faithful.i"].witness[0]
    assert not oracles.brute_epi(C, c.counit[w])
    assert not oracles.brute_mono(C, r.unit[cor["faithful.iv"].witness[0]])


def test_parallel_layer_shows_faithful_but_not_full_reflector():
    r, c = structures(named_fixtures()["layered-parallel"])
    C = r.ambient
    assert check_factorization_corollaries(r, c).holds
    assert all(is_epi(C, c.counit[x]) for x in C.objects)
    assert any(not is_iso(C, r.unit[x]) for x in C.objects)
    p = functor_props(r.reflector)
    assert p.faithful
    assert p.essentially_surjective
    assert not p.full


def test_sierpinski_corollaries_refuse_to_run():
    r, c = structures(sierpinski())
    with pytest.raises(PreconditionUnmet) as ei:
        check_factorization_corollaries(r, c)
    assert "F" in ei.value.witness and "I" in ei.value.witness


def test_counterexample_search_budget_zero_and_posets():
    assert search_epi_mono_counterexample(0) is None
    assert search_epi_mono_counterexample(40, kind="poset") is None


def test_poset_morphisms_make_faithfulness_hold():
    for key in ("discrete", "layered", "chain3ends", "terminal"):
        r, c = structures(named_fixtures()[key])
        C = r.ambient
        assert all(is_mono(C, f) and is_epi(C, f) for f in C.morphisms)
        cor = check_factorization_corollaries(r, c)
        assert all(cor[f"faithful.{k}"].holds for k in ("i", "ii", "iii", "iv"))


def test_dual_witness_swaps_sides():
    assert dual_witness(("unit", "a", "counit", "b")) == ("unit", "b", "counit", "a")
    assert dual_witness(("counit", "b")) == ("unit", "b")
    assert dual_witness(("x",)) == ("x",)
    assert dual_witness(None) is None


def test_reports_agree_with_their_duals_on_fixtures():
    for b in named_fixtures().values():
        r, c = structures(b)
        rd, cd = dual_structures(r, c)
        for rep, drep in zip(check_report(r, c), check_report(rd, cd)):
            a = report_signature(rep)
            d = report_signature(dual_report(drep))
            assert a == d, b.name
        assert report_signature(check_hypothesis_factor_initial(r, c)) == \
            report_signature(dual_report(check_hypothesis_factor_initial(rd, cd)))
