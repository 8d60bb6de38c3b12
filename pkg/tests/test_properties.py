from hypothesis import given, settings, strategies as st

from catq.category import is_epi, is_mono, opposite
from catq.dsl import emit, parse
from catq.errors import NotCoreflective, NotReflective, PreconditionUnmet
from catq.functor import functor_props
from catq.instances import random_concrete_bundle, random_instance
from catq.reflection import (
    check_hypothesis_factor_initial,
    check_report,
    check_factorization_corollaries,
    dual_report,
    dual_structures,
    find_coreflector,
    find_reflector,
    report_signature,
)

import oracles

seeds = st.integers(min_value=0, max_value=10**6)


def structures(b):
    return find_reflector(b.ambient, b.reflective), find_coreflector(b.ambient, b.coreflective)


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_reflector_is_least_element_above(seed):
    b = random_instance(seed, max_elements=7)
    r, _ = structures(b)
    for x in b.ambient.objects:
        assert r.reflector.ob(x) == oracles.poset_least_above(b.ambient, b.reflective.objects, x)


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_condition_groups_agree(seed):
    r, c = structures(random_instance(seed))
    reps = {rep.title: rep for rep in check_report(r, c)}
    main = reps["restricted adjunction N|M ⊣ M|N"]
    left = {main[f"main.{k}"].holds for k in ("i", "ii", "iii", "iv")}
    right = {main[f"main.{k}"].holds for k in ("v", "vi", "vii", "viii")}
    assert len(left) == 1 and len(right) == 1
    props = reps["factorization properties"]
    assert reps["equivalence"]["equivalence"].holds == props.holds


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_opposite_twice_is_identity(seed):
    C = random_instance(seed).ambient
    assert opposite(opposite(C)) == C


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_random_bundle_round_trips(seed):
    b = random_instance(seed)
    text = emit(b)
    assert emit(parse(text)) == text
    assert parse(text).bundles[b.name].ambient == b.ambient


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_duality_on_random_posets(seed):
    r, c = structures(random_instance(seed, max_elements=6))
    rd, cd = dual_structures(r, c)
    for a, d in zip(check_report(r, c), check_report(rd, cd)):
        assert report_signature(a) == report_signature(dual_report(d))
    assert report_signature(check_hypothesis_factor_initial(r, c)) == \
        report_signature(dual_report(check_hypothesis_factor_initial(rd, cd)))


@settings(max_examples=80, deadline=None)
@given(seeds)
def test_concrete_categories_faithfulness_and_unfaithful_shape(seed):
    b = random_concrete_bundle(seed, max_objects=4)
    if b is None:
        return
    try:
        r, c = structures(b)
        cor = check_factorization_corollaries(r, c)
    except (NotReflective, NotCoreflective, PreconditionUnmet):
        return
    verdicts = {cor[f"faithful.{k}"].holds for k in ("i", "ii", "iii", "iv")}
    assert len(verdicts) == 1
    C = b.ambient
    if all(is_epi(C, c.counit[x]) for x in C.objects) and \
            any(not oracles.brute_iso(C, r.unit[x]) for x in C.objects):
        p = functor_props(r.reflector)
        assert p.faithful
        assert p.essentially_surjective
        assert not p.full
    assert all(is_mono(C, r.unit[x]) for x in C.objects) == cor["faithful.iv"].holds


# seeds found by scanning 0..1100 where ψ is epi everywhere and some θ_x is not iso
SHAPE_SEEDS = [188, 217, 333, 636, 873, 1095]


def test_unfaithful_shape_is_exercised_on_concrete_categories():
    for seed in SHAPE_SEEDS:
        b = random_concrete_bundle(seed, max_objects=4)
        r, c = structures(b)
        assert check_factorization_corollaries(r, c)["N-factor"].holds
        C = b.ambient
        assert all(is_epi(C, c.counit[x]) for x in C.objects)
        assert any(not oracles.brute_iso(C, r.unit[x]) for x in C.objects)
        p = functor_props(r.reflector)
        assert p.faithful
        assert p.essentially_surjective
        assert not p.full
