"""Acceptance suite: one or more tests per criterion, tagged with ``criterion``."""

import io
import json
import time

import pytest

from catq.adjunction import lemma_properties_report, LEMMA_PAIRS
from catq.cli import run_command
from catq.comma import transport_iso
from catq.dsl import document_of, emit, parse
from catq.errors import PreconditionUnmet
from catq.functor import compose_functors
from catq.instances import named_fixtures, random_galois_setup, random_instance, suite
from catq.reflection import (
    check_hypothesis_factor_initial,
    check_report,
    check_factorization_corollaries,
    composite_adjunction,
    dual_report,
    dual_structures,
    find_coreflector,
    find_reflector,
    report_signature,
)

FIRST = ("i", "ii", "iii", "iv")
SECOND = ("v", "vi", "vii", "viii")


@pytest.fixture(scope="module")
def bundles():
    return suite(n_random=200, max_elements=8)


@pytest.fixture(scope="module")
def structured(bundles):
    return [(b, find_reflector(b.ambient, b.reflective), find_coreflector(b.ambient, b.coreflective))
            for b in bundles]


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    return run_command(argv, out, err), out.getvalue(), err.getvalue()


def write_fixture(tmp_path, key):
    path = tmp_path / f"{key}.cat"
    path.write_text(emit(named_fixtures()[key]), encoding="utf-8")
    return str(path)


def _by_title(reps):
    return {r.title: r for r in reps}


@pytest.mark.criterion(1, "main conditions agree within each group over fixtures and 200 random posets (< 10 s)")
def test_main_condition_groups_agree_across_suite():
    start = time.perf_counter()
    bs = suite(n_random=200, max_elements=8)
    assert len(bs) == len(named_fixtures()) + 200
    for b in bs:
        r = find_reflector(b.ambient, b.reflective)
        c = find_coreflector(b.ambient, b.coreflective)
        main = _by_title(check_report(r, c))["restricted adjunction N|M ⊣ M|N"]
        assert len({main[f"main.{k}"].holds for k in FIRST}) == 1, b.name
        assert len({main[f"main.{k}"].holds for k in SECOND}) == 1, b.name
    assert time.perf_counter() - start < 10


@pytest.mark.criterion(2, "adjoint equivalence verdict equals F and I on the same suite")
def test_equivalence_biconditional_across_suite(structured):
    for b, r, c in structured:
        reps = _by_title(check_report(r, c))
        props = reps["factorization properties"]
        assert reps["equivalence"]["equivalence"].holds == (props["F"].holds and props["I"].holds), b.name


@pytest.mark.criterion(3, "Sierpinski check exits 1 with F at {1}, I at {2}, Mθ at {1} and Nψ at {2} non-iso (< 1 s)")
def test_sierpinski_check_reports_point_witnesses(tmp_path):
    path = write_fixture(tmp_path, "sierpinski")
    start = time.perf_counter()
    code, text, _ = run(["check", path, "--reflective", "Closed", "--coreflective", "Open", "--json"])
    elapsed = time.perf_counter() - start
    assert code == 1
    rows = {c["label"]: c for s in json.loads(text)["sections"] for c in s["conditions"]}
    assert (rows["F"]["holds"], rows["F"]["witness"]) == (False, ["{1}"])
    assert (rows["I"]["holds"], rows["I"]["witness"]) == (False, ["{2}"])
    assert (rows["main.iv"]["holds"], rows["main.iv"]["witness"]) == (False, ["{1}"])
    assert (rows["main.viii"]["holds"], rows["main.viii"]["witness"]) == (False, ["{2}"])
    assert elapsed < 1


@pytest.mark.criterion(4, "positive fixtures exit 0; layered composite unit and counit are identities")
@pytest.mark.parametrize("key", ["regsierp", "discrete", "partition", "layered"])
def test_positive_fixtures_pass(tmp_path, key):
    code, text, err = run(["check", write_fixture(tmp_path, key)])
    assert code == 0, text + err
    if key == "layered":
        b = named_fixtures()[key]
        comp = composite_adjunction(find_reflector(b.ambient, b.reflective),
                                    find_coreflector(b.ambient, b.coreflective))
        assert all(comp.source.is_identity(comp.unit[x]) for x in comp.source.objects)
        assert all(comp.target.is_identity(comp.counit[y]) for y in comp.target.objects)


@pytest.mark.criterion(5, "factorization conditions pair up, and all four agree under an equivalence")
def test_factorization_conditions_agree(structured):
    for b, r, c in structured:
        rep = check_hypothesis_factor_initial(r, c)
        v = {k: rep[f"factor.{k}"].holds for k in FIRST}
        assert v["i"] == v["ii"] and v["iii"] == v["iv"], b.name
        if _by_title(check_report(r, c))["equivalence"]["equivalence"].holds:
            assert len(set(v.values())) == 1, b.name


@pytest.mark.criterion(6, "transport along 50 random Galois connections is inverse both ways")
def test_transport_is_inverse_on_random_galois_connections():
    for seed in range(50):
        P, adj, Q = random_galois_setup(seed, max_elements=6)
        T = transport_iso(P, adj, Q)
        there_back = compose_functors(T.backward, T.forward)
        back_there = compose_functors(T.forward, T.backward)
        S, U = T.source.category, T.target.category
        assert all(there_back.ob(o) == o for o in S.objects)
        assert all(there_back.mor(m) == m for m in S.morphisms)
        assert all(back_there.ob(o) == o for o in U.objects)
        assert all(back_there.mor(m) == m for m in U.morphisms)


@pytest.mark.criterion(7, "corollaries validate on every instance meeting the standing hypotheses")
def test_corollaries_hold_where_preconditions_do(structured):
    ran = 0
    for b, r, c in structured:
        try:
            cor = check_factorization_corollaries(r, c)
        except PreconditionUnmet:
            continue
        ran += 1
        for label in ("N-factor", "M-factor", "reflector", "coreflector"):
            assert cor[label].holds, (b.name, label)
        assert len({cor[f"faithful.{k}"].holds for k in FIRST}) == 1, b.name
    assert ran > 0


@pytest.mark.criterion(8, "every report equals its dual label for label across the suite")
def test_reports_match_their_duals(structured):
    for b, r, c in structured:
        rd, cd = dual_structures(r, c)
        pairs = list(zip(check_report(r, c), check_report(rd, cd)))
        pairs.append((check_hypothesis_factor_initial(r, c), check_hypothesis_factor_initial(rd, cd)))
        try:
            pairs.append((check_factorization_corollaries(r, c), check_factorization_corollaries(rd, cd)))
        except PreconditionUnmet:
            with pytest.raises(PreconditionUnmet):
                check_factorization_corollaries(rd, cd)
        for a, d in pairs:
            assert report_signature(a) == report_signature(dual_report(d)), (b.name, a.title)


@pytest.mark.criterion(9, "adjunction property pairs agree on every adjunction in the suite")
def test_lemma_pairs_agree_on_suite_adjunctions(structured):
    assert len(LEMMA_PAIRS) == 6
    saw_non_equivalence = False
    for b, r, c in structured:
        for adj in (r.adjunction, c.adjunction, composite_adjunction(r, c)):
            rep = lemma_properties_report(adj)
            for a, z in LEMMA_PAIRS:
                assert rep[a].holds == rep[z].holds, (b.name, adj.name, a)
        if b.name == "sierp":
            saw_non_equivalence = not lemma_properties_report(r.adjunction)["left-full"].holds
    assert saw_non_equivalence


@pytest.mark.criterion(10, "text format round-trips fixtures, emits deterministically, parses 1000 objects in < 5 s")
def test_text_format_round_trip_and_speed():
    for b in named_fixtures().values():
        assert parse(emit(b)) == document_of(b)
    assert emit(random_instance(7)).encode() == emit(random_instance(7)).encode()
    assert emit(random_instance(42)).encode() == emit(random_instance(42)).encode()
    n = 1000
    lines = ["category Big {", "  poset", "  objects " + " ".join(f"e{i}" for i in range(n))]
    lines += [f"  leq e{i} e{j}" for i in range(n) for j in (2 * i + 1, 2 * i + 2) if j < n]
    text = "\n".join(lines + ["}"]) + "\n"
    start = time.perf_counter()
    doc = parse(text)
    assert time.perf_counter() - start < 5
    assert len(doc.categories["Big"].objects) == n
