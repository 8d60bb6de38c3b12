"""Reflective and coreflective subcategories and the conditions relating them.

Notation follows the usual picture

    M --I--> C --N--> N-sub        I ⊣ M   (unit σ, counit ψ)
    M <--M-- C <--J-- N-sub        N ⊣ J   (unit θ, counit ρ)

with the composite adjunction ``NI ⊣ MJ`` between the two subcategories.
"""

from __future__ import annotations

from dataclasses import dataclass

from .adjunction import (
    Adjunction,
    adjunction_from_couniversal_morphisms,
    adjunction_from_universal_morphisms,
    compose_adjunctions,
    is_adjoint_equivalence,
)
from .category import (
    FinCategory,
    Subcategory,
    inverse,
    is_epi,
    is_final,
    is_initial,
    is_iso,
    is_mono,
    opposite,
)
from .comma import comma_object_id, is_universal_from, is_universal_to, over, under, universal_from, universal_to, STAR
from .errors import (
    InternalInconsistency,
    NotCoreflective,
    NotReflective,
    PreconditionUnmet,
    ShapeMismatch,
)
from .functor import (
    Functor,
    NatTransformation,
    compose_functors,
    functor_props,
    inclusion,
    is_identity_functor,
    is_natural_isomorphism,
    naturality_failure,
)
from .report import Condition, ConditionReport, Verdict, fails, holds


@dataclass
class ReflectiveStructure:
    ambient: FinCategory
    sub: Subcategory
    reflector: Functor          # N: C -> sub
    unit: NatTransformation     # θ: 1_C => J N
    counit: NatTransformation   # ρ: N J => 1_sub
    inclusion: Functor          # J

    @property
    def adjunction(self) -> Adjunction:
        return Adjunction(self.reflector, self.inclusion, self.unit, self.counit,
                          f"{self.reflector.name}⊣{self.inclusion.name}")


@dataclass
class CoreflectiveStructure:
    ambient: FinCategory
    sub: Subcategory
    coreflector: Functor        # M: C -> sub
    counit: NatTransformation   # ψ: I M => 1_C
    unit: NatTransformation     # σ: 1_sub => M I
    inclusion: Functor          # I

    @property
    def adjunction(self) -> Adjunction:
        return Adjunction(self.inclusion, self.coreflector, self.unit, self.counit,
                          f"{self.inclusion.name}⊣{self.coreflector.name}")


def find_reflector(C: FinCategory, sub: Subcategory, name: str = "N") -> ReflectiveStructure:
    """Synthesize a reflector from declaration-order universal arrows.

    Objects already in ``sub`` get ``θ_y = 1_y`` whenever that is universal,
    so the reflector restricts to the identity on ``sub``.
    """
    if sub.parent != C:
        raise ShapeMismatch(f"{sub.name} is not a subcategory of {C.name}")
    J = inclusion(sub, "J")
    family: dict[str, tuple[str, str]] = {}
    missing = []
    inside = set(sub.objects)
    for x in C.objects:
        if x in inside and is_universal_from(x, J, x, C.id(x)):
            family[x] = (x, C.id(x))
            continue
        arrow = universal_from(x, J)
        if arrow is None:
            missing.append(x)
        else:
            family[x] = (arrow.obj, arrow.arrow)
    if missing:
        raise NotReflective(f"{sub.name} is not reflective in {C.name}: no universal arrow from "
                            + ", ".join(missing), tuple(missing))
    adj = adjunction_from_universal_morphisms(J, family, name)
    for y in sub.objects:
        if C.compose(adj.counit[y], adj.unit[y]) != C.id(y):
            raise InternalInconsistency(f"ρ ∘ θ is not the identity at {y}", (y,))
    return ReflectiveStructure(C, sub, adj.left, adj.unit, adj.counit, J)


def find_coreflector(C: FinCategory, sub: Subcategory, name: str = "M") -> CoreflectiveStructure:
    """Dual of :func:`find_reflector`; ``ψ_y = 1_y`` on ``sub`` when possible."""
    if sub.parent != C:
        raise ShapeMismatch(f"{sub.name} is not a subcategory of {C.name}")
    I = inclusion(sub, "I")
    family: dict[str, tuple[str, str]] = {}
    missing = []
    inside = set(sub.objects)
    for x in C.objects:
        if x in inside and is_universal_to(I, x, x, C.id(x)):
            family[x] = (x, C.id(x))
            continue
        arrow = universal_to(I, x)
        if arrow is None:
            missing.append(x)
        else:
            family[x] = (arrow.obj, arrow.arrow)
    if missing:
        raise NotCoreflective(f"{sub.name} is not coreflective in {C.name}: no universal arrow to "
                              + ", ".join(missing), tuple(missing))
    adj = adjunction_from_couniversal_morphisms(I, family, name)
    for y in sub.objects:
        if C.compose(adj.counit[y], adj.unit[y]) != C.id(y):
            raise InternalInconsistency(f"ψ ∘ σ is not the identity at {y}", (y,))
    return CoreflectiveStructure(C, sub, adj.right, adj.counit, adj.unit, I)


def _require_full(refl: ReflectiveStructure, corefl: CoreflectiveStructure) -> None:
    if refl.ambient != corefl.ambient:
        raise ShapeMismatch("reflective and coreflective structures live in different categories")
    for s in (refl.sub, corefl.sub):
        if not s.full:
            raise ShapeMismatch(f"{s.name} is not a full subcategory")


def _first(pred, objs) -> Verdict:
    for x in objs:
        if not pred(x):
            return fails(x)
    return holds()


# -- properties (F) and (I) ------------------------------------------------------

def _final_in_over(I: Functor, c: str, x: str, arrow: str) -> bool:
    cc = over(I, c)
    return is_final(cc.category, comma_object_id(x, STAR, arrow))


def _initial_in_under(c: str, J: Functor, y: str, arrow: str) -> bool:
    cc = under(c, J)
    return is_initial(cc.category, comma_object_id(STAR, y, arrow))


def property_F(refl: ReflectiveStructure, corefl: CoreflectiveStructure) -> Verdict:
    N, theta, I = refl.reflector, refl.unit, corefl.inclusion
    return _first(lambda x: _final_in_over(I, N.ob(x), x, theta[x]), corefl.sub.objects)


def property_I(refl: ReflectiveStructure, corefl: CoreflectiveStructure) -> Verdict:
    M, psi, J = corefl.coreflector, corefl.counit, refl.inclusion
    return _first(lambda y: _initial_in_under(M.ob(y), J, y, psi[y]), refl.sub.objects)


STATEMENTS = {
    "F": "each (x, θ_x) is final in M↓Nx",
    "I": "each (y, ψ_y) is initial in My↓N",
}


def check_property_F(refl: ReflectiveStructure, corefl: CoreflectiveStructure) -> ConditionReport:
    rep = ConditionReport("final factorization through the coreflective side")
    rep.add("F", property_F(refl, corefl), STATEMENTS["F"])
    return rep


def check_property_I(refl: ReflectiveStructure, corefl: CoreflectiveStructure) -> ConditionReport:
    rep = ConditionReport("initial factorization through the reflective side")
    rep.add("I", property_I(refl, corefl), STATEMENTS["I"])
    return rep


# -- composite adjunction conditions ---------------------------------------------

_COMPOSITE_TEXT = {
    "i": "each (x, θ_Ix) is final in I↓JNIx",
    "ii": "NI is full and faithful",
    "iii": "the composite unit η is a natural isomorphism",
    "iv": "each Mθ_Ix is an isomorphism",
    "v": "each (y, ψ_Jy) is initial in IMJy↓J",
    "vi": "MJ is full and faithful",
    "vii": "the composite counit ε is a natural isomorphism",
    "viii": "each Nψ_Jy is an isomorphism",
}


def _composite_conditions(prefix: str, I: Functor, J: Functor, adjNJ: Adjunction,
                          adjIM: Adjunction, title: str) -> tuple[ConditionReport, Adjunction]:
    N, theta = adjNJ.left, adjNJ.unit
    M, psi = adjIM.right, adjIM.counit
    Mcat, Ncat = I.source, J.source
    if N.source != I.target or M.source != I.target or J.target != I.target:
        raise ShapeMismatch("functors do not share an ambient category")
    comp = compose_adjunctions(adjIM, adjNJ)
    NI, MJ = comp.left, comp.right

    v1 = _first(lambda x: _final_in_over(I, J.ob(N.ob(I.ob(x))), x, theta[I.ob(x)]), Mcat.objects)
    p2 = functor_props(NI)
    v2 = fails(*p2.fully_faithful_witness) if not p2.fully_faithful else holds()
    v3 = is_natural_isomorphism(comp.unit)
    v4 = _first(lambda x: is_iso(Mcat, M.mor(theta[I.ob(x)])), Mcat.objects)
    v5 = _first(lambda y: _initial_in_under(I.ob(M.ob(J.ob(y))), J, y, psi[J.ob(y)]), Ncat.objects)
    p6 = functor_props(MJ)
    v6 = fails(*p6.fully_faithful_witness) if not p6.fully_faithful else holds()
    v7 = is_natural_isomorphism(comp.counit)
    v8 = _first(lambda y: is_iso(Ncat, N.mor(psi[J.ob(y)])), Ncat.objects)

    I_ff = functor_props(I).fully_faithful
    J_ff = functor_props(J).fully_faithful
    first_group = [v1, v2, v3] + ([v4] if I_ff else [])
    second_group = [v5, v6, v7] + ([v8] if J_ff else [])
    for group, names in ((first_group, "i-iv"), (second_group, "v-viii")):
        if len({v.holds for v in group}) > 1:
            raise InternalInconsistency(
                f"conditions {names} disagree: " + ", ".join(str(v.holds) for v in group))

    rep = ConditionReport(title)
    for key, v in zip(["i", "ii", "iii"], [v1, v2, v3]):
        rep.add(f"{prefix}.{key}", v, _COMPOSITE_TEXT[key])
    rep.add(f"{prefix}.iv", v4, _COMPOSITE_TEXT["iv"], informative=not I_ff)
    for key, v in zip(["v", "vi", "vii"], [v5, v6, v7]):
        rep.add(f"{prefix}.{key}", v, _COMPOSITE_TEXT[key])
    rep.add(f"{prefix}.viii", v8, _COMPOSITE_TEXT["viii"], informative=not J_ff)
    return rep, comp


def composite_conditions_report(I: Functor, J: Functor, adjNJ: Adjunction, adjIM: Adjunction) -> ConditionReport:
    """Composite-adjunction conditions for arbitrary ``N ⊣ J`` and ``I ⊣ M``.

    Conditions iv and viii are informative unless I (resp. J) is full and faithful.
    """
    if adjNJ.right != J or adjIM.left != I:
        raise ShapeMismatch("adjunctions must be N ⊣ J and I ⊣ M")
    rep, comp = _composite_conditions("composite", I, J, adjNJ, adjIM, "composite adjunction NI ⊣ MJ")
    eq = is_adjoint_equivalence(comp)
    both = rep["composite.i"].holds and rep["composite.v"].holds
    if eq.holds != both:
        raise InternalInconsistency("adjoint equivalence differs from (i) and (v)")
    rep.add("equivalence", eq, "NI ⊣ MJ is an adjoint equivalence")
    return rep


def composite_adjunction(refl: ReflectiveStructure, corefl: CoreflectiveStructure) -> Adjunction:
    """``N|_M ⊣ M|_N``."""
    return compose_adjunctions(corefl.adjunction, refl.adjunction)


def check_main_conditions(refl: ReflectiveStructure, corefl: CoreflectiveStructure) -> ConditionReport:
    _require_full(refl, corefl)
    rep, _ = _composite_conditions("main", corefl.inclusion, refl.inclusion, refl.adjunction,
                                   corefl.adjunction, "restricted adjunction N|M ⊣ M|N")
    # (i) and (v) are properties (F) and (I) for inclusions; cross-check the subcategory framing
    if rep["main.i"].holds != property_F(refl, corefl).holds or \
            rep["main.v"].holds != property_I(refl, corefl).holds:
        raise InternalInconsistency("comma conditions differ from properties F/I")
    return rep


def check_adjoint_equivalence(refl: ReflectiveStructure, corefl: CoreflectiveStructure) -> Verdict:
    _require_full(refl, corefl)
    eq = is_adjoint_equivalence(composite_adjunction(refl, corefl))
    both = property_F(refl, corefl).holds and property_I(refl, corefl).holds
    if eq.holds != both:
        raise InternalInconsistency(
            f"adjoint equivalence is {eq.holds} but F and I together are {both}")
    return eq


def _first_moved(F: Functor) -> str | None:
    C = F.source
    for x in C.objects:
        if F.ob(x) != x:
            return x
    for f in C.morphisms:
        if F.mor(f) != f:
            return f
    return None


def is_exact_isomorphism(refl: ReflectiveStructure, corefl: CoreflectiveStructure) -> Verdict:
    """Are N|_M and M|_N mutually inverse functors (not merely quasi-inverse)?

    The witness pairs ``"unit"`` with the first object or morphism moved by
    M|_N ∘ N|_M and ``"counit"`` with the first one moved by N|_M ∘ M|_N.
    """
    comp = composite_adjunction(refl, corefl)
    w: tuple[str, ...] = ()
    for side, F in (("unit", compose_functors(comp.right, comp.left)),
                    ("counit", compose_functors(comp.left, comp.right))):
        moved = _first_moved(F)
        if moved is not None:
            w += (side, moved)
    return fails(*w) if w else holds()


def check_report(refl: ReflectiveStructure, corefl: CoreflectiveStructure) -> list[ConditionReport]:
    """Properties F/I, the eight composite conditions, and the equivalence verdict."""
    props = ConditionReport("factorization properties")
    props.add("F", property_F(refl, corefl), STATEMENTS["F"])
    props.add("I", property_I(refl, corefl), STATEMENTS["I"])
    main = check_main_conditions(refl, corefl)
    eq = ConditionReport("equivalence")
    eq.add("equivalence", check_adjoint_equivalence(refl, corefl), "N|M ⊣ M|N is an adjoint equivalence")
    eq.add("isomorphism", is_exact_isomorphism(refl, corefl),
           "N|M and M|N are mutually inverse functors", informative=True)
    return [props, main, eq]


# -- factorization hypothesis -----------------------------------------------------

_FACTOR_TEXT = {
    "i": "each (Nx, θ_x ∘ ψ_x) is initial in IMx↓J",
    "ii": "each Nψ_x is an isomorphism",
    "iii": "each (Mx, θ_x ∘ ψ_x) is final in I↓JNx",
    "iv": "each Mθ_x is an isomorphism",
}


def _factor_conditions(I: Functor, J: Functor, adjNJ: Adjunction, adjIM: Adjunction) -> ConditionReport:
    N, theta = adjNJ.left, adjNJ.unit
    M, psi = adjIM.right, adjIM.counit
    C = N.source
    Mcat, Ncat = I.source, J.source

    def tp(x):
        return C.compose(theta[x], psi[x])

    v1 = _first(lambda x: _initial_in_under(I.ob(M.ob(x)), J, N.ob(x), tp(x)), C.objects)
    v2 = _first(lambda x: is_iso(Ncat, N.mor(psi[x])), C.objects)
    v3 = _first(lambda x: _final_in_over(I, J.ob(N.ob(x)), M.ob(x), tp(x)), C.objects)
    v4 = _first(lambda x: is_iso(Mcat, M.mor(theta[x])), C.objects)
    if v1.holds != v2.holds:
        raise InternalInconsistency("factor conditions i and ii disagree")
    if v3.holds != v4.holds:
        raise InternalInconsistency("factor conditions iii and iv disagree")
    comp = compose_adjunctions(adjIM, adjNJ)
    if is_adjoint_equivalence(comp).holds:
        if len({v1.holds, v2.holds, v3.holds, v4.holds}) > 1:
            raise InternalInconsistency("factor conditions disagree under an adjoint equivalence")
        if v1.holds and not (functor_props(I).fully_faithful and functor_props(J).fully_faithful):
            raise InternalInconsistency("factor conditions hold but an inclusion is not fully faithful")
    rep = ConditionReport("factorization hypothesis")
    for key, v in zip(["i", "ii", "iii", "iv"], [v1, v2, v3, v4]):
        rep.add(f"factor.{key}", v, _FACTOR_TEXT[key])
    return rep


def factorization_report(I: Functor, J: Functor, adjNJ: Adjunction, adjIM: Adjunction) -> ConditionReport:
    return _factor_conditions(I, J, adjNJ, adjIM)


def check_hypothesis_factor_initial(refl: ReflectiveStructure, corefl: CoreflectiveStructure) -> ConditionReport:
    if refl.ambient != corefl.ambient:
        raise ShapeMismatch("reflective and coreflective structures live in different categories")
    return _factor_conditions(corefl.inclusion, refl.inclusion, refl.adjunction, corefl.adjunction)


# -- consequences of the factorization hypothesis ---------------------------------

def standing_hypotheses(refl: ReflectiveStructure, corefl: CoreflectiveStructure) -> ConditionReport:
    rep = ConditionReport("standing hypotheses")
    rep.add("F", property_F(refl, corefl), STATEMENTS["F"])
    rep.add("I", property_I(refl, corefl), STATEMENTS["I"])
    rep.add("factor.i", _factor_i(refl, corefl), _FACTOR_TEXT["i"])
    return rep


def _factor_i(refl, corefl) -> Verdict:
    cond = check_hypothesis_factor_initial(refl, corefl)["factor.i"]
    return Verdict(cond.holds, cond.witness)


def _nat_iso_verdict(t: NatTransformation) -> Verdict:
    problem = naturality_failure(t)
    if problem is not None:
        return fails(*problem.witness)
    return is_natural_isomorphism(t)


def check_factorization_corollaries(refl: ReflectiveStructure, corefl: CoreflectiveStructure) -> ConditionReport:
    """Factor isomorphisms, alternative (co)reflectors, and the faithfulness equivalences.

    Requires properties F, I and the factorization hypothesis.
    """
    _require_full(refl, corefl)
    pre = standing_hypotheses(refl, corefl)
    if not pre.holds:
        failed = tuple(c.label for c in pre if not c.holds)
        raise PreconditionUnmet("standing hypotheses fail: " + ", ".join(failed), failed)
    C = refl.ambient
    N, theta, J = refl.reflector, refl.unit, refl.inclusion
    M, psi, I = corefl.coreflector, corefl.counit, corefl.inclusion
    Ncat, Mcat = refl.sub.category, corefl.sub.category
    NIM = compose_functors(compose_functors(N, I), M, "N|M∘M")
    MJN = compose_functors(compose_functors(M, J), N, "M|N∘N")

    n_factor = NatTransformation(NIM, N, {x: N.mor(psi[x]) for x in C.objects}, "Nψ")
    m_factor = NatTransformation(M, MJN, {x: M.mor(theta[x]) for x in C.objects}, "Mθ")
    v_n = _nat_iso_verdict(n_factor)
    v_m = _nat_iso_verdict(m_factor)
    if not (v_n.holds and v_m.holds):
        raise InternalInconsistency("factor transformations are not natural isomorphisms")

    # N|M∘M as a reflector: unit J((Nψ_x)^-1) ∘ θ_x
    fam_n = {x: (NIM.ob(x), C.compose(inverse(Ncat, n_factor[x]), theta[x])) for x in C.objects}
    v_refl = _first(lambda x: is_universal_from(x, J, *fam_n[x]), C.objects)
    if v_refl.holds:
        rebuilt = adjunction_from_universal_morphisms(J, fam_n, "N'").left
        if rebuilt.obj_map != NIM.obj_map or rebuilt.mor_map != NIM.mor_map:
            v_refl = fails("functor")
    fam_m = {x: (MJN.ob(x), C.compose(psi[x], inverse(Mcat, m_factor[x]))) for x in C.objects}
    v_corefl = _first(lambda x: is_universal_to(I, x, *fam_m[x]), C.objects)
    if v_corefl.holds:
        rebuilt = adjunction_from_couniversal_morphisms(I, fam_m, "M'").right
        if rebuilt.obj_map != MJN.obj_map or rebuilt.mor_map != MJN.mor_map:
            v_corefl = fails("functor")
    if not (v_refl.holds and v_corefl.holds):
        raise InternalInconsistency("composite reflector/coreflector failed to re-validate")

    pm, pn = functor_props(M), functor_props(N)
    f1 = _first(lambda x: is_epi(C, psi[x]), C.objects)
    f2 = Verdict(pm.faithful, pm.faithful_witness)
    f3 = Verdict(pn.faithful, pn.faithful_witness)
    f4 = _first(lambda x: is_mono(C, theta[x]), C.objects)
    if len({f1.holds, f2.holds, f3.holds, f4.holds}) > 1:
        raise InternalInconsistency("faithfulness conditions disagree")

    rep = ConditionReport("consequences of the factorization hypothesis")
    rep.add("N-factor", v_n, "Nψ: N|M∘M => N is a natural isomorphism")
    rep.add("M-factor", v_m, "Mθ: M => M|N∘N is a natural isomorphism")
    rep.add("reflector", v_refl, "N|M∘M is a reflector into N")
    rep.add("coreflector", v_corefl, "M|N∘N is a coreflector into M")
    rep.add("faithful.i", f1, "every ψ_x is epi")
    rep.add("faithful.ii", f2, "M is faithful")
    rep.add("faithful.iii", f3, "N is faithful")
    rep.add("faithful.iv", f4, "every θ_x is mono")
    return rep


# -- duality ----------------------------------------------------------------------

_DUAL_PAIRS = [
    ("F", "I"),
    ("main.i", "main.v"), ("main.ii", "main.vi"), ("main.iii", "main.vii"), ("main.iv", "main.viii"),
    ("factor.i", "factor.iii"), ("factor.ii", "factor.iv"),
    ("N-factor", "M-factor"), ("reflector", "coreflector"),
    ("faithful.i", "faithful.iv"), ("faithful.ii", "faithful.iii"),
]
DUAL_LABEL = {a: b for a, b in _DUAL_PAIRS} | {b: a for a, b in _DUAL_PAIRS}


def dual_label(label: str) -> str:
    return DUAL_LABEL.get(label, label)


def dual_structures(refl: ReflectiveStructure, corefl: CoreflectiveStructure
                    ) -> tuple[ReflectiveStructure, CoreflectiveStructure]:
    """Re-synthesize both structures in the opposite category with roles swapped."""
    Cop = opposite(refl.ambient)
    r = find_reflector(Cop, corefl.sub.op(), "N")
    c = find_coreflector(Cop, refl.sub.op(), "M")
    return r, c


_SIDE_SWAP = {"unit": "counit", "counit": "unit"}


def dual_witness(witness: tuple[str, ...] | None) -> tuple[str, ...] | None:
    """Swap ``unit``/``counit`` tags in a side-tagged witness, keeping unit first."""
    if not witness or witness[0] not in _SIDE_SWAP:
        return witness
    parts = {_SIDE_SWAP[witness[i]]: witness[i + 1] for i in range(0, len(witness), 2)}
    return tuple(x for side in ("unit", "counit") if side in parts for x in (side, parts[side]))


def dual_report(report: ConditionReport) -> ConditionReport:
    """Relabel a report computed in the opposite category with the original labels."""
    out = ConditionReport(report.title)
    for c in report:
        out.conditions.append(Condition(dual_label(c.label), c.holds, dual_witness(c.witness),
                                        c.statement, c.informative))
    return out


def report_signature(report: ConditionReport) -> dict[str, tuple[bool, tuple[str, ...] | None]]:
    return {c.label: (c.holds, c.witness) for c in report}


# -- exploratory search -----------------------------------------------------------

@dataclass
class Counterexample:
    bundle: object
    witness: tuple[str, ...]
    reason: str


def satisfies_standing_with_faithfulness(refl: ReflectiveStructure, corefl: CoreflectiveStructure) -> bool:
    """F, I, the factorization hypothesis, ψ epi and θ mono everywhere."""
    if not standing_hypotheses(refl, corefl).holds:
        return False
    C = refl.ambient
    return all(is_epi(C, corefl.counit[x]) and is_mono(C, refl.unit[x]) for x in C.objects)


def search_epi_mono_counterexample(budget: int, seed: int = 0, kind: str = "concrete",
                                   max_objects: int = 5) -> Counterexample | None:
    """Look for an instance with every standing hypothesis where some θ_x is
    not epi or some ψ_x is not mono.  Returns None once ``budget`` samples
    are exhausted.
    """
    from .instances import random_concrete_bundle, random_instance

    for i in range(budget):
        if kind == "poset":
            bundle = random_instance(seed + i, max_elements=max_objects)
        else:
            bundle = random_concrete_bundle(seed + i, max_objects=max_objects)
        if bundle is None:
            continue
        try:
            refl = find_reflector(bundle.ambient, bundle.reflective)
            corefl = find_coreflector(bundle.ambient, bundle.coreflective)
        except (NotReflective, NotCoreflective):
            continue
        if not satisfies_standing_with_faithfulness(refl, corefl):
            continue
        C = bundle.ambient
        for x in C.objects:
            if not is_epi(C, refl.unit[x]):
                return Counterexample(bundle, (x,), "θ_x is not epi")
            if not is_mono(C, corefl.counit[x]):
                return Counterexample(bundle, (x,), "ψ_x is not mono")
    return None
