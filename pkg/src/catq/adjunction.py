"""Adjunctions: construction from universal arrows, verification, composition."""

from __future__ import annotations

from typing import Mapping

from .category import FinCategory, is_epi, is_mono, retraction, section
from .comma import is_universal_from, is_universal_to
from .errors import (
    FactorizationNotUnique,
    InternalInconsistency,
    NotUniversal,
    ShapeMismatch,
)
from .functor import (
    Functor,
    NatTransformation,
    compose_functors,
    functor_props,
    identity_functor,
    is_natural_isomorphism,
    naturality_failure,
    opposite_functor,
    opposite_nat,
    validate_functor,
    vertical_compose,
    whisker_left,
    whisker_right,
)
from .report import ConditionReport, Verdict, fails, holds


class Adjunction:
    """``left ⊣ right`` with ``left: C -> D``, plus unit and counit.

    The hom-set bijection is derived from the unit and counit on demand.
    """

    def __init__(self, left: Functor, right: Functor, unit: NatTransformation,
                 counit: NatTransformation, name: str | None = None):
        self.left = left
        self.right = right
        self.unit = unit
        self.counit = counit
        self.name = name or f"{left.name}⊣{right.name}"

    @property
    def source(self) -> FinCategory:
        return self.left.source

    @property
    def target(self) -> FinCategory:
        return self.left.target

    def __repr__(self) -> str:
        return f"Adjunction({self.name}: {self.source.name} -> {self.target.name})"

    def phi(self, x: str, y: str, g: str) -> str:
        """``g: Fx -> y`` to ``G(g) ∘ η_x : x -> Gy``."""
        return self.source.compose(self.right.mor(g), self.unit[x])

    def phi_inv(self, x: str, y: str, f: str) -> str:
        """``f: x -> Gy`` to ``ε_y ∘ F(f) : Fx -> y``."""
        return self.target.compose(self.counit[y], self.left.mor(f))


def _unique(candidates: list[str], what: str, witness: tuple) -> str:
    if len(candidates) != 1:
        raise FactorizationNotUnique(
            f"{what}: {len(candidates)} factorizations instead of one", witness)
    return candidates[0]


def adjunction_from_universal_morphisms(G: Functor, family: Mapping[str, tuple[str, str]],
                                        name: str = "F") -> Adjunction:
    """Left adjoint of ``G`` from a universal arrow ``(Fx, η_x)`` for every ``x``."""
    D, C = G.source, G.target
    for x in C.objects:
        if x not in family:
            raise NotUniversal(f"no arrow given for {x}", (x,))
        u, eta = family[x]
        if not is_universal_from(x, G, u, eta):
            raise NotUniversal(f"({u}, {eta}) is not universal from {x} to {G.name}", (x,))
    obj_map = {x: family[x][0] for x in C.objects}
    eta = {x: family[x][1] for x in C.objects}
    mor_map = {}
    for f in C.morphisms:
        x, x2 = C.dom(f), C.cod(f)
        want = C.compose(eta[x2], f)
        cands = [g for g in D.hom(obj_map[x], obj_map[x2]) if C.compose(G.mor(g), eta[x]) == want]
        mor_map[f] = _unique(cands, f"image of {f}", (f,))
    F = validate_functor(Functor(C, D, obj_map, mor_map, name))
    counit = {}
    for y in D.objects:
        Gy = G.ob(y)
        one = C.id(Gy)
        cands = [g for g in D.hom(obj_map[Gy], y) if C.compose(G.mor(g), eta[Gy]) == one]
        counit[y] = _unique(cands, f"counit at {y}", (y,))
    adj = _assemble(F, G, eta, counit)
    _require_valid(adj)
    return adj


def adjunction_from_couniversal_morphisms(F: Functor, family: Mapping[str, tuple[str, str]],
                                          name: str = "G") -> Adjunction:
    """Right adjoint of ``F`` from a universal arrow ``(Gy, ε_y)`` for every ``y``."""
    C, D = F.source, F.target
    for y in D.objects:
        if y not in family:
            raise NotUniversal(f"no arrow given for {y}", (y,))
        u, eps = family[y]
        if not is_universal_to(F, y, u, eps):
            raise NotUniversal(f"({u}, {eps}) is not universal from {F.name} to {y}", (y,))
    obj_map = {y: family[y][0] for y in D.objects}
    eps = {y: family[y][1] for y in D.objects}
    mor_map = {}
    for g in D.morphisms:
        y, y2 = D.dom(g), D.cod(g)
        want = D.compose(g, eps[y])
        cands = [h for h in C.hom(obj_map[y], obj_map[y2]) if D.compose(eps[y2], F.mor(h)) == want]
        mor_map[g] = _unique(cands, f"image of {g}", (g,))
    G = validate_functor(Functor(D, C, obj_map, mor_map, name))
    unit = {}
    for x in C.objects:
        Fx = F.ob(x)
        one = D.id(Fx)
        cands = [h for h in C.hom(x, obj_map[Fx]) if D.compose(eps[Fx], F.mor(h)) == one]
        unit[x] = _unique(cands, f"unit at {x}", (x,))
    adj = _assemble(F, G, unit, eps)
    _require_valid(adj)
    return adj


def _assemble(F: Functor, G: Functor, unit: Mapping[str, str], counit: Mapping[str, str],
              name: str | None = None) -> Adjunction:
    C, D = F.source, F.target
    GF = compose_functors(G, F)
    FG = compose_functors(F, G)
    eta = NatTransformation(identity_functor(C), GF, unit, "η")
    eps = NatTransformation(FG, identity_functor(D), counit, "ε")
    return Adjunction(F, G, eta, eps, name)


def _require_valid(adj: Adjunction) -> None:
    report = verify_adjunction(adj)
    bad = report.first_failure()
    if bad is not None:
        raise InternalInconsistency(
            f"synthesized adjunction {adj.name} fails {bad.label}", bad.witness or ())


def verify_adjunction(adj: Adjunction) -> ConditionReport:
    """Triangle identities, naturality, and bijectivity/naturality of φ."""
    F, G = adj.left, adj.right
    C, D = F.source, F.target
    rep = ConditionReport(f"adjunction {adj.name}")
    shape_ok = (G.source == D and G.target == C)
    if not shape_ok:
        rep.add("shape", fails(), "right adjoint goes back from the target to the source")
        return rep
    unit_problem = None
    if adj.unit.source != identity_functor(C) or adj.unit.target != compose_functors(G, F):
        unit_problem = ShapeMismatch("unit is not 1 => GF")
    else:
        unit_problem = naturality_failure(adj.unit)
    counit_problem = None
    if adj.counit.source != compose_functors(F, G) or adj.counit.target != identity_functor(D):
        counit_problem = ShapeMismatch("counit is not FG => 1")
    else:
        counit_problem = naturality_failure(adj.counit)
    rep.add("unit-natural", Verdict(unit_problem is None, unit_problem and unit_problem.witness),
            "unit components are typed and natural")
    rep.add("counit-natural", Verdict(counit_problem is None, counit_problem and counit_problem.witness),
            "counit components are typed and natural")
    if unit_problem is not None or counit_problem is not None:
        broken = (unit_problem or counit_problem).witness
        for label, text in _DERIVED_ROWS:
            rep.add(label, fails(*broken), text)
        return rep
    eta, eps = adj.unit.components, adj.counit.components

    v = holds()
    for x in C.objects:
        Fx = F.ob(x)
        if D.compose(eps[Fx], F.mor(eta[x])) != D.id(Fx):
            v = fails(x)
            break
    rep.add("triangle-left", v, _DERIVED_TEXT["triangle-left"])
    v = holds()
    for y in D.objects:
        Gy = G.ob(y)
        if C.compose(G.mor(eps[y]), eta[Gy]) != C.id(Gy):
            v = fails(y)
            break
    rep.add("triangle-right", v, _DERIVED_TEXT["triangle-right"])

    v = holds()
    for x in C.objects:
        for y in D.objects:
            images = [adj.phi(x, y, g) for g in D.hom(F.ob(x), y)]
            if len(set(images)) != len(images) or len(images) != len(C.hom(x, G.ob(y))):
                v = fails(x, y)
                break
            back = [adj.phi_inv(x, y, f) for f in C.hom(x, G.ob(y))]
            if any(adj.phi(x, y, g) != f for g, f in zip(back, C.hom(x, G.ob(y)))):
                v = fails(x, y)
                break
        if not v:
            break
    rep.add("phi-bijective", v, _DERIVED_TEXT["phi-bijective"])

    v = holds()
    for x in C.objects:
        for y in D.objects:
            for g in D.hom(F.ob(x), y):
                pg = adj.phi(x, y, g)
                for k in C.into(x):
                    x0 = C.dom(k)
                    if adj.phi(x0, y, D.compose(g, F.mor(k))) != C.compose(pg, k):
                        v = fails(x, y, k)
                        break
                if not v:
                    break
                for h in D.out(y):
                    y2 = D.cod(h)
                    if adj.phi(x, y2, D.compose(h, g)) != C.compose(G.mor(h), pg):
                        v = fails(x, y, h)
                        break
                if not v:
                    break
            if not v:
                break
        if not v:
            break
    rep.add("phi-natural", v, _DERIVED_TEXT["phi-natural"])
    return rep


_DERIVED_TEXT = {
    "triangle-left": "ε_F ∘ F(η) is the identity of F",
    "triangle-right": "G(ε) ∘ η_G is the identity of G",
    "phi-bijective": "g ↦ G(g) ∘ η_x is a bijection D(Fx, y) -> C(x, Gy)",
    "phi-natural": "the hom bijection is natural in x and y",
}
_DERIVED_ROWS = list(_DERIVED_TEXT.items())


def identity_adjunction(C: FinCategory) -> Adjunction:
    one = identity_functor(C)
    return _assemble(one, one, {x: C.id(x) for x in C.objects}, {x: C.id(x) for x in C.objects},
                     f"1⊣1 on {C.name}")


def compose_adjunctions(first: Adjunction, second: Adjunction, name: str | None = None) -> Adjunction:
    """From ``F ⊣ G`` (C -> D) and ``H ⊣ K`` (D -> E) build ``HF ⊣ GK``.

    Unit ``G(η'_{Fx}) ∘ η_x`` and counit ``ε'_z ∘ H(ε_{Kz})``.
    """
    F, G = first.left, first.right
    H, K = second.left, second.right
    if F.target != H.source:
        raise ShapeMismatch(f"{first.name} and {second.name} do not compose")
    C, E = F.source, H.target
    unit = vertical_compose(whisker_right(whisker_left(G, second.unit), F), first.unit)
    counit = vertical_compose(second.counit, whisker_left(H, whisker_right(first.counit, K)))
    HF = compose_functors(H, F)
    GK = compose_functors(G, K)
    eta = NatTransformation(identity_functor(C), compose_functors(GK, HF), unit.components, "η")
    eps = NatTransformation(compose_functors(HF, GK), identity_functor(E), counit.components, "ε")
    return Adjunction(HF, GK, eta, eps, name or f"{HF.name}⊣{GK.name}")


def opposite_adjunction(adj: Adjunction) -> Adjunction:
    """``F ⊣ G`` from C to D gives ``G^op ⊣ F^op`` from D^op to C^op."""
    return Adjunction(opposite_functor(adj.right), opposite_functor(adj.left),
                      opposite_nat(adj.counit), opposite_nat(adj.unit),
                      f"({adj.name})^op")


def lemma_properties_report(adj: Adjunction) -> ConditionReport:
    """Functor-side and component-side verdicts of the six standard biconditionals.

    Each biconditional contributes two rows (functor side, component side);
    a disagreement raises :class:`InternalInconsistency`.
    """
    F, G = adj.left, adj.right
    C, D = F.source, F.target
    pf, pg = functor_props(F), functor_props(G)

    def first(pred, objs):
        for x in objs:
            if not pred(x):
                return fails(x)
        return holds()

    eta, eps = adj.unit.components, adj.counit.components
    pairs = [
        ("left-faithful", Verdict(pf.faithful, pf.faithful_witness), "F is faithful",
         "unit-mono", first(lambda x: is_mono(C, eta[x]), C.objects), "every η_x is mono"),
        ("left-full", Verdict(pf.full, pf.full_witness), "F is full",
         "unit-split-epi", first(lambda x: section(C, eta[x]) is not None, C.objects),
         "every η_x is a split epi"),
        ("left-fully-faithful", Verdict(pf.fully_faithful, pf.fully_faithful_witness),
         "F is full and faithful",
         "unit-iso", is_natural_isomorphism(adj.unit), "η is a natural isomorphism"),
        ("right-faithful", Verdict(pg.faithful, pg.faithful_witness), "G is faithful",
         "counit-epi", first(lambda y: is_epi(D, eps[y]), D.objects), "every ε_y is epi"),
        ("right-full", Verdict(pg.full, pg.full_witness), "G is full",
         "counit-split-mono", first(lambda y: retraction(D, eps[y]) is not None, D.objects),
         "every ε_y is a split mono"),
        ("right-fully-faithful", Verdict(pg.fully_faithful, pg.fully_faithful_witness),
         "G is full and faithful",
         "counit-iso", is_natural_isomorphism(adj.counit), "ε is a natural isomorphism"),
    ]
    rep = ConditionReport(f"adjoint properties of {adj.name}")
    for la, va, ta, lb, vb, tb in pairs:
        if va.holds != vb.holds:
            raise InternalInconsistency(
                f"{la} is {va.holds} but {lb} is {vb.holds} for {adj.name}",
                (va.witness or vb.witness or ()))
        rep.add(la, va, ta)
        rep.add(lb, vb, tb)
    return rep


LEMMA_PAIRS = [
    ("left-faithful", "unit-mono"),
    ("left-full", "unit-split-epi"),
    ("left-fully-faithful", "unit-iso"),
    ("right-faithful", "counit-epi"),
    ("right-full", "counit-split-mono"),
    ("right-fully-faithful", "counit-iso"),
]


def is_adjoint_equivalence(adj: Adjunction) -> Verdict:
    """Both unit and counit natural isomorphisms.

    The witness lists ``"unit", x`` for the first non-invertible unit component
    and then ``"counit", y`` for the first non-invertible counit component,
    omitting whichever side is fine.
    """
    w: tuple[str, ...] = ()
    for side, t in (("unit", adj.unit), ("counit", adj.counit)):
        v = is_natural_isomorphism(t)
        if not v:
            w += (side, *v.witness)
    return fails(*w) if w else holds()
