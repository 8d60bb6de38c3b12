"""Functors, natural transformations and their property checks."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .category import FinCategory, Subcategory, inverse, is_iso, opposite
from .errors import (
    CompositionNotPreserved,
    DomCodMismatch,
    FunctorError,
    FunctorLawViolation,
    IdentityNotPreserved,
    NaturalitySquareFails,
    ShapeMismatch,
)
from .report import Verdict, fails, holds


class Functor:
    """A functor between finite categories, stored as two lookup tables.

    The constructor does not check anything; use :func:`validate_functor` or
    :func:`make_functor`.
    """

    def __init__(self, source: FinCategory, target: FinCategory,
                 obj_map: Mapping[str, str], mor_map: Mapping[str, str], name: str = "F"):
        self.source = source
        self.target = target
        self.obj_map = dict(obj_map)
        self.mor_map = dict(mor_map)
        self.name = name

    def ob(self, x: str) -> str:
        return self.obj_map[x]

    def mor(self, f: str) -> str:
        return self.mor_map[f]

    def __repr__(self) -> str:
        return f"Functor({self.name}: {self.source.name} -> {self.target.name})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, Functor):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and self.obj_map == other.obj_map and self.mor_map == other.mor_map)

    __hash__ = None  # type: ignore[assignment]


def validate_functor(F: Functor) -> Functor:
    C, D = F.source, F.target
    problems: list[FunctorError] = []
    for x in C.objects:
        y = F.obj_map.get(x)
        if y is None or not D.has_object(y):
            problems.append(DomCodMismatch(f"{F.name} sends object {x} to {y!r}, not an object of {D.name}", (x,)))
    if problems:
        raise FunctorLawViolation(problems)
    for f in C.morphisms:
        g = F.mor_map.get(f)
        if g is None or not D.has_morphism(g):
            problems.append(DomCodMismatch(f"{F.name} sends {f} to {g!r}, not a morphism of {D.name}", (f,)))
            continue
        want = (F.obj_map[C.dom(f)], F.obj_map[C.cod(f)])
        if (D.dom(g), D.cod(g)) != want:
            problems.append(DomCodMismatch(
                f"{F.name}({f}) = {g}: {D.dom(g)} -> {D.cod(g)}, expected {want[0]} -> {want[1]}", (f,)))
    if problems:
        raise FunctorLawViolation(problems)
    for x in C.objects:
        if F.mor_map[C.id(x)] != D.id(F.obj_map[x]):
            problems.append(IdentityNotPreserved(f"{F.name} does not preserve the identity of {x}", (x,)))
    for g, f in C.composable_pairs():
        lhs = F.mor_map[C.compose(g, f)]
        rhs = D.compose(F.mor_map[g], F.mor_map[f])
        if lhs != rhs:
            problems.append(CompositionNotPreserved(
                f"{F.name}({g} ∘ {f}) = {lhs} but {F.name}({g}) ∘ {F.name}({f}) = {rhs}", (g, f)))
    if problems:
        raise FunctorLawViolation(problems)
    return F


def make_functor(source: FinCategory, target: FinCategory, obj_map: Mapping[str, str],
                 mor_map: Mapping[str, str] | None = None, name: str = "F") -> Functor:
    """Build and validate a functor, filling in forced morphism images.

    Identities go to identities, and a morphism whose target hom-set has a
    single element needs no explicit image.
    """
    mm = dict(mor_map or {})
    for x in source.objects:
        if x in obj_map:
            mm.setdefault(source.id(x), target.id(obj_map[x]) if target.has_object(obj_map[x]) else None)
    for f in source.morphisms:
        if f in mm:
            continue
        a, b = obj_map.get(source.dom(f)), obj_map.get(source.cod(f))
        if a is not None and b is not None and target.has_object(a) and target.has_object(b):
            options = target.hom(a, b)
            if len(options) == 1:
                mm[f] = options[0]
    mm = {k: v for k, v in mm.items() if v is not None}
    return validate_functor(Functor(source, target, obj_map, mm, name))


def identity_functor(C: FinCategory, name: str | None = None) -> Functor:
    return Functor(C, C, {x: x for x in C.objects}, {f: f for f in C.morphisms}, name or f"1_{C.name}")


def inclusion(sub: Subcategory, name: str | None = None) -> Functor:
    return Functor(sub.category, sub.parent, {x: x for x in sub.objects},
                   {f: f for f in sub.morphisms}, name or f"inc_{sub.name}")


def constant_functor(C: FinCategory, D: FinCategory, d: str, name: str | None = None) -> Functor:
    one = D.id(d)
    return Functor(C, D, {x: d for x in C.objects}, {f: one for f in C.morphisms}, name or f"const_{d}")


def compose_functors(G: Functor, F: Functor, name: str | None = None) -> Functor:
    """``G ∘ F`` (apply ``F`` first)."""
    if F.target != G.source:
        raise ShapeMismatch(f"cannot compose {G.name} after {F.name}: {F.target.name} vs {G.source.name}")
    return Functor(F.source, G.target,
                   {x: G.obj_map[y] for x, y in F.obj_map.items()},
                   {f: G.mor_map[g] for f, g in F.mor_map.items()},
                   name or f"{G.name}{F.name}")


def restrict(F: Functor, sub: Subcategory, name: str | None = None) -> Functor:
    """``F|_sub = F ∘ inc_sub``."""
    return compose_functors(F, inclusion(sub), name or f"{F.name}|{sub.name}")


def opposite_functor(F: Functor) -> Functor:
    return Functor(opposite(F.source), opposite(F.target), F.obj_map, F.mor_map, F.name)


# -- properties --------------------------------------------------------------------

@dataclass(frozen=True)
class FunctorProps:
    full: bool
    faithful: bool
    essentially_surjective: bool
    full_witness: tuple[str, ...] | None = None
    faithful_witness: tuple[str, ...] | None = None
    surjective_witness: tuple[str, ...] | None = None
    # first unordered object pair (declaration order) where either hom map fails
    fully_faithful_witness: tuple[str, ...] | None = None

    @property
    def fully_faithful(self) -> bool:
        return self.full and self.faithful


class _UnionFind:
    def __init__(self, items):
        self.parent = {i: i for i in items}

    def find(self, i):
        while self.parent[i] != i:
            self.parent[i] = self.parent[self.parent[i]]
            i = self.parent[i]
        return i

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


def iso_classes(C: FinCategory) -> dict[str, str]:
    """Map each object to a representative of its isomorphism class."""
    uf = _UnionFind(C.objects)
    for f in C.morphisms:
        if C.dom(f) != C.cod(f) and is_iso(C, f):
            uf.union(C.dom(f), C.cod(f))
    return {x: uf.find(x) for x in C.objects}


def _hom_map(F: Functor, x: str, y: str) -> tuple[int, int, int]:
    """(size of source hom, size of image, size of target hom) for C(x, y)."""
    src = F.source.hom(x, y)
    image = {F.mor_map[f] for f in src}
    return len(src), len(image), len(F.target.hom(F.obj_map[x], F.obj_map[y]))


def functor_props(F: Functor) -> FunctorProps:
    C = F.source
    full_w = faithful_w = ff_w = None
    objs = C.objects
    for i, x in enumerate(objs):
        for y in objs[i:]:
            for a, b in ((x, y), (y, x)):
                n_src, n_img, n_tgt = _hom_map(F, a, b)
                if faithful_w is None and n_img != n_src:
                    faithful_w = (x, y)
                if full_w is None and n_img != n_tgt:
                    full_w = (x, y)
                if ff_w is None and (n_img != n_src or n_img != n_tgt):
                    ff_w = (x, y)
            if full_w is not None and faithful_w is not None:
                break
        if full_w is not None and faithful_w is not None:
            break
    rep = iso_classes(F.target)
    reached = {rep[F.obj_map[x]] for x in objs}
    surj_w = None
    for z in F.target.objects:
        if rep[z] not in reached:
            surj_w = (z,)
            break
    return FunctorProps(full_w is None, faithful_w is None, surj_w is None,
                        full_w, faithful_w, surj_w, ff_w)


def is_full(F: Functor) -> bool:
    return functor_props(F).full


def is_faithful(F: Functor) -> bool:
    return functor_props(F).faithful


def fully_faithful(F: Functor) -> Verdict:
    p = functor_props(F)
    if p.fully_faithful:
        return holds()
    return fails(*p.fully_faithful_witness)


def is_identity_functor(F: Functor) -> bool:
    return F.source == F.target and F == identity_functor(F.source)


# -- natural transformations ------------------------------------------------------

class NatTransformation:
    """Components ``x ↦ t_x : F x -> G x``; naturality is checked, never assumed."""

    def __init__(self, source: Functor, target: Functor, components: Mapping[str, str], name: str = "t"):
        self.source = source
        self.target = target
        self.components = dict(components)
        self.name = name

    def __getitem__(self, x: str) -> str:
        return self.components[x]

    @property
    def domain(self) -> FinCategory:
        return self.source.source

    @property
    def codomain(self) -> FinCategory:
        return self.source.target

    def __repr__(self) -> str:
        return f"NatTransformation({self.name}: {self.source.name} => {self.target.name})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, NatTransformation):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and self.components == other.components)

    __hash__ = None  # type: ignore[assignment]


def naturality_failure(t: NatTransformation) -> FunctorError | None:
    """First typing or naturality problem of ``t`` in declaration order, or None."""
    F, G = t.source, t.target
    if F.source != G.source or F.target != G.target:
        return ShapeMismatch(f"{t.name}: {F.name} and {G.name} are not parallel")
    C, D = F.source, F.target
    for x in C.objects:
        c = t.components.get(x)
        if c is None or not D.has_morphism(c) or D.dom(c) != F.ob(x) or D.cod(c) != G.ob(x):
            return DomCodMismatch(
                f"{t.name}_{x} = {c!r} is not a morphism {F.ob(x)} -> {G.ob(x)}", (x,))
    for f in C.morphisms:
        if C.is_identity(f):
            continue
        x, y = C.dom(f), C.cod(f)
        lhs = D.compose(G.mor(f), t.components[x])
        rhs = D.compose(t.components[y], F.mor(f))
        if lhs != rhs:
            return NaturalitySquareFails(
                f"naturality square of {t.name} at {f}: {lhs} != {rhs}", (f,))
    return None


def validate_nat(t: NatTransformation) -> NatTransformation:
    problem = naturality_failure(t)
    if problem is not None:
        raise problem
    return t


def identity_nat(F: Functor, name: str | None = None) -> NatTransformation:
    D = F.target
    return NatTransformation(F, F, {x: D.id(F.ob(x)) for x in F.source.objects}, name or f"1_{F.name}")


def whisker_right(t: NatTransformation, H: Functor, name: str | None = None) -> NatTransformation:
    """``tH``: components ``t_{Hx}``."""
    if H.target != t.domain:
        raise ShapeMismatch(f"cannot whisker {t.name} by {H.name}")
    return NatTransformation(compose_functors(t.source, H), compose_functors(t.target, H),
                             {x: t.components[H.ob(x)] for x in H.source.objects},
                             name or f"{t.name}{H.name}")


def whisker_left(K: Functor, t: NatTransformation, name: str | None = None) -> NatTransformation:
    """``Kt``: components ``K(t_x)``."""
    if K.source != t.codomain:
        raise ShapeMismatch(f"cannot whisker {K.name} by {t.name}")
    return NatTransformation(compose_functors(K, t.source), compose_functors(K, t.target),
                             {x: K.mor(c) for x, c in t.components.items()},
                             name or f"{K.name}{t.name}")


def whisker(a, b, name: str | None = None) -> NatTransformation:
    """``whisker(t, F)`` is ``tF``; ``whisker(F, t)`` is ``Ft``."""
    if isinstance(a, NatTransformation) and isinstance(b, Functor):
        return whisker_right(a, b, name)
    if isinstance(a, Functor) and isinstance(b, NatTransformation):
        return whisker_left(a, b, name)
    raise ShapeMismatch("whisker takes a functor and a natural transformation")


def vertical_compose(s: NatTransformation, t: NatTransformation, name: str | None = None) -> NatTransformation:
    """``s · t`` (apply ``t`` first): components ``s_x ∘ t_x``."""
    if t.target != s.source:
        raise ShapeMismatch(f"cannot compose {s.name} after {t.name}")
    D = t.codomain
    return NatTransformation(t.source, s.target,
                             {x: D.compose(s.components[x], t.components[x]) for x in t.domain.objects},
                             name or f"{s.name}·{t.name}")


def opposite_nat(t: NatTransformation) -> NatTransformation:
    """``t: F => G`` becomes ``t^op: G^op => F^op`` with the same components."""
    return NatTransformation(opposite_functor(t.target), opposite_functor(t.source), t.components, t.name)


def is_natural_isomorphism(t: NatTransformation) -> Verdict:
    D = t.codomain
    for x in t.domain.objects:
        if not is_iso(D, t.components[x]):
            return fails(x)
    return holds()


def inverse_nat(t: NatTransformation, name: str | None = None) -> NatTransformation:
    D = t.codomain
    comps = {}
    for x, c in t.components.items():
        inv = inverse(D, c)
        if inv is None:
            raise ShapeMismatch(f"{t.name}_{x} is not invertible", (x,))
        comps[x] = inv
    return NatTransformation(t.target, t.source, comps, name or f"{t.name}^-1")
