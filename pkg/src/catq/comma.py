"""Comma categories, universal morphisms, and comma transport along an adjunction."""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, NamedTuple

from .category import FinCategory, RawCategory, identity_name, terminal_category, validate_category
from .errors import CodomainMismatch, ShapeMismatch
from .functor import Functor, compose_functors, constant_functor, validate_functor

if TYPE_CHECKING:
    from .adjunction import Adjunction

STAR = "*"


@dataclass(frozen=True)
class CommaObject:
    x: str
    y: str
    f: str


@dataclass(frozen=True)
class CommaMorphism:
    k: str
    h: str


def comma_object_id(x: str, y: str, f: str) -> str:
    return f"({x}|{y}|{f})"


def comma_morphism_id(k: str, h: str, src: str, tgt: str) -> str:
    return f"[{k}|{h}]:{src}->{tgt}"


class CommaCategory:
    """``F↓G`` with back-references from its identifiers to triples and pairs."""

    def __init__(self, left: Functor, right: Functor, category: FinCategory,
                 triples: dict[str, CommaObject], pairs: dict[str, CommaMorphism]):
        self.left = left
        self.right = right
        self.category = category
        self.triples = triples
        self.pairs = pairs
        self._by_triple = {t: o for o, t in triples.items()}
        self._by_pair: dict[tuple[str, str, str, str], str] = {}
        C = category
        for m, p in pairs.items():
            self._by_pair[(C.dom(m), C.cod(m), p.k, p.h)] = m

    def __repr__(self) -> str:
        return f"<CommaCategory {self.category.name}: {len(self.triples)} objects>"

    def object_of(self, x: str, y: str, f: str) -> str:
        return self._by_triple[CommaObject(x, y, f)]

    def morphism_of(self, src: str, tgt: str, k: str, h: str) -> str:
        return self._by_pair[(src, tgt, k, h)]


def comma(F: Functor, G: Functor, name: str | None = None) -> CommaCategory:
    """The comma category ``F↓G`` for ``F: C -> D`` and ``G: E -> D``."""
    if F.target != G.target:
        raise CodomainMismatch(f"{F.name} and {G.name} do not share a codomain")
    C, E, D = F.source, G.source, F.target
    triples: dict[str, CommaObject] = {}
    for x in C.objects:
        for y in E.objects:
            for f in D.hom(F.ob(x), G.ob(y)):
                triples[comma_object_id(x, y, f)] = CommaObject(x, y, f)
    by_triple = {t: o for o, t in triples.items()}

    morphisms: list[tuple[str, str, str]] = []
    pairs: dict[str, CommaMorphism] = {}
    lookup: dict[tuple[str, str, str, str], str] = {}
    for src, t in triples.items():
        for k in C.out(t.x):
            Fk = F.mor(k)
            for h in E.out(t.y):
                if C.is_identity(k) and E.is_identity(h):
                    continue
                Ghf = D.compose(G.mor(h), t.f)
                x2, y2 = C.cod(k), E.cod(h)
                for f2 in D.hom(F.ob(x2), G.ob(y2)):
                    if D.compose(f2, Fk) == Ghf:
                        tgt = by_triple[CommaObject(x2, y2, f2)]
                        mid = comma_morphism_id(k, h, src, tgt)
                        morphisms.append((mid, src, tgt))
                        pairs[mid] = CommaMorphism(k, h)
                        lookup[(src, tgt, k, h)] = mid
    for o, t in triples.items():
        pairs[identity_name(o)] = CommaMorphism(C.id(t.x), E.id(t.y))
        lookup[(o, o, C.id(t.x), E.id(t.y))] = identity_name(o)

    composition: dict[tuple[str, str], str] = {}
    out: dict[str, list[tuple[str, str]]] = {}
    for mid, src, tgt in morphisms:
        out.setdefault(src, []).append((mid, tgt))
    for f_id, src, mid_obj in morphisms:
        pf = pairs[f_id]
        for g_id, tgt in out.get(mid_obj, ()):
            pg = pairs[g_id]
            k, h = C.compose(pg.k, pf.k), E.compose(pg.h, pf.h)
            composition[(g_id, f_id)] = lookup[(src, tgt, k, h)]
    cat = validate_category(RawCategory(
        objects=list(triples), morphisms=morphisms, composition=composition,
        name=name or f"{F.name}↓{G.name}"))
    return CommaCategory(F, G, cat, triples, pairs)


def under(c: str, G: Functor, name: str | None = None) -> CommaCategory:
    """``c↓G``; objects are ``(*|y|f)`` with ``f: c -> Gy``."""
    one = terminal_category(obj=STAR)
    return comma(constant_functor(one, G.target, c, name=c), G, name or f"{c}↓{G.name}")


def over(G: Functor, c: str, name: str | None = None) -> CommaCategory:
    """``G↓c``; objects are ``(y|*|f)`` with ``f: Gy -> c``."""
    one = terminal_category(obj=STAR)
    return comma(G, constant_functor(one, G.target, c, name=c), name or f"{G.name}↓{c}")


# -- universal morphisms ----------------------------------------------------------

@dataclass(frozen=True)
class UniversalArrow:
    """``obj`` in the source of ``G`` and ``arrow`` between ``c`` and ``G obj``."""
    obj: str
    arrow: str


def is_universal_from(c: str, G: Functor, u: str, eta: str) -> bool:
    """Does every ``f: c -> Gy`` factor uniquely as ``Gg ∘ eta``?"""
    D, C = G.source, G.target
    for y in D.objects:
        images = [C.compose(G.mor(g), eta) for g in D.hom(u, y)]
        if len(images) != len(C.hom(c, G.ob(y))) or len(set(images)) != len(images):
            return False
    return True


def is_universal_to(G: Functor, c: str, u: str, eps: str) -> bool:
    """Does every ``f: Gy -> c`` factor uniquely as ``eps ∘ Gg``?"""
    D, C = G.source, G.target
    for y in D.objects:
        images = [C.compose(eps, G.mor(g)) for g in D.hom(y, u)]
        if len(images) != len(C.hom(G.ob(y), c)) or len(set(images)) != len(images):
            return False
    return True


def universal_from(c: str, G: Functor) -> UniversalArrow | None:
    """Declaration-order least initial object of ``c↓G``, or None."""
    D, C = G.source, G.target
    for u in D.objects:
        for eta in C.hom(c, G.ob(u)):
            if is_universal_from(c, G, u, eta):
                return UniversalArrow(u, eta)
    return None


def universal_to(G: Functor, c: str) -> UniversalArrow | None:
    """Declaration-order least final object of ``G↓c``, or None."""
    D, C = G.source, G.target
    for u in D.objects:
        for eps in C.hom(G.ob(u), c):
            if is_universal_to(G, c, u, eps):
                return UniversalArrow(u, eps)
    return None


# -- transport along an adjunction -------------------------------------------------

class Transport(NamedTuple):
    forward: Functor
    backward: Functor
    source: CommaCategory
    target: CommaCategory


def transport_iso(P: Functor, adj: Adjunction, Q: Functor) -> Transport:
    """The isomorphism ``FP↓Q ≅ P↓GQ`` for an adjunction ``F ⊣ G``.

    ``forward`` sends ``(a, b, f)`` to ``(a, b, G(f) ∘ η_{Pa})`` and keeps
    morphism pairs unchanged; ``backward`` uses ``ε_{Qb} ∘ F(g)``.
    """
    F, G = adj.left, adj.right
    if P.target != F.source or Q.target != F.target:
        raise ShapeMismatch("P must land in the source of F and Q in its target")
    left = comma(compose_functors(F, P), Q)
    right = comma(P, compose_functors(G, Q))
    obj_r, obj_ri = {}, {}
    for o, t in left.triples.items():
        o2 = right.object_of(t.x, t.y, adj.phi(P.ob(t.x), Q.ob(t.y), t.f))
        obj_r[o] = o2
    for o, t in right.triples.items():
        obj_ri[o] = left.object_of(t.x, t.y, adj.phi_inv(P.ob(t.x), Q.ob(t.y), t.f))

    def move(src: CommaCategory, dst: CommaCategory, omap: dict[str, str]) -> dict[str, str]:
        mm = {}
        S = src.category
        for m, p in src.pairs.items():
            mm[m] = dst.morphism_of(omap[S.dom(m)], omap[S.cod(m)], p.k, p.h)
        return mm

    R = validate_functor(Functor(left.category, right.category, obj_r, move(left, right, obj_r), "R"))
    R_inv = validate_functor(Functor(right.category, left.category, obj_ri, move(right, left, obj_ri), "R^-1"))
    return Transport(R, R_inv, left, right)
