"""Finite categories: validation, elementary morphism properties, duality.

A category is stored as an explicit composition table.  Identities are
always named ``id_<object>`` and are never stored in the table; composing
with one is resolved before the lookup.
"""

from __future__ import annotations

import os
from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping

from .errors import (
    AssociativityViolation,
    CategoryError,
    CategoryLawViolation,
    CompositeTypeMismatch,
    DuplicateIdentifier,
    IdentityLawViolation,
    MissingComposite,
    MissingIdentity,
    NonComposablePairInTable,
    SizeLimitExceeded,
    SubcategoryError,
    UnknownMorphism,
    UnknownObject,
)

DEFAULT_MAX_MORPHISMS = 10_000
_size_cap: ContextVar[int | None] = ContextVar("catq_size_cap", default=None)

# Violations collected before validation gives up.
_MAX_REPORTED = 50


def max_morphisms() -> int:
    """Current cap on the number of morphisms (identities included)."""
    cap = _size_cap.get()
    if cap is not None:
        return cap
    env = os.environ.get("CATQ_MAX_SIZE")
    if env:
        return int(env)
    return DEFAULT_MAX_MORPHISMS


@contextmanager
def size_limit(n: int | None) -> Iterator[None]:
    token = _size_cap.set(n)
    try:
        yield
    finally:
        _size_cap.reset(token)


def identity_name(x: str) -> str:
    return f"id_{x}"


@dataclass(frozen=True)
class Morphism:
    name: str
    dom: str
    cod: str


@dataclass
class RawCategory:
    """Unchecked category data, as produced by the parser or a generator.

    ``morphisms`` lists the non-identity morphisms as ``(name, dom, cod)``;
    ``composition`` maps ``(g, f)`` to the name of ``g ∘ f``.  Entries that
    involve identities are optional and only checked for consistency.
    """

    objects: list[str]
    morphisms: list[tuple[str, str, str]] = field(default_factory=list)
    composition: dict[tuple[str, str], str] = field(default_factory=dict)
    name: str = "C"
    identities: dict[str, str] | None = None
    order: frozenset[tuple[str, str]] | None = None


class FinCategory:
    """A validated finite category.  Build one with :func:`validate_category`."""

    def __init__(self, name, objects, morphisms, identity, composition, order=None):
        self.name: str = name
        self.objects: tuple[str, ...] = tuple(objects)
        self._mor: dict[str, Morphism] = morphisms
        self.morphisms: tuple[str, ...] = tuple(morphisms)
        self._identity: dict[str, str] = identity
        self._identities = frozenset(identity.values())
        self._comp: dict[tuple[str, str], str] = composition
        # Known poset presentation (pairs x <= y), kept for compact emission.
        self.order: frozenset[tuple[str, str]] | None = order
        self._obj_index = {x: i for i, x in enumerate(self.objects)}
        self._mor_index = {f: i for i, f in enumerate(self.morphisms)}
        hom: dict[tuple[str, str], list[str]] = {}
        out: dict[str, list[str]] = {x: [] for x in self.objects}
        inc: dict[str, list[str]] = {x: [] for x in self.objects}
        for f, m in morphisms.items():
            hom.setdefault((m.dom, m.cod), []).append(f)
            out[m.dom].append(f)
            inc[m.cod].append(f)
        self._hom = {k: tuple(v) for k, v in hom.items()}
        self._out = {k: tuple(v) for k, v in out.items()}
        self._in = {k: tuple(v) for k, v in inc.items()}
        self._cache: dict = {}

    # -- basic structure ------------------------------------------------------

    def __repr__(self) -> str:
        return f"FinCategory({self.name!r}, {len(self.objects)} objects, {len(self.morphisms)} morphisms)"

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, FinCategory):
            return NotImplemented
        return (
            self.name == other.name
            and self.objects == other.objects
            and self.morphisms == other.morphisms
            and self._mor == other._mor
            and self._identity == other._identity
            and self._comp == other._comp
        )

    def __hash__(self) -> int:
        return hash((self.name, self.objects, self.morphisms))

    def has_object(self, x: str) -> bool:
        return x in self._obj_index

    def has_morphism(self, f: str) -> bool:
        return f in self._mor

    def _m(self, f: str) -> Morphism:
        try:
            return self._mor[f]
        except KeyError:
            raise UnknownMorphism(f"unknown morphism {f!r} in {self.name}", (f,)) from None

    def dom(self, f: str) -> str:
        return self._m(f).dom

    def cod(self, f: str) -> str:
        return self._m(f).cod

    def id(self, x: str) -> str:
        try:
            return self._identity[x]
        except KeyError:
            raise UnknownObject(f"unknown object {x!r} in {self.name}", (x,)) from None

    def is_identity(self, f: str) -> bool:
        return f in self._identities

    def hom(self, x: str, y: str) -> tuple[str, ...]:
        return self._hom.get((x, y), ())

    def out(self, x: str) -> tuple[str, ...]:
        return self._out[x]

    def into(self, x: str) -> tuple[str, ...]:
        return self._in[x]

    def object_index(self, x: str) -> int:
        return self._obj_index[x]

    def morphism_index(self, f: str) -> int:
        return self._mor_index[f]

    def compose(self, *fs: str) -> str:
        """``compose(h, g, f)`` is ``h ∘ g ∘ f``."""
        if not fs:
            raise ValueError("compose needs at least one morphism")
        result = fs[-1]
        for g in reversed(fs[:-1]):
            result = self._compose2(g, result)
        return result

    def _compose2(self, g: str, f: str) -> str:
        mg, mf = self._m(g), self._m(f)
        if mf.cod != mg.dom:
            raise NonComposablePairInTable(
                f"{g} ∘ {f} is not composable in {self.name}", (g, f))
        if g in self._identities:
            return f
        if f in self._identities:
            return g
        return self._comp[(g, f)]

    def composable_pairs(self) -> Iterator[tuple[str, str]]:
        """All non-identity composable pairs ``(g, f)`` in declaration order."""
        for f in self.morphisms:
            if f in self._identities:
                continue
            for g in self._out[self._mor[f].cod]:
                if g not in self._identities:
                    yield g, f

    def to_raw(self) -> RawCategory:
        return RawCategory(
            objects=list(self.objects),
            morphisms=[(f, m.dom, m.cod) for f, m in self._mor.items() if f not in self._identities],
            composition=dict(self._comp),
            name=self.name,
            order=self.order,
        )

    def renamed(self, name: str) -> FinCategory:
        return FinCategory(name, self.objects, self._mor, self._identity, self._comp, self.order)

    @property
    def is_thin(self) -> bool:
        """At most one morphism between any two objects."""
        return all(len(v) <= 1 for v in self._hom.values())


# -- validation ---------------------------------------------------------------

def validate_category(raw: RawCategory, max_size: int | None = None) -> FinCategory:
    """Check the category laws and return a :class:`FinCategory`.

    Raises :class:`CategoryLawViolation` listing every violation found.
    """
    cap = max_size if max_size is not None else max_morphisms()
    total = len(raw.morphisms) + (len(raw.objects) if raw.identities is None else 0)
    if total > cap:
        raise SizeLimitExceeded(
            f"category {raw.name} has {total} morphisms, above the cap of {cap}")

    problems: list[CategoryError] = []
    objects: list[str] = []
    seen: set[str] = set()
    for x in raw.objects:
        if x in seen:
            problems.append(DuplicateIdentifier(f"object {x!r} declared twice", (x,)))
            continue
        seen.add(x)
        objects.append(x)
    if problems:
        raise CategoryLawViolation(problems)

    mor: dict[str, Morphism] = {}
    identity: dict[str, str] = {}
    if raw.identities is None:
        for x in objects:
            i = identity_name(x)
            identity[x] = i
            mor[i] = Morphism(i, x, x)
    user: list[Morphism] = []
    for name, d, c in raw.morphisms:
        for end in (d, c):
            if end not in seen:
                problems.append(UnknownObject(f"morphism {name!r} uses unknown object {end!r}", (name, end)))
        if name in mor or any(m.name == name for m in user):
            problems.append(DuplicateIdentifier(f"morphism {name!r} declared twice or reserved", (name,)))
            continue
        user.append(Morphism(name, d, c))
    if raw.identities is not None:
        by_name = {m.name: m for m in user}
        for x in objects:
            i = raw.identities.get(x)
            if i is None:
                problems.append(MissingIdentity(f"object {x!r} has no identity", (x,)))
            elif i not in by_name or by_name[i].dom != x or by_name[i].cod != x:
                problems.append(MissingIdentity(f"identity of {x!r} is not an endomorphism of it", (x, i)))
        if problems:
            raise CategoryLawViolation(problems)
        for x in objects:
            m = by_name[raw.identities[x]]
            identity[x] = m.name
            mor[m.name] = m
        user = [m for m in user if m.name not in mor]
    if problems:
        raise CategoryLawViolation(problems)
    for m in user:
        mor[m.name] = m
    ids = set(identity.values())

    comp: dict[tuple[str, str], str] = {}
    for (g, f), h in raw.composition.items():
        bad = [u for u in (g, f, h) if u not in mor]
        if bad:
            problems.append(UnknownMorphism(f"composition {g} ∘ {f} = {h} uses unknown morphism {bad[0]!r}", (g, f, h)))
            continue
        mg, mf, mh = mor[g], mor[f], mor[h]
        if mf.cod != mg.dom:
            problems.append(NonComposablePairInTable(
                f"table defines {g} ∘ {f} but cod({f}) = {mf.cod} differs from dom({g}) = {mg.dom}", (g, f)))
            continue
        if mh.dom != mf.dom or mh.cod != mg.cod:
            problems.append(CompositeTypeMismatch(
                f"{g} ∘ {f} = {h} but {h}: {mh.dom} -> {mh.cod}, expected {mf.dom} -> {mg.cod}", (g, f, h)))
            continue
        if g in ids or f in ids:
            expected = f if g in ids else g
            if h != expected:
                problems.append(IdentityLawViolation(
                    f"{g} ∘ {f} should be {expected}, table says {h}", (g, f, h)))
            continue
        comp[(g, f)] = h
    if problems:
        raise CategoryLawViolation(problems)

    out: dict[str, list[str]] = {x: [] for x in objects}
    for m in user:
        out[m.dom].append(m.name)
    for m in user:
        for g in out[m.cod]:
            if (g, m.name) not in comp:
                problems.append(MissingComposite(f"composite {g} ∘ {m.name} is not defined", (g, m.name)))
                if len(problems) >= _MAX_REPORTED:
                    raise CategoryLawViolation(problems)
    if problems:
        raise CategoryLawViolation(problems)

    def c2(g, f):
        if g in ids:
            return f
        if f in ids:
            return g
        return comp[(g, f)]

    for m in user:
        f = m.name
        for g in out[m.cod]:
            gf = comp[(g, f)]
            for h in out[mor[g].cod]:
                left = c2(h, gf)
                right = c2(comp[(h, g)], f)
                if left != right:
                    problems.append(AssociativityViolation(
                        f"{h} ∘ ({g} ∘ {f}) = {left} but ({h} ∘ {g}) ∘ {f} = {right}", (h, g, f)))
                    if len(problems) >= _MAX_REPORTED:
                        raise CategoryLawViolation(problems)
    if problems:
        raise CategoryLawViolation(problems)

    # identities first (object order), then declared morphisms
    ordered = {identity[x]: mor[identity[x]] for x in objects}
    for m in user:
        ordered[m.name] = m
    return FinCategory(raw.name, objects, ordered, identity, comp, raw.order)


def terminal_category(name: str = "1", obj: str = "*") -> FinCategory:
    return validate_category(RawCategory([obj], name=name, order=frozenset({(obj, obj)})))


# -- morphism properties --------------------------------------------------------

@dataclass(frozen=True)
class MorphismClass:
    is_iso: bool
    is_mono: bool
    is_epi: bool
    is_split_mono: bool
    is_split_epi: bool


def _check_morphism(C: FinCategory, f: str) -> None:
    if not C.has_morphism(f):
        raise UnknownMorphism(f"unknown morphism {f!r} in {C.name}", (f,))


def is_mono(C: FinCategory, f: str) -> bool:
    """Left cancellation: f∘g = f∘h forces g = h."""
    _check_morphism(C, f)
    key = ("mono", f)
    if key not in C._cache:
        a = C.dom(f)
        ok = True
        for z in C.objects:
            images = [C.compose(f, g) for g in C.hom(z, a)]
            if len(set(images)) != len(images):
                ok = False
                break
        C._cache[key] = ok
    return C._cache[key]


def is_epi(C: FinCategory, f: str) -> bool:
    """Right cancellation: g∘f = h∘f forces g = h."""
    _check_morphism(C, f)
    key = ("epi", f)
    if key not in C._cache:
        b = C.cod(f)
        ok = True
        for z in C.objects:
            images = [C.compose(g, f) for g in C.hom(b, z)]
            if len(set(images)) != len(images):
                ok = False
                break
        C._cache[key] = ok
    return C._cache[key]


def retraction(C: FinCategory, f: str) -> str | None:
    """First ``r`` (declaration order) with ``r ∘ f = 1``, if any."""
    _check_morphism(C, f)
    a, b = C.dom(f), C.cod(f)
    one = C.id(a)
    for r in C.hom(b, a):
        if C.compose(r, f) == one:
            return r
    return None


def section(C: FinCategory, f: str) -> str | None:
    """First ``s`` with ``f ∘ s = 1``, if any."""
    _check_morphism(C, f)
    a, b = C.dom(f), C.cod(f)
    one = C.id(b)
    for s in C.hom(b, a):
        if C.compose(f, s) == one:
            return s
    return None


def inverse(C: FinCategory, f: str) -> str | None:
    """The two-sided inverse of ``f`` or None."""
    _check_morphism(C, f)
    key = ("inv", f)
    if key not in C._cache:
        a, b = C.dom(f), C.cod(f)
        found = None
        for g in C.hom(b, a):
            if C.compose(g, f) == C.id(a) and C.compose(f, g) == C.id(b):
                found = g
                break
        C._cache[key] = found
    return C._cache[key]


def is_iso(C: FinCategory, f: str) -> bool:
    return inverse(C, f) is not None


def morphism_class(C: FinCategory, f: str) -> MorphismClass:
    return MorphismClass(
        is_iso=is_iso(C, f),
        is_mono=is_mono(C, f),
        is_epi=is_epi(C, f),
        is_split_mono=retraction(C, f) is not None,
        is_split_epi=section(C, f) is not None,
    )


# -- initial / final objects ---------------------------------------------------

def is_initial(C: FinCategory, x: str) -> bool:
    return all(len(C.hom(x, y)) == 1 for y in C.objects)


def is_final(C: FinCategory, x: str) -> bool:
    return all(len(C.hom(y, x)) == 1 for y in C.objects)


def find_initial(C: FinCategory) -> list[str]:
    return [x for x in C.objects if is_initial(C, x)]


def find_final(C: FinCategory) -> list[str]:
    return [x for x in C.objects if is_final(C, x)]


# -- duality -----------------------------------------------------------------------

def op_name(name: str) -> str:
    return name[:-3] if name.endswith("^op") else name + "^op"


def opposite(C: FinCategory) -> FinCategory:
    """The opposite category; morphism names are kept, so ``opposite`` is an involution."""
    if "op" not in C._cache:
        mor = {f: Morphism(f, m.cod, m.dom) for f, m in C._mor.items()}
        comp = {(f, g): h for (g, f), h in C._comp.items()}
        order = None if C.order is None else frozenset((y, x) for x, y in C.order)
        D = FinCategory(op_name(C.name), C.objects, mor, dict(C._identity), comp, order)
        D._cache["op"] = C
        C._cache["op"] = D
    return C._cache["op"]


# -- subcategories ----------------------------------------------------------------

class Subcategory:
    """A subcategory of ``parent`` given by object and morphism subsets.

    Morphism identifiers are shared with the parent, so the inclusion
    functor is the identity on names.
    """

    def __init__(self, parent: FinCategory, objects: Iterable[str],
                 morphisms: Iterable[str] | None = None, name: str | None = None):
        self.parent = parent
        objs = list(dict.fromkeys(objects))
        for x in objs:
            if not parent.has_object(x):
                raise SubcategoryError(f"{x!r} is not an object of {parent.name}", (x,))
        # keep the parent's declaration order
        objs.sort(key=parent.object_index)
        self.objects: tuple[str, ...] = tuple(objs)
        inside = set(objs)
        full_homs = [f for f in parent.morphisms if parent.dom(f) in inside and parent.cod(f) in inside]
        if morphisms is None:
            chosen = full_homs
        else:
            wanted = set(morphisms)
            for f in wanted:
                if not parent.has_morphism(f):
                    raise SubcategoryError(f"{f!r} is not a morphism of {parent.name}", (f,))
                if parent.dom(f) not in inside or parent.cod(f) not in inside:
                    raise SubcategoryError(f"{f!r} has an endpoint outside the subcategory", (f,))
            wanted |= {parent.id(x) for x in objs}
            chosen = [f for f in parent.morphisms if f in wanted]
            chosen_set = set(chosen)
            for g, f in ((g, f) for f in chosen for g in parent.out(parent.cod(f)) if g in chosen_set):
                h = parent.compose(g, f)
                if h not in chosen_set:
                    raise SubcategoryError(
                        f"{g} ∘ {f} = {h} is missing from the subcategory", (g, f, h))
        self.morphisms: tuple[str, ...] = tuple(chosen)
        self.full: bool = len(chosen) == len(full_homs)
        self.name: str = name or f"{parent.name}|{','.join(objs)}"
        self._category: FinCategory | None = None

    def __repr__(self) -> str:
        kind = "full " if self.full else ""
        return f"<{kind}Subcategory {self.name} of {self.parent.name}: {list(self.objects)}>"

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subcategory):
            return NotImplemented
        return (self.name == other.name and self.parent == other.parent
                and self.objects == other.objects and self.morphisms == other.morphisms)

    def __hash__(self) -> int:
        return hash((self.name, self.objects))

    def __contains__(self, x: str) -> bool:
        return x in set(self.objects)

    @property
    def category(self) -> FinCategory:
        """The subcategory as a category in its own right."""
        if self._category is None:
            P = self.parent
            ms = set(self.morphisms)
            mor = {f: P._mor[f] for f in self.morphisms}
            comp = {(g, f): h for (g, f), h in P._comp.items() if g in ms and f in ms}
            identity = {x: P.id(x) for x in self.objects}
            order = None
            if P.order is not None and self.full:
                inside = set(self.objects)
                order = frozenset((x, y) for x, y in P.order if x in inside and y in inside)
            # Laws are inherited from the validated parent.
            self._category = FinCategory(self.name, self.objects, mor, identity, comp, order)
        return self._category

    def op(self) -> Subcategory:
        return Subcategory(opposite(self.parent), self.objects,
                           None if self.full else self.morphisms, op_name(self.name))


def full_subcategory(parent: FinCategory, objects: Iterable[str], name: str | None = None) -> Subcategory:
    return Subcategory(parent, objects, None, name)
