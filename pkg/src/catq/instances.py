"""Instance generators: posets, finite topologies, layered categories, random bundles."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .adjunction import Adjunction, _assemble
from .category import (
    FinCategory,
    RawCategory,
    Subcategory,
    full_subcategory,
    identity_name,
    terminal_category,
    validate_category,
)
from .errors import NotAdjoint, NotAPartialOrder, NotATopology
from .functor import Functor, make_functor


@dataclass
class InstanceBundle:
    """An ambient category with a coreflective and a reflective full subcategory."""

    name: str
    ambient: FinCategory
    coreflective: Subcategory
    reflective: Subcategory
    expected: dict[str, bool] = field(default_factory=dict)
    note: str = ""


# -- posets ------------------------------------------------------------------------

def leq_name(x: str, y: str) -> str:
    return f"{x}<={y}"


def poset_closure(elements: Sequence[str], relation: Iterable[tuple[str, str]]) -> frozenset[tuple[str, str]]:
    """Reflexive-transitive closure; raises :class:`NotAPartialOrder` on a cycle."""
    known = set(elements)
    succ: dict[str, set[str]] = {x: set() for x in elements}
    for x, y in relation:
        for e in (x, y):
            if e not in known:
                raise NotAPartialOrder(f"{e!r} is not an element", (e,))
        if x != y:
            succ[x].add(y)
    order = set()
    for x in elements:
        seen = {x}
        stack = [x]
        while stack:
            z = stack.pop()
            for w in succ[z]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        order.update((x, y) for y in seen)
    for x, y in order:
        if x != y and (y, x) in order:
            a, b = sorted((x, y), key=list(elements).index)
            raise NotAPartialOrder(f"{a} <= {b} and {b} <= {a} with {a} != {b}", (a, b))
    return frozenset(order)


def poset_category(elements: Sequence[str], relation: Iterable[tuple[str, str]],
                   name: str = "P", max_size: int | None = None) -> FinCategory:
    """One morphism ``x<=y`` whenever x ≤ y; composition is forced."""
    elements = list(elements)
    order = poset_closure(elements, relation)
    idx = {x: i for i, x in enumerate(elements)}
    ups: dict[str, list[str]] = {x: [] for x in elements}
    for x, y in order:
        if x != y:
            ups[x].append(y)
    for x in elements:
        ups[x].sort(key=idx.__getitem__)
    morphisms = [(leq_name(x, y), x, y) for x in elements for y in ups[x]]
    comp = {}
    for x in elements:
        for y in ups[x]:
            for z in ups[y]:
                comp[(leq_name(y, z), leq_name(x, y))] = leq_name(x, z)
    return validate_category(RawCategory(elements, morphisms, comp, name=name, order=order),
                             max_size=max_size)


def chain(n: int, name: str | None = None) -> FinCategory:
    els = [str(i) for i in range(n)]
    return poset_category(els, zip(els, els[1:]), name or f"Chain{n}")


def subset_name(s: Iterable) -> str:
    return "{" + ",".join(str(p) for p in sorted(s)) + "}"


def powerset_poset(points: Sequence, name: str = "P") -> tuple[FinCategory, dict[str, frozenset]]:
    pts = sorted(points)
    subsets = [frozenset(c) for r in range(len(pts) + 1) for c in itertools.combinations(pts, r)]
    names = {subset_name(s): s for s in subsets}
    rel = [(subset_name(a), subset_name(b)) for a in subsets for b in subsets if a <= b]
    return poset_category(list(names), rel, name), names


def diamond(name: str = "Diamond") -> FinCategory:
    return poset_category(["bot", "a", "b", "top"],
                          [("bot", "a"), ("bot", "b"), ("a", "top"), ("b", "top")], name)


def parallel_pair(name: str = "Par") -> FinCategory:
    return validate_category(RawCategory(["a", "b"], [("f", "a", "b"), ("g", "a", "b")], name=name))


def monotone_functor(P: FinCategory, Q: FinCategory, obj_map: Mapping[str, str], name: str = "f") -> Functor:
    """The functor of a monotone map between poset categories."""
    return make_functor(P, Q, dict(obj_map), name=name)


# -- topologies ---------------------------------------------------------------------

def _check_topology(points, opens) -> list[frozenset]:
    X = frozenset(points)
    fam = {frozenset(u) for u in opens}
    for u in fam:
        if not u <= X:
            raise NotATopology(f"{subset_name(u)} is not a subset of the points", (subset_name(u),))
    if frozenset() not in fam:
        raise NotATopology("the empty set is not open", ("{}",))
    if X not in fam:
        raise NotATopology("the whole space is not open", (subset_name(X),))
    for a, b in itertools.combinations(sorted(fam, key=lambda s: (len(s), sorted(s))), 2):
        if a | b not in fam:
            raise NotATopology(f"union of {subset_name(a)} and {subset_name(b)} is not open",
                               (subset_name(a), subset_name(b)))
        if a & b not in fam:
            raise NotATopology(f"intersection of {subset_name(a)} and {subset_name(b)} is not open",
                               (subset_name(a), subset_name(b)))
    return sorted(fam, key=lambda s: (len(s), sorted(s)))


def topology_instance(points: Sequence, opens: Iterable[Iterable], name: str = "top",
                      expected: Mapping[str, bool] | None = None, note: str = "") -> InstanceBundle:
    """Powerset of ``points`` with the opens (coreflective) and closeds (reflective)."""
    fam = _check_topology(points, opens)
    X = frozenset(points)
    C, _ = powerset_poset(points, name)
    M = full_subcategory(C, [subset_name(u) for u in fam], "Open")
    N = full_subcategory(C, [subset_name(X - u) for u in fam], "Closed")
    return InstanceBundle(name, C, M, N, dict(expected or {}), note)


def regular_pair_instance(points: Sequence, opens: Iterable[Iterable], name: str = "reg",
                          note: str = "") -> InstanceBundle:
    """Clopen sets on both sides; the restricted adjunction is an equivalence."""
    fam = _check_topology(points, opens)
    X = frozenset(points)
    opens_set = set(fam)
    clopen = [u for u in fam if X - u in opens_set]
    C, _ = powerset_poset(points, name)
    names = [subset_name(u) for u in clopen]
    M = full_subcategory(C, names, "ClopenM")
    N = full_subcategory(C, names, "ClopenN")
    return InstanceBundle(name, C, M, N, _all_true(), note)


CHECK_LABELS = ["F", "I"] + [f"main.{k}" for k in ("i", "ii", "iii", "iv", "v", "vi", "vii", "viii")] + ["equivalence"]


def _all_true() -> dict[str, bool]:
    return {k: True for k in CHECK_LABELS}


SIERPINSKI = ([1, 2], [[], [1], [1, 2]])


def sierpinski() -> InstanceBundle:
    return topology_instance(*SIERPINSKI, name="sierp", expected={k: False for k in CHECK_LABELS},
                             note="Sierpinski space; reflector is closure, coreflector is interior")


def regsierp() -> InstanceBundle:
    return regular_pair_instance(*SIERPINSKI, name="regsierp",
                                 note="clopen subsets of the Sierpinski space on both sides")


def discrete(n: int = 2) -> InstanceBundle:
    pts = list(range(1, n + 1))
    opens = [list(c) for r in range(n + 1) for c in itertools.combinations(pts, r)]
    return topology_instance(pts, opens, name=f"discrete{n}", expected=_all_true(),
                             note=f"discrete topology on {n} points")


def partition_topology(blocks: Sequence[Sequence[int]], name: str = "partition") -> InstanceBundle:
    pts = sorted(p for b in blocks for p in b)
    opens = [sorted(p for b in combo for p in b)
             for r in range(len(blocks) + 1) for combo in itertools.combinations(blocks, r)]
    return topology_instance(pts, opens, name=name, expected=_all_true(),
                             note="partition topology; opens and closeds coincide")


# -- Galois connections ------------------------------------------------------------

def galois_instance(P: FinCategory, Q: FinCategory, f: Mapping[str, str], g: Mapping[str, str]) -> Adjunction:
    """``f ⊣ g`` for monotone maps between posets, checked as f(x) ≤ y ⇔ x ≤ g(y)."""
    F = monotone_functor(P, Q, f, "f")
    G = monotone_functor(Q, P, g, "g")
    for x in P.objects:
        for y in Q.objects:
            if bool(Q.hom(f[x], y)) != bool(P.hom(x, g[y])):
                raise NotAdjoint(f"f({x}) <= {y} and {x} <= g({y}) disagree", (x, y))
    unit = {x: P.hom(x, g[f[x]])[0] for x in P.objects}
    counit = {y: Q.hom(f[g[y]], y)[0] for y in Q.objects}
    return _assemble(F, G, unit, counit, "f⊣g")


# -- layered categories -------------------------------------------------------------

def _level_category(depth: int, twist: bool) -> FinCategory:
    """Levels 0..depth with a morphism i -> j for i <= j.

    With ``twist`` each inner level carries an extra idempotent ``i*`` that is
    absorbed by every morphism to or from another level.
    """
    levels = [str(i) for i in range(depth + 1)]
    mors = [(f"{i}>{j}", str(i), str(j)) for i in range(depth + 1) for j in range(i + 1, depth + 1)]
    comp = {}
    for i in range(depth + 1):
        for j in range(i + 1, depth + 1):
            for k in range(j + 1, depth + 1):
                comp[(f"{j}>{k}", f"{i}>{j}")] = f"{i}>{k}"
    if twist:
        for i in range(1, depth):
            t = f"{i}*"
            mors.append((t, str(i), str(i)))
            comp[(t, t)] = t
            for j in range(i):
                comp[(t, f"{j}>{i}")] = f"{j}>{i}"
            for j in range(i + 1, depth + 1):
                comp[(f"{i}>{j}", t)] = f"{i}>{j}"
    return validate_category(RawCategory(levels, mors, comp, name="L"))


def product_category(A: FinCategory, B: FinCategory, name: str) -> FinCategory:
    """``A × B`` with objects ``a@b`` and morphisms ``f@g``; an identity factor is written as its object."""
    def obj(a, b):
        return f"{a}@{b}"

    def mor(f, g):
        if A.is_identity(f) and B.is_identity(g):
            return identity_name(obj(A.dom(f), B.dom(g)))
        # identities contribute their object's name
        fname = A.dom(f) if A.is_identity(f) else f
        gname = B.dom(g) if B.is_identity(g) else g
        return f"{fname}@{gname}"

    objects = [obj(a, b) for a in A.objects for b in B.objects]
    morphisms = []
    for f in A.morphisms:
        for g in B.morphisms:
            if A.is_identity(f) and B.is_identity(g):
                continue
            morphisms.append((mor(f, g), obj(A.dom(f), B.dom(g)), obj(A.cod(f), B.cod(g))))
    comp = {}
    for f in A.morphisms:
        for f2 in A.out(A.cod(f)):
            for g in B.morphisms:
                for g2 in B.out(B.cod(g)):
                    if (A.is_identity(f) and B.is_identity(g)) or (A.is_identity(f2) and B.is_identity(g2)):
                        continue
                    comp[(mor(f2, g2), mor(f, g))] = mor(A.compose(f2, f), B.compose(g2, g))
    return validate_category(RawCategory(objects, morphisms, comp, name=name))


def layered_instance(base: FinCategory, depth: int, twist: bool = False,
                     name: str | None = None) -> InstanceBundle:
    """``base × levels``: level 0 plays the maximal role, level ``depth`` the minimal one.

    Every ``(a, 0)`` maps out to all levels and every ``(a, depth)`` receives
    from all levels.  With ``twist`` (depth >= 2) inner levels get an extra
    idempotent endomorphism, which makes both projections non-faithful.
    """
    if depth < 1:
        raise ValueError("depth must be at least 1")
    if twist and depth < 2:
        raise ValueError("twist needs an inner level, so depth >= 2")
    L = _level_category(depth, twist)
    nm = name or f"layered_{base.name}_{depth}{'_twisted' if twist else ''}"
    C = product_category(base, L, nm)
    M = full_subcategory(C, [f"{a}@0" for a in base.objects], "Max")
    N = full_subcategory(C, [f"{a}@{depth}" for a in base.objects], "Min")
    expected = _all_true()
    note = (f"layers 0..{depth} over {base.name}; (a,i) -> (b,j) for each base morphism when i <= j; "
            f"level 0 maps out to every level")
    return InstanceBundle(nm, C, M, N, expected, note)


# -- random instances ---------------------------------------------------------------

def _least_in(order, S, x, up=True):
    if up:
        cands = [s for s in S if (x, s) in order]
        least = [s for s in cands if all((s, t) in order for t in cands)]
    else:
        cands = [s for s in S if (s, x) in order]
        least = [s for s in cands if all((t, s) in order for t in cands)]
    return least[0] if least else None


def _is_closure_image(order, elements, S) -> bool:
    return all(_least_in(order, S, x, True) is not None for x in elements)


def _is_kernel_image(order, elements, S) -> bool:
    return all(_least_in(order, S, x, False) is not None for x in elements)


def random_poset(rng: random.Random, n: int, name: str = "R") -> FinCategory:
    els = [f"p{i}" for i in range(n)]
    p = rng.uniform(0.15, 0.6)
    rel = [(els[i], els[j]) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return poset_category(els, rel, name)


def _thin_image(rng, order, elements, keep_test) -> list[str]:
    S = list(elements)
    keep_prob = rng.uniform(0.0, 0.7)
    for x in rng.sample(elements, len(elements)):
        if rng.random() < keep_prob:
            continue
        trial = [s for s in S if s != x]
        if trial and keep_test(order, elements, trial):
            S = trial
    return S


def random_instance(seed: int, max_elements: int = 8, min_elements: int = 1) -> InstanceBundle:
    """A random finite poset with a random closure image (reflective) and
    kernel image (coreflective); deterministic per seed.

    Both images start as the whole poset and lose elements one at a time in a
    random order, a removal being kept only when the image property survives.
    """
    rng = random.Random(seed)
    n = rng.randint(min(min_elements, max_elements), max_elements)
    C = random_poset(rng, n, f"rand{seed}")
    els = list(C.objects)
    order = C.order
    N = _thin_image(rng, order, els, _is_closure_image)
    M = _thin_image(rng, order, els, _is_kernel_image)
    return InstanceBundle(f"random{seed}", C, full_subcategory(C, M, "Kernel"),
                          full_subcategory(C, N, "Closure"), {}, f"random poset, seed {seed}")


def random_monotone_map(rng: random.Random, P: FinCategory, Q: FinCategory) -> dict[str, str]:
    """A random monotone map; ``Q`` must have a greatest element."""
    out: dict[str, str] = {}
    for x in P.objects:  # declaration order is a linear extension for generated posets
        below = [out[y] for y in P.objects if y in out and P.hom(y, x)]
        options = [q for q in Q.objects if all(Q.hom(b, q) for b in below)]
        out[x] = rng.choice(options)
    return out


def _lattice_shapes() -> list[FinCategory]:
    shapes = [chain(n) for n in range(1, 7)]
    shapes.append(powerset_poset([1, 2], "B2")[0])
    shapes.append(diamond())
    shapes.append(poset_category(["0", "a", "b", "c", "1"],
                                 [("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")], "M3"))
    shapes.append(poset_category(["0", "a", "b", "c", "1"],
                                 [("0", "a"), ("a", "b"), ("0", "c"), ("b", "1"), ("c", "1")], "N5"))
    grid = [f"{i}{j}" for i in range(2) for j in range(3)]
    shapes.append(poset_category(grid, [(f"{i}{j}", f"{i2}{j2}") for i in range(2) for j in range(3)
                                        for i2 in range(2) for j2 in range(3) if i <= i2 and j <= j2], "Grid23"))
    return shapes


def _left_adjoint_of(P: FinCategory, Q: FinCategory, g: Mapping[str, str]) -> dict[str, str] | None:
    """f(x) = least y with x <= g(y), when it exists for every x."""
    f = {}
    for x in P.objects:
        cands = [y for y in Q.objects if P.hom(x, g[y])]
        least = [y for y in cands if all(Q.hom(y, z) for z in cands)]
        if not least:
            return None
        f[x] = least[0]
    return f


def random_galois_setup(seed: int, max_elements: int = 6) -> tuple[Functor, Adjunction, Functor]:
    """``(P, f ⊣ g, Q)`` with random lattices and random monotone ``P``, ``Q``."""
    rng = random.Random(seed)
    shapes = [s for s in _lattice_shapes() if len(s.objects) <= max_elements]
    while True:
        C, D = rng.choice(shapes), rng.choice(shapes)
        g = random_monotone_map(rng, D, C)
        f = _left_adjoint_of(C, D, g)
        if f is not None:
            break
    adj = galois_instance(C, D, f, g)
    A, B = rng.choice(shapes), rng.choice(shapes)
    P = monotone_functor(A, C, random_monotone_map(rng, A, C), "P")
    Q = monotone_functor(B, D, random_monotone_map(rng, B, D), "Q")
    return P, adj, Q


def random_concrete_category(rng: random.Random, max_objects: int = 5,
                             max_morphisms: int = 40, name: str = "K") -> FinCategory | None:
    """A random subcategory of finite sets closed under composition (None if it grows too big)."""
    n = rng.randint(1, max_objects)
    sizes = {f"A{i}": rng.randint(1, 3) for i in range(n)}
    objs = list(sizes)
    funcs: dict[tuple[str, str, tuple[int, ...]], str] = {}
    for x in objs:
        funcs[(x, x, tuple(range(sizes[x])))] = identity_name(x)
    gens = []
    for _ in range(rng.randint(1, 2 * n + 1)):
        a, b = rng.choice(objs), rng.choice(objs)
        gens.append((a, b, tuple(rng.randrange(sizes[b]) for _ in range(sizes[a]))))
    counter = itertools.count()
    frontier = []
    for gdef in gens:
        if gdef not in funcs:
            funcs[gdef] = f"m{next(counter)}"
            frontier.append(gdef)
    while frontier:
        new = []
        items = list(funcs)
        for f in items:
            for g in items:
                if f[1] != g[0]:
                    continue
                h = (f[0], g[1], tuple(g[2][i] for i in f[2]))
                if h not in funcs:
                    funcs[h] = f"m{next(counter)}"
                    new.append(h)
                    if len(funcs) > max_morphisms:
                        return None
        frontier = new
    morphisms = [(nm, a, b) for (a, b, _), nm in funcs.items() if not nm.startswith("id_")]
    comp = {}
    for f, fn in funcs.items():
        for g, gn in funcs.items():
            if f[1] == g[0] and not fn.startswith("id_") and not gn.startswith("id_"):
                comp[(gn, fn)] = funcs[(f[0], g[1], tuple(g[2][i] for i in f[2]))]
    return validate_category(RawCategory(objs, morphisms, comp, name=name))


def random_concrete_bundle(seed: int, max_objects: int = 5) -> InstanceBundle | None:
    rng = random.Random(seed)
    C = random_concrete_category(rng, max_objects, name=f"conc{seed}")
    if C is None:
        return None
    objs = list(C.objects)
    M = rng.sample(objs, rng.randint(1, len(objs)))
    N = rng.sample(objs, rng.randint(1, len(objs)))
    return InstanceBundle(f"concrete{seed}", C, full_subcategory(C, M, "M"),
                          full_subcategory(C, N, "N"), {}, f"random concrete category, seed {seed}")


# -- named fixtures -----------------------------------------------------------------

def chain3_ends() -> InstanceBundle:
    C = chain(3)
    return InstanceBundle("chain3ends", C, full_subcategory(C, ["0"], "Bottom"),
                          full_subcategory(C, ["2"], "Top"), _all_true(),
                          "three-element chain with its least and greatest elements")


def terminal_bundle() -> InstanceBundle:
    C = terminal_category()
    return InstanceBundle("terminal", C, full_subcategory(C, C.objects, "All"),
                          full_subcategory(C, C.objects, "All2"), _all_true(), "the terminal category")


def named_fixtures() -> dict[str, InstanceBundle]:
    return {
        "sierpinski": sierpinski(),
        "regsierp": regsierp(),
        "discrete": discrete(2),
        "partition": partition_topology([[1, 2], [3, 4]], "partition4"),
        "layered": layered_instance(chain(2), 2),
        "layered-twisted": layered_instance(parallel_pair(), 2, twist=True),
        "layered-parallel": layered_instance(parallel_pair(), 2),
        "chain3ends": chain3_ends(),
        "terminal": terminal_bundle(),
    }


def suite(n_random: int = 200, seed: int = 0, max_elements: int = 8) -> list[InstanceBundle]:
    """Named fixtures followed by ``n_random`` random poset bundles."""
    return list(named_fixtures().values()) + [
        random_instance(seed + i, max_elements) for i in range(n_random)]
