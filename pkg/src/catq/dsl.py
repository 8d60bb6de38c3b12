"""Line-oriented text format for categories, subcategories, functors and bundles.

```
# comments run to the end of the line
category C {
  objects a b
  mor f : a -> b
  compose g f = h
}
category P {
  poset
  objects x y
  leq x y
}
subcategory S of C { objects a ; full }
functor F : C -> P {
  obj a -> x
  mor f -> x<=y
}
bundle B {
  ambient P
  coreflective S1
  reflective S2
  expect F true
  note free text up to the end of the line
}
```

Tokens are separated by whitespace. ``;`` ends a statement like a newline
does.  ``{``, ``}``, ``:``, ``->`` and ``=`` are punctuation only as whole
tokens, so identifiers such as ``{1,2}`` or ``x<=y`` need no quoting.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

from .category import FinCategory, RawCategory, Subcategory, validate_category
from .errors import CatqError
from .functor import Functor, make_functor
from .instances import InstanceBundle, leq_name, poset_category

PUNCT = {"{", "}", ":", "->", "="}
KINDS = ("category", "subcategory", "functor", "bundle")


class DslError(CatqError):
    def __init__(self, message: str, line: int = 0, col: int = 0, witness: tuple = ()):
        super().__init__(f"{line}:{col}: {message}" if line else message, witness)
        self.line = line
        self.col = col


class DslSyntaxError(DslError):
    pass


class DuplicateName(DslError):
    pass


class UnresolvedReference(DslError):
    pass


class DslValidationError(DslError):
    """A block parsed but the structure it describes is invalid; ``cause`` holds the engine error."""

    def __init__(self, cause: CatqError, line: int, col: int):
        super().__init__(f"{type(cause).__name__}: {cause}", line, col, cause.witness)
        self.cause = cause


@dataclass(frozen=True)
class Token:
    text: str
    line: int
    col: int


END = ";"


def tokenize(text: str) -> list[Token]:
    """Statement terminators come out as ``;`` tokens; ``note`` keeps its raw line."""
    out: list[Token] = []
    for ln, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0]
        words = _split_words(body, ln)
        if words and words[0].text == "note":
            rest = body[words[0].col - 1 + len("note"):].strip()
            out.append(words[0])
            out.append(Token(rest, ln, words[0].col + 5))
            out.append(Token(END, ln, len(raw) + 1))
            continue
        for w in words:
            col = w.col
            for k, piece in enumerate(w.text.split(";")):
                if k:
                    out.append(Token(END, ln, col - 1))
                if piece:
                    out.append(Token(piece, ln, col))
                col += len(piece) + 1
        out.append(Token(END, ln, len(raw) + 1))
    return out


def _split_words(body: str, ln: int) -> list[Token]:
    words = []
    i, n = 0, len(body)
    while i < n:
        if body[i].isspace():
            i += 1
            continue
        j = i
        while j < n and not body[j].isspace():
            j += 1
        words.append(Token(body[i:j], ln, i + 1))
        i = j
    return words


@dataclass
class SourceDocument:
    """Parsed declarations by kind, in source order."""

    categories: dict[str, FinCategory] = field(default_factory=dict)
    subcategories: dict[str, Subcategory] = field(default_factory=dict)
    functors: dict[str, Functor] = field(default_factory=dict)
    bundles: dict[str, InstanceBundle] = field(default_factory=dict)
    positions: dict[tuple[str, str], tuple[int, int]] = field(default_factory=dict, compare=False)

    def table(self, kind: str) -> dict:
        return {"category": self.categories, "subcategory": self.subcategories,
                "functor": self.functors, "bundle": self.bundles}[kind]

    def __bool__(self) -> bool:
        return any((self.categories, self.subcategories, self.functors, self.bundles))


class _Parser:
    def __init__(self, text: str, max_size: int | None):
        self.toks = tokenize(text)
        self.i = 0
        self.doc = SourceDocument()
        self.max_size = max_size

    # token helpers
    def peek(self) -> Token | None:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def next(self, what: str = "a token") -> Token:
        t = self.peek()
        if t is None:
            last = self.toks[-1] if self.toks else Token("", 1, 1)
            raise DslSyntaxError(f"unexpected end of input, expected {what}", last.line, last.col)
        self.i += 1
        return t

    def expect(self, text: str) -> Token:
        t = self.next(repr(text))
        if t.text != text:
            raise DslSyntaxError(f"expected {text!r}, found {t.text!r}", t.line, t.col)
        return t

    def ident(self, what: str = "an identifier") -> Token:
        t = self.next(what)
        if t.text in PUNCT:
            raise DslSyntaxError(f"expected {what}, found {t.text!r}", t.line, t.col)
        return t

    def skip_ends(self) -> None:
        while (t := self.peek()) is not None and t.text == END:
            self.i += 1

    def statements(self) -> Iterator[list[Token]]:
        """Statements of a ``{ ... }`` body, each a non-empty token list."""
        self.skip_ends()
        self.expect("{")
        cur: list[Token] = []
        while True:
            t = self.next("'}'")
            if t.text == "}":
                if cur:
                    yield cur
                return
            if t.text == END:
                if cur:
                    yield cur
                cur = []
            elif t.text == "{":
                raise DslSyntaxError("nested '{'", t.line, t.col)
            else:
                cur.append(t)

    def register(self, kind: str, name: Token, value) -> None:
        table = self.doc.table(kind)
        if name.text in table:
            first = self.doc.positions[(kind, name.text)]
            raise DuplicateName(f"{kind} {name.text!r} already declared at line {first[0]}",
                                name.line, name.col, (name.text,))
        table[name.text] = value
        self.doc.positions[(kind, name.text)] = (name.line, name.col)

    def lookup(self, kind: str, tok: Token):
        table = self.doc.table(kind)
        if tok.text not in table:
            raise UnresolvedReference(f"unknown {kind} {tok.text!r}", tok.line, tok.col, (tok.text,))
        return table[tok.text]

    # top level
    def parse(self) -> SourceDocument:
        while True:
            self.skip_ends()
            t = self.peek()
            if t is None:
                return self.doc
            self.i += 1
            if t.text == "category":
                self.category()
            elif t.text == "subcategory":
                self.subcategory()
            elif t.text == "functor":
                self.functor()
            elif t.text == "bundle":
                self.bundle()
            else:
                raise DslSyntaxError(f"expected one of {', '.join(KINDS)}, found {t.text!r}", t.line, t.col)

    @staticmethod
    def arity(stmt: list[Token], n: int, shape: str) -> None:
        if len(stmt) != n:
            raise DslSyntaxError(f"expected '{shape}'", stmt[0].line, stmt[0].col)

    def category(self) -> None:
        name = self.ident("a category name")
        objects: list[str] = []
        obj_tok: dict[str, Token] = {}
        mors: list[tuple[str, str, str]] = []
        mor_tok: dict[str, Token] = {}
        comps: list[tuple[Token, Token, Token]] = []
        leqs: list[tuple[Token, Token]] = []
        poset: Token | None = None
        for st in self.statements():
            kw = st[0].text
            if kw == "objects":
                for t in st[1:]:
                    if t.text in PUNCT:
                        raise DslSyntaxError(f"unexpected {t.text!r}", t.line, t.col)
                    if t.text in obj_tok:
                        raise DuplicateName(f"object {t.text!r} declared twice", t.line, t.col, (t.text,))
                    obj_tok[t.text] = t
                    objects.append(t.text)
            elif kw == "mor":
                self.arity(st, 6, "mor <id> : <id> -> <id>")
                if st[2].text != ":" or st[4].text != "->":
                    raise DslSyntaxError("expected 'mor <id> : <id> -> <id>'", st[0].line, st[0].col)
                m = st[1]
                if m.text in mor_tok:
                    raise DuplicateName(f"morphism {m.text!r} declared twice", m.line, m.col, (m.text,))
                for t in (st[3], st[5]):
                    if t.text not in obj_tok:
                        raise UnresolvedReference(f"unknown object {t.text!r}", t.line, t.col, (t.text,))
                mor_tok[m.text] = m
                mors.append((m.text, st[3].text, st[5].text))
            elif kw == "compose":
                self.arity(st, 5, "compose <id> <id> = <id>")
                if st[3].text != "=":
                    raise DslSyntaxError("expected 'compose <id> <id> = <id>'", st[0].line, st[0].col)
                comps.append((st[1], st[2], st[4]))
            elif kw == "poset":
                self.arity(st, 1, "poset")
                poset = st[0]
            elif kw == "leq":
                self.arity(st, 3, "leq <id> <id>")
                for t in st[1:]:
                    if t.text not in obj_tok:
                        raise UnresolvedReference(f"unknown object {t.text!r}", t.line, t.col, (t.text,))
                leqs.append((st[1], st[2]))
            else:
                raise DslSyntaxError(f"unknown category statement {kw!r}", st[0].line, st[0].col)
        try:
            if poset is not None:
                if mors or comps:
                    bad = (mors and mor_tok[mors[0][0]]) or comps[0][0]
                    raise DslSyntaxError("a poset category derives its morphisms from 'leq'", bad.line, bad.col)
                cat = poset_category(objects, [(a.text, b.text) for a, b in leqs], name.text, self.max_size)
            else:
                if leqs:
                    t = leqs[0][0]
                    raise DslSyntaxError("'leq' needs the 'poset' keyword", t.line, t.col)
                known = set(mor_tok) | {f"id_{x}" for x in objects}
                for g, f, h in comps:
                    for t in (g, f, h):
                        if t.text not in known:
                            raise UnresolvedReference(f"unknown morphism {t.text!r}", t.line, t.col, (t.text,))
                table = {}
                for g, f, h in comps:
                    if (g.text, f.text) in table:
                        raise DuplicateName(f"composite of {g.text} and {f.text} given twice",
                                            g.line, g.col, (g.text, f.text))
                    table[(g.text, f.text)] = h.text
                cat = validate_category(RawCategory(objects, mors, table, name=name.text), self.max_size)
        except DslError:
            raise
        except CatqError as e:
            raise DslValidationError(e, name.line, name.col) from e
        self.register("category", name, cat)

    def subcategory(self) -> None:
        name = self.ident("a subcategory name")
        self.expect("of")
        parent_tok = self.ident("a category name")
        parent = self.lookup("category", parent_tok)
        objects: list[Token] = []
        mors: list[Token] | None = None
        full = False
        for st in self.statements():
            kw = st[0].text
            if kw == "objects":
                objects += st[1:]
            elif kw == "full":
                self.arity(st, 1, "full")
                full = True
            elif kw == "mors":
                mors = (mors or []) + st[1:]
            else:
                raise DslSyntaxError(f"unknown subcategory statement {kw!r}", st[0].line, st[0].col)
        if full and mors is not None:
            raise DslSyntaxError("'full' and 'mors' are mutually exclusive", name.line, name.col)
        if not full and mors is None:
            raise DslSyntaxError("subcategory needs 'full' or 'mors'", name.line, name.col)
        for t in objects:
            if not parent.has_object(t.text):
                raise UnresolvedReference(f"unknown object {t.text!r} of {parent.name}", t.line, t.col, (t.text,))
        for t in mors or ():
            if not parent.has_morphism(t.text):
                raise UnresolvedReference(f"unknown morphism {t.text!r} of {parent.name}", t.line, t.col, (t.text,))
        try:
            sub = Subcategory(parent, [t.text for t in objects],
                              None if full else [t.text for t in mors], name.text)
        except CatqError as e:
            raise DslValidationError(e, name.line, name.col) from e
        self.register("subcategory", name, sub)

    def functor(self) -> None:
        name = self.ident("a functor name")
        self.expect(":")
        src = self.lookup("category", self.ident("a category name"))
        self.expect("->")
        tgt = self.lookup("category", self.ident("a category name"))
        omap: dict[str, str] = {}
        mmap: dict[str, str] = {}
        for st in self.statements():
            kw = st[0].text
            if kw not in ("obj", "mor"):
                raise DslSyntaxError(f"unknown functor statement {kw!r}", st[0].line, st[0].col)
            self.arity(st, 4, f"{kw} <id> -> <id>")
            if st[2].text != "->":
                raise DslSyntaxError(f"expected '{kw} <id> -> <id>'", st[0].line, st[0].col)
            a, b = st[1], st[3]
            has_a = src.has_object if kw == "obj" else src.has_morphism
            has_b = tgt.has_object if kw == "obj" else tgt.has_morphism
            for t, ok, cat in ((a, has_a, src), (b, has_b, tgt)):
                if not ok(t.text):
                    what = "object" if kw == "obj" else "morphism"
                    raise UnresolvedReference(f"unknown {what} {t.text!r} of {cat.name}", t.line, t.col, (t.text,))
            table = omap if kw == "obj" else mmap
            if a.text in table:
                raise DuplicateName(f"image of {a.text!r} given twice", a.line, a.col, (a.text,))
            table[a.text] = b.text
        try:
            F = make_functor(src, tgt, omap, mmap, name=name.text)
        except DslError:
            raise
        except CatqError as e:
            raise DslValidationError(e, name.line, name.col) from e
        self.register("functor", name, F)

    def bundle(self) -> None:
        name = self.ident("a bundle name")
        ambient = coref = refl = None
        expected: dict[str, bool] = {}
        note = ""
        for st in self.statements():
            kw = st[0].text
            if kw == "ambient":
                self.arity(st, 2, "ambient <category>")
                ambient = (st[1], self.lookup("category", st[1]))
            elif kw in ("coreflective", "reflective"):
                self.arity(st, 2, f"{kw} <subcategory>")
                sub = (st[1], self.lookup("subcategory", st[1]))
                if kw == "coreflective":
                    coref = sub
                else:
                    refl = sub
            elif kw == "expect":
                self.arity(st, 3, "expect <label> <true|false>")
                if st[2].text not in ("true", "false"):
                    raise DslSyntaxError("expected 'true' or 'false'", st[2].line, st[2].col)
                if st[1].text in expected:
                    raise DuplicateName(f"expectation for {st[1].text!r} given twice", st[1].line, st[1].col)
                expected[st[1].text] = st[2].text == "true"
            elif kw == "note":
                note = st[1].text if len(st) > 1 else ""
            else:
                raise DslSyntaxError(f"unknown bundle statement {kw!r}", st[0].line, st[0].col)
        for part, what in ((ambient, "ambient"), (coref, "coreflective"), (refl, "reflective")):
            if part is None:
                raise DslSyntaxError(f"bundle needs '{what}'", name.line, name.col)
        for tok, sub in (coref, refl):
            if sub.parent != ambient[1]:
                raise UnresolvedReference(f"subcategory {tok.text!r} does not live in {ambient[1].name}",
                                          tok.line, tok.col, (tok.text,))
        b = InstanceBundle(name.text, ambient[1], coref[1], refl[1], expected, note)
        self.register("bundle", name, b)


def parse(text: str, max_size: int | None = None) -> SourceDocument:
    return _Parser(text, max_size).parse()


# -- emission ---------------------------------------------------------------------

def _check_ident(x: str) -> str:
    if not x or x in PUNCT or any(c.isspace() for c in x) or "#" in x or ";" in x:
        raise ValueError(f"{x!r} cannot be written as an identifier")
    return x


def _poset_shaped(C: FinCategory) -> bool:
    if C.order is None or len(C.morphisms) == len(C.objects):
        return False
    strict = {(x, y) for x, y in C.order if x != y}
    mors = [m for m in C.morphisms if not C.is_identity(m)]
    if len(mors) != len(strict):
        return False
    return all(m == leq_name(C.dom(m), C.cod(m)) and (C.dom(m), C.cod(m)) in strict for m in mors)


def _hasse(C: FinCategory) -> list[tuple[str, str]]:
    strict = {(x, y) for x, y in C.order if x != y}
    above: dict[str, set[str]] = {x: set() for x in C.objects}
    for x, y in strict:
        above[x].add(y)
    covers = []
    for m in C.morphisms:
        if C.is_identity(m):
            continue
        x, y = C.dom(m), C.cod(m)
        if not any(y in above[z] for z in above[x]):
            covers.append((x, y))
    return covers


def emit_category(C: FinCategory) -> str:
    lines = [f"category {_check_ident(C.name)} {{"]
    if _poset_shaped(C):
        lines.append("  poset")
        lines.append("  objects " + " ".join(map(_check_ident, C.objects)))
        lines += [f"  leq {x} {y}" for x, y in _hasse(C)]
    else:
        lines.append("  objects " + " ".join(map(_check_ident, C.objects)))
        for m in C.morphisms:
            if not C.is_identity(m):
                lines.append(f"  mor {_check_ident(m)} : {C.dom(m)} -> {C.cod(m)}")
        for g, f in C.composable_pairs():
            lines.append(f"  compose {g} {f} = {C.compose(g, f)}")
    lines.append("}")
    return "\n".join(lines)


def emit_subcategory(S: Subcategory) -> str:
    lines = [f"subcategory {_check_ident(S.name)} of {S.parent.name} {{"]
    lines.append(("  objects " + " ".join(S.objects)).rstrip())
    if S.full:
        lines.append("  full")
    else:
        P = S.parent
        lines.append(("  mors " + " ".join(m for m in S.morphisms if not P.is_identity(m))).rstrip())
    lines.append("}")
    return "\n".join(lines)


def emit_functor(F: Functor) -> str:
    C = F.source
    lines = [f"functor {_check_ident(F.name)} : {C.name} -> {F.target.name} {{"]
    lines += [f"  obj {x} -> {F.ob(x)}" for x in C.objects]
    lines += [f"  mor {m} -> {F.mor(m)}" for m in C.morphisms if not C.is_identity(m)]
    lines.append("}")
    return "\n".join(lines)


def emit_bundle(b: InstanceBundle) -> str:
    lines = [f"bundle {_check_ident(b.name)} {{",
             f"  ambient {b.ambient.name}",
             f"  coreflective {b.coreflective.name}",
             f"  reflective {b.reflective.name}"]
    lines += [f"  expect {_check_ident(k)} {'true' if v else 'false'}" for k, v in b.expected.items()]
    if b.note:
        if "\n" in b.note or "#" in b.note:
            raise ValueError("notes must be a single line without '#'")
        lines.append(f"  note {b.note.strip()}")
    lines.append("}")
    return "\n".join(lines)


def document_of(*bundles: InstanceBundle) -> SourceDocument:
    """Collect the categories and subcategories a set of bundles refers to."""
    doc = SourceDocument()
    for b in bundles:
        for kind, key, value in (("category", b.ambient.name, b.ambient),
                                 ("subcategory", b.coreflective.name, b.coreflective),
                                 ("subcategory", b.reflective.name, b.reflective),
                                 ("bundle", b.name, b)):
            table = doc.table(kind)
            if key in table and table[key] != value:
                raise ValueError(f"two different {kind} declarations named {key!r}")
            table[key] = value
    return doc


def emit(obj) -> str:
    """Canonical text for a document, bundle, category, subcategory or functor."""
    if isinstance(obj, InstanceBundle):
        obj = document_of(obj)
    if isinstance(obj, FinCategory):
        return emit_category(obj) + "\n"
    if isinstance(obj, Subcategory):
        return emit_subcategory(obj) + "\n"
    if isinstance(obj, Functor):
        return emit_functor(obj) + "\n"
    if not isinstance(obj, SourceDocument):
        raise TypeError(f"cannot emit {type(obj).__name__}")
    blocks = ([emit_category(c) for c in obj.categories.values()]
              + [emit_subcategory(s) for s in obj.subcategories.values()]
              + [emit_functor(f) for f in obj.functors.values()]
              + [emit_bundle(b) for b in obj.bundles.values()])
    return "\n\n".join(blocks) + "\n" if blocks else ""
