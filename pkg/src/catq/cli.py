"""Command-line front end: ``catq <command> ...``.

Exit codes: 0 when every reported check holds, 1 when a well-formed report
contains a false verdict, 2 for unreadable input, usage errors and internal
inconsistencies.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from typing import TextIO

from . import __version__
from .adjunction import adjunction_from_couniversal_morphisms, adjunction_from_universal_morphisms
from .category import Subcategory, size_limit
from .comma import universal_from, universal_to
from .dsl import SourceDocument, emit, parse
from .errors import CatqError, InternalInconsistency, NotCoreflective, NotReflective, PreconditionUnmet
from .instances import named_fixtures, random_instance
from .reflection import (
    check_hypothesis_factor_initial,
    check_report,
    check_factorization_corollaries,
    dual_report,
    dual_structures,
    find_coreflector,
    find_reflector,
    report_signature,
    search_epi_mono_counterexample,
    standing_hypotheses,
    composite_conditions_report,
    factorization_report,
)
from .report import ConditionReport, fails, holds

SCHEMA = 1


class UsageError(Exception):
    pass


# -- report plumbing ---------------------------------------------------------------

def build_report(command: str, digest: str | None, sections: list[ConditionReport],
                 seconds: float, extra: dict | None = None) -> dict:
    out = {
        "schema": SCHEMA,
        "tool": "catq",
        "version": __version__,
        "command": command,
        "input_sha256": digest,
        "verdict": all(s.holds for s in sections),
        "sections": [s.to_dict() for s in sections],
    }
    if extra:
        out["details"] = extra
    out["timing_seconds"] = round(seconds, 6)
    return out


def dump_report(report: dict) -> str:
    return json.dumps(report, indent=2, ensure_ascii=False) + "\n"


# -- input plumbing ----------------------------------------------------------------

def load(path: str) -> tuple[SourceDocument, str]:
    try:
        with open(path, "rb") as fh:
            data = fh.read()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from e
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as e:
        raise UsageError(f"{path} is not UTF-8") from e
    return parse(text), hashlib.sha256(data).hexdigest()


def pick_subcategories(doc: SourceDocument, args) -> tuple[Subcategory, Subcategory, dict]:
    """Return (reflective, coreflective, expectations) chosen by flags or by the sole bundle."""
    if args.reflective or args.coreflective:
        if not (args.reflective and args.coreflective):
            raise UsageError("--reflective and --coreflective go together")
        for nm in (args.reflective, args.coreflective):
            if nm not in doc.subcategories:
                raise UsageError(f"no subcategory named {nm!r}")
        N, M = doc.subcategories[args.reflective], doc.subcategories[args.coreflective]
        if N.parent != M.parent:
            raise UsageError("the two subcategories live in different categories")
        expected = doc.bundles[args.bundle].expected if args.bundle in doc.bundles else {}
        return N, M, expected
    if args.bundle:
        if args.bundle not in doc.bundles:
            raise UsageError(f"no bundle named {args.bundle!r}")
        b = doc.bundles[args.bundle]
    elif len(doc.bundles) == 1:
        b = next(iter(doc.bundles.values()))
    else:
        raise UsageError("name a bundle with --bundle or pass --reflective and --coreflective")
    return b.reflective, b.coreflective, b.expected


def synthesize(N: Subcategory, M: Subcategory):
    """Reflector and coreflector, or a report of what is missing."""
    gate = ConditionReport("existence")
    refl = corefl = None
    try:
        refl = find_reflector(N.parent, N)
        gate.add("reflective", holds(), f"{N.name} is reflective")
    except NotReflective as e:
        gate.add("reflective", fails(*e.witness), f"{N.name} is reflective")
    try:
        corefl = find_coreflector(M.parent, M)
        gate.add("coreflective", holds(), f"{M.name} is coreflective")
    except NotCoreflective as e:
        gate.add("coreflective", fails(*e.witness), f"{M.name} is coreflective")
    return refl, corefl, gate


def expectation_report(expected: dict[str, bool], sections: list[ConditionReport]) -> ConditionReport | None:
    seen = {c.label: c.holds for s in sections for c in s}
    rep = ConditionReport("expectations")
    for label, want in expected.items():
        if label in seen:
            got = seen[label]
            v = holds() if got == want else fails(label)
            rep.add(f"expect.{label}", v, f"{label} is {'true' if want else 'false'}")
    return rep if len(rep) else None


# -- commands ----------------------------------------------------------------------

def cmd_validate(args, out: TextIO):
    doc, digest = load(args.file)
    rep = ConditionReport("declarations")
    for kind in ("category", "subcategory", "functor", "bundle"):
        for name in doc.table(kind):
            rep.add(f"{kind}:{name}", holds(), f"{kind} {name} is well formed")
    return [rep], digest, None


def _structure_details(ambient, images, arrows, arrow_key):
    return {x: {"image": images[x], arrow_key: arrows[x]} for x in ambient.objects}


def cmd_reflector(args, out):
    doc, digest = load(args.file)
    sub = _sub(doc, args.sub)
    rep = ConditionReport("reflector")
    try:
        r = find_reflector(sub.parent, sub)
    except NotReflective as e:
        rep.add("reflective", fails(*e.witness), f"{sub.name} is reflective")
        return [rep], digest, None
    rep.add("reflective", holds(), f"{sub.name} is reflective")
    C = sub.parent
    details = _structure_details(C, {x: r.reflector.ob(x) for x in C.objects},
                                 {x: r.unit[x] for x in C.objects}, "unit")
    return [rep], digest, {"reflector": details}


def cmd_coreflector(args, out):
    doc, digest = load(args.file)
    sub = _sub(doc, args.sub)
    rep = ConditionReport("coreflector")
    try:
        c = find_coreflector(sub.parent, sub)
    except NotCoreflective as e:
        rep.add("coreflective", fails(*e.witness), f"{sub.name} is coreflective")
        return [rep], digest, None
    rep.add("coreflective", holds(), f"{sub.name} is coreflective")
    C = sub.parent
    details = _structure_details(C, {x: c.coreflector.ob(x) for x in C.objects},
                                 {x: c.counit[x] for x in C.objects}, "counit")
    return [rep], digest, {"coreflector": details}


def _sub(doc, name):
    if name is None:
        if len(doc.subcategories) != 1:
            raise UsageError("name the subcategory with --sub")
        return next(iter(doc.subcategories.values()))
    if name not in doc.subcategories:
        raise UsageError(f"no subcategory named {name!r}")
    return doc.subcategories[name]


def cmd_check(args, out):
    doc, digest = load(args.file)
    N, M, expected = pick_subcategories(doc, args)
    refl, corefl, gate = synthesize(N, M)
    if not gate.holds:
        return [gate], digest, None
    sections = check_report(refl, corefl)
    exp = expectation_report(expected, sections)
    return sections + ([exp] if exp else []), digest, None


def cmd_factorization(args, out):
    doc, digest = load(args.file)
    N, M, expected = pick_subcategories(doc, args)
    refl, corefl, gate = synthesize(N, M)
    if not gate.holds:
        return [gate], digest, None
    sections = [standing_hypotheses(refl, corefl), check_hypothesis_factor_initial(refl, corefl)]
    try:
        sections.append(check_factorization_corollaries(refl, corefl))
    except PreconditionUnmet:
        pass
    exp = expectation_report(expected, sections)
    return sections + ([exp] if exp else []), digest, None


def cmd_composite(args, out):
    doc, digest = load(args.file)
    for nm in (args.left, args.right):
        if nm not in doc.functors:
            raise UsageError(f"no functor named {nm!r}")
    I, J = doc.functors[args.left], doc.functors[args.right]
    if I.target != J.target:
        raise UsageError("I and J must share their codomain")
    C = I.target
    gate = ConditionReport("adjoints")
    left_family, right_family = {}, {}
    missing_left = [c for c in C.objects if universal_from(c, J) is None]
    missing_right = [c for c in C.objects if universal_to(I, c) is None]
    gate.add("left-adjoint", fails(*missing_left) if missing_left else holds(),
             f"{J.name} has a left adjoint")
    gate.add("right-adjoint", fails(*missing_right) if missing_right else holds(),
             f"{I.name} has a right adjoint")
    if not gate.holds:
        return [gate], digest, None
    for c in C.objects:
        u = universal_from(c, J)
        left_family[c] = (u.obj, u.arrow)
        v = universal_to(I, c)
        right_family[c] = (v.obj, v.arrow)
    adjNJ = adjunction_from_universal_morphisms(J, left_family, "N")
    adjIM = adjunction_from_couniversal_morphisms(I, right_family, "M")
    return [composite_conditions_report(I, J, adjNJ, adjIM), factorization_report(I, J, adjNJ, adjIM)], digest, None


def cmd_dual(args, out):
    doc, digest = load(args.file)
    N, M, _ = pick_subcategories(doc, args)
    refl, corefl, gate = synthesize(N, M)
    if not gate.holds:
        return [gate], digest, None
    dr, dc = dual_structures(refl, corefl)

    def reports(r, c):
        reps = check_report(r, c) + [check_hypothesis_factor_initial(r, c)]
        try:
            reps.append(check_factorization_corollaries(r, c))
        except PreconditionUnmet:
            pass
        return reps

    original, dual = reports(refl, corefl), [dual_report(x) for x in reports(dr, dc)]
    agree = ConditionReport("duality")
    for i, a in enumerate(original):
        b = dual[i] if i < len(dual) else None
        same = b is not None and report_signature(a) == report_signature(b)
        diff = () if same else tuple(
            lbl for lbl, v in report_signature(a).items() if b is None or report_signature(b).get(lbl) != v)
        agree.add(a.title, holds() if same else fails(*diff), f"{a.title} matches its dual")
    if len(dual) != len(original):
        agree.add("section-count", fails(), "both sides produce the same sections")
    by_title = {"original": [r.to_dict() for r in original], "dual": [r.to_dict() for r in dual]}
    return [agree], digest, by_title


def cmd_instance(args, out):
    if args.name == "random":
        if args.seed is None:
            raise UsageError("instance random needs --seed")
        bundle = random_instance(args.seed, args.max_elements)
    else:
        fixtures = named_fixtures()
        if args.name not in fixtures:
            raise UsageError(f"unknown instance {args.name!r}; choose from random, " + ", ".join(fixtures))
        bundle = fixtures[args.name]
    out.write(emit(bundle))
    return None


def cmd_search(args, out):
    found = search_epi_mono_counterexample(args.budget, args.seed, args.kind, args.max_objects)
    if found is None:
        out.write(f"no counterexample among {args.budget} samples ({args.kind}, seed {args.seed})\n")
    else:
        out.write(f"# {found.reason}; witness {', '.join(found.witness)}\n")
        out.write(emit(found.bundle))
    return None


# -- argument parsing --------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def make_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--report", metavar="PATH", help="also write the JSON report here")
    common.add_argument("--json", action="store_true", help="print the JSON report instead of text")
    common.add_argument("--max-size", type=int, metavar="N", help="cap on morphisms per category")

    def pair(p):
        p.add_argument("--reflective", metavar="SUB")
        p.add_argument("--coreflective", metavar="SUB")
        p.add_argument("--bundle", metavar="NAME")

    p = _Parser(prog="catq", description="Decide reflective/coreflective conditions on finite categories.")
    p.add_argument("--version", action="version", version=f"catq {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("validate", parents=[common], help="parse and validate a .cat file")
    s.add_argument("file")
    s.set_defaults(func=cmd_validate)
    for name, func in (("reflector", cmd_reflector), ("coreflector", cmd_coreflector)):
        s = sub.add_parser(name, parents=[common], help=f"synthesize the {name} onto a subcategory")
        s.add_argument("file")
        s.add_argument("--sub", metavar="SUB")
        s.set_defaults(func=func)
    # the short aliases are the historical command names
    for name, aliases, func, text in (
            ("check", [], cmd_check, "factorization properties and the restricted adjunction"),
            ("factorization", ["hyp5"], cmd_factorization, "factorization hypothesis and its consequences"),
            ("dual", [], cmd_dual, "compare every report with its dual")):
        s = sub.add_parser(name, aliases=aliases, parents=[common], help=text)
        s.add_argument("file")
        pair(s)
        s.set_defaults(func=func)
    s = sub.add_parser("composite", aliases=["thm31"], parents=[common],
                       help="composite conditions for general functors I and J")
    s.add_argument("file")
    s.add_argument("--left", required=True, metavar="I", help="functor whose right adjoint is M")
    s.add_argument("--right", required=True, metavar="J", help="functor whose left adjoint is N")
    s.set_defaults(func=cmd_composite)
    s = sub.add_parser("instance", parents=[common], help="print a built-in instance in the text format")
    s.add_argument("name")
    s.add_argument("--seed", type=int)
    s.add_argument("--max-elements", type=int, default=8)
    s.set_defaults(func=cmd_instance)
    s = sub.add_parser("search", aliases=["search-remark58"], parents=[common],
                       help="look for θ not epi or ψ not mono under the standing hypotheses")
    s.add_argument("--budget", type=int, default=200)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--kind", choices=["concrete", "poset"], default="concrete")
    s.add_argument("--max-objects", type=int, default=4)
    s.set_defaults(func=cmd_search)
    return p


def run_command(argv: list[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        err.write(f"{e}\n")
        return 2
    except SystemExit as e:  # --help / --version
        return int(e.code or 0)
    start = time.perf_counter()
    try:
        with size_limit(args.max_size):
            result = args.func(args, out)
    except InternalInconsistency as e:
        err.write(f"internal inconsistency: {e}\n")
        return 2
    except (UsageError, CatqError) as e:
        err.write(f"error: {e}\n")
        return 2
    if result is None:
        return 0
    sections, digest, extra = result
    report = build_report(args.command, digest, sections, time.perf_counter() - start, extra)
    if args.report:
        try:
            with open(args.report, "w", encoding="utf-8") as fh:
                fh.write(dump_report(report))
        except OSError as e:
            err.write(f"cannot write {args.report}: {e.strerror}\n")
            return 2
    if args.json:
        out.write(dump_report(report))
    else:
        for s in sections:
            out.write(s.format() + "\n\n")
        for key in ("reflector", "coreflector"):
            if extra and key in extra:
                arrow = "unit" if key == "reflector" else "counit"
                out.write(f"== {key} ==\n")
                for x, row in extra[key].items():
                    out.write(f"  {x} -> {row['image']}  {arrow}: {row[arrow]}\n")
                out.write("\n")
        out.write(f"verdict: {'pass' if report['verdict'] else 'fail'}\n")
    return 0 if report["verdict"] else 1


def main(argv: list[str] | None = None) -> None:
    sys.exit(run_command(argv))

