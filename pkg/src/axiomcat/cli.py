"""Command line interface: ``axiomcat <command> ...``.

Exit status is 0 when every requested check passes, 1 when a check fails
(the report carries counterexamples) and 2 for usage or input errors.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import catfile
from .constructions import (LiftProblem, check_equivalent_axioms, factorize, lift,
                            synthesize_along_telescope)
from .correspondence import (check_splitting, dispcat_to_path, left_adjoint_split,
                             path_to_dispcat, reverse_roundtrip, roundtrip_check,
                             search_id_formations, verify_coherence_closure)
from .dispcat import (canonical_structure, check_display_axioms, check_root, check_split,
                      fibration_closure)
from .errors import AxiomcatError
from .fincat import validate_category
from .pathcat import check_dmpc_axioms, check_path_axioms, find_path_object
from .report import Report
from .syntaxmodel import check_transport_underivable
from .typeformers import (check_id_structure, check_LF, check_weak_stability_id,
                          derive_id_from_path_object, path_provider)

CHECKS = ("path-axioms", "dmpc", "root", "split", "lf", "stability")


class UsageError(Exception):
    pass


def _load(path: str) -> catfile.CategoryFile:
    return catfile.load(path)


def cmd_validate(args) -> tuple[Report, str | None]:
    cf = _load(args.file)
    rep = Report("validate")
    rep.extend(validate_category(cf.category))
    if rep.ok and cf.classes:
        rep.add(check_display_axioms(cf.to_dispcat()))
    return rep, None


def cmd_check(args) -> tuple[Report, str | None]:
    cf = _load(args.file)
    cat_rep = validate_category(cf.category)
    if cat_rep:
        rep = Report("validate")
        rep.extend(cat_rep)
        return rep, None
    which = args.which
    if which == "path-axioms":
        return check_path_axioms(cf.to_pathcat()), None
    if which == "dmpc":
        return check_dmpc_axioms(cf.to_dispcat(), cf.equivalences(), dict(cf.paths) or None), None
    if which == "root":
        return check_root(cf.to_dispcat()), None
    if which == "split":
        d = cf.to_dispcat()
        if not d.structured:
            rep = Report("split")
            rep.fail("structured", "input has no strict display maps or reindexing choices")
            return rep, None
        return check_split(d), None
    if which == "lf":
        return check_LF(cf.to_dispcat()), None
    p = cf.to_pathcat()
    return check_weak_stability_id(p, path_provider(p)), None


def cmd_derive(args) -> tuple[Report, str | None]:
    p = _load(args.file).to_pathcat()
    rep = Report("derive-id-types")
    for pA in sorted(p.display):
        w = find_path_object(p, pA, pair_class=p.display)
        if w is None:
            rep.fail("path-object", f"{pA} has no path display map", pA)
            continue
        s = derive_id_from_path_object(p, w)
        child = rep.add(check_id_structure(p, s, "axiomatic"))
        child.witness(**s.formation.to_dict(), eliminators=len(s.elim))
    return rep, None


def cmd_factorize(args) -> tuple[Report, str | None]:
    p = _load(args.file).to_pathcat()
    if args.morphism not in p.cat.morphisms:
        raise UsageError(f"unknown morphism {args.morphism}")
    rep = Report("factorize")
    fac = factorize(p, args.morphism)
    rep.witness(**fac.to_dict())
    return rep, None


def cmd_lift(args) -> tuple[Report, str | None]:
    p = _load(args.file).to_pathcat()
    parts = args.square.split(",")
    if len(parts) != 4 or any(x not in p.cat.morphisms for x in parts):
        raise UsageError("square must be 'w,f,p,sigma' naming four morphisms")
    rep = Report("lift")
    sol = lift(p, LiftProblem(*parts))
    rep.witness(**sol.to_dict())
    if not sol.unique_up_to_homotopy:
        rep.fail("uniqueness", "lifts are not pairwise fibrewise homotopic", *sol.candidates)
    return rep, None


def cmd_synthesize(args) -> tuple[Report, str | None]:
    p = _load(args.file).to_pathcat()
    chain = [x for x in args.tower.split(",") if x]
    for q in chain:
        if q not in p.display:
            raise UsageError(f"{q} is not a display map")
    rep = Report("synthesize-pf")
    for step in synthesize_along_telescope(p, chain):
        rep.witness(**step.to_dict())
        if step.comparison is None:
            rep.fail("comparison", f"no isomorphism PB ≅ L_A τ for {step.q}", step.q)
    return rep, None


def cmd_translate(args) -> tuple[Report, str | None]:
    cf = _load(args.file)
    rep = Report(f"translate-{args.direction}")
    if args.direction == "to-disp":
        m = path_to_dispcat(cf.to_pathcat())
        out = catfile.from_dispcat(m.disp, {"name": f"{cf.name}-disp"})
        rep.witness(display=sorted(m.disp.display), id_types=len(m.ids))
    else:
        m = search_id_formations(cf.to_dispcat())
        p = dispcat_to_path(m)
        out = catfile.from_pathcat(p, {"name": f"{cf.name}-path"})
        rep.witness(fibrations=sorted(p.fibrations), equivalences=sorted(p.equivalences))
    return rep, catfile.emit(out)


def cmd_roundtrip(args) -> tuple[Report, str | None]:
    cf = _load(args.file)
    d = cf.to_dispcat()
    # a class closed under composition is read as fibrations, otherwise as display maps
    if "fibration" in cf.classes or fibration_closure(d) == d.display:
        return roundtrip_check(cf.to_pathcat()), None
    return reverse_roundtrip(d), None


def _structured(cf: catfile.CategoryFile):
    d = cf.to_dispcat()
    return d if d.structured else canonical_structure(d, d.strict_display)


def cmd_split(args) -> tuple[Report, str | None]:
    d = _structured(_load(args.file))
    s = left_adjoint_split(d)
    return check_splitting(d, s), None


def cmd_coherence(args) -> tuple[Report, str | None]:
    d = _structured(_load(args.file))
    s = left_adjoint_split(d)
    return verify_coherence_closure(s.split), None


def cmd_counterexample(args) -> tuple[Report, str | None]:
    return check_transport_underivable(args.depth), None


def cmd_matrix(args) -> tuple[Report, str | None]:
    return check_equivalent_axioms(_load(args.file).to_pathcat()), None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--report", help="write the JSON report to this path")
    common.add_argument("--seedless", action="store_true",
                        help="forbid nondeterminism (every choice is canonical already)")
    common.add_argument("--depth", type=int, default=None,
                        help="enumeration depth for the syntax model")
    parser = argparse.ArgumentParser(
        prog="axiomcat", description="Check path category and display map category structure.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, *arguments, **kw):
        sp = sub.add_parser(name, parents=[common], **kw)
        for arg, opts in arguments:
            sp.add_argument(arg, **opts)
        sp.set_defaults(func=func)
        return sp

    add("validate", cmd_validate, ("file", {}))
    add("check", cmd_check, ("which", {"choices": CHECKS}), ("file", {}))
    add("derive", cmd_derive, ("what", {"choices": ["id-types"]}), ("file", {}))
    add("factorize", cmd_factorize, ("file", {}), ("morphism", {}))
    add("lift", cmd_lift, ("file", {}), ("square", {"help": "w,f,p,sigma"}))
    add("synthesize", cmd_synthesize, ("what", {"choices": ["pf"]}), ("file", {}),
        ("tower", {"help": "comma separated display maps, first one into the terminal object"}))
    add("translate", cmd_translate, ("direction", {"choices": ["to-disp", "to-path"]}),
        ("file", {}))
    add("roundtrip", cmd_roundtrip, ("file", {}))
    add("split", cmd_split, ("file", {}))
    add("coherence", cmd_coherence, ("file", {}))
    add("counterexample", cmd_counterexample)
    add("matrix", cmd_matrix, ("file", {}))
    return parser


def run_command(argv: list[str] | None = None, stdout=None, stderr=None) -> tuple[int, Report | None]:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0), None
    try:
        rep, text = args.func(args)
    except (catfile.CatFileError, UsageError, OSError) as exc:
        print(f"error: {exc}", file=stderr)
        return 2, None
    except AxiomcatError as exc:
        rep, text = Report(args.command), None
        rep.fail(type(exc).__name__, str(exc))
    if args.seedless:
        rep.note("seedless: all choices are canonical")
    if text is not None:
        stdout.write(text)
    for line in rep.summary_lines():
        print(line, file=stdout)
    if args.report:
        Path(args.report).write_text(rep.to_json(), encoding="utf-8")
    return (0 if rep.ok else 1), rep


def main(argv: list[str] | None = None) -> int:
    code, _ = run_command(argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
