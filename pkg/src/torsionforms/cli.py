"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 computation error, 3 a theorem or
consistency check failed.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .catalog import CATALOG_NAMES, catalog_model
from .errors import ConsistencyViolation, TheoremViolation, TorsionFormsError
from .extensions import laurent_extend, prop_laurent_check, springer_check
from .forms import QuadraticForm, is_isotropic, isometric, represents, witt_decompose
from .invariants import invariant_report, height_theorem_checks
from .model import positive_cone, validate_model
from .modelfile import load_model
from .pfister import pfister_build, pfister_recognize
from .realmax import is_2_real_maximal, pfister_pure_criterion, supreme_implies_realmax_check
from .reports import TheoremReport
from .syntax import format_pfister, parse_model_text, parse_pfister_slots, serialize_model
from .witt import (
    bfs_closure_check,
    consistency_flags,
    is_torsion,
    kneser_check,
    local_global_check,
    pfister_multiplier,
    supreme_search,
    torsion_subgroup,
    universal_probe,
    verify_supreme_properties,
    witt_class,
    witt_order,
)

EXIT_OK, EXIT_USAGE, EXIT_COMPUTE, EXIT_THEOREM = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _bool(b: bool) -> str:
    return "true" if b else "false"


# ---------- model and form arguments


def _add_model_args(p, form=False, forms=False):
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--model", help="catalog model name")
    src.add_argument("--file", help="model file")
    if form:
        p.add_argument("--form", required=True, help='form literal, e.g. "<1,1,-3,-3>"')
    if forms:
        p.add_argument("--form", action="append", required=True, help="form literal (give twice)")
    p.add_argument("--machine", action="store_true", help="key=value output")


def _model(args):
    if args.model is not None:
        return catalog_model(args.model)
    try:
        text = Path(args.file).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {args.file}: {exc.strerror}")
    return load_model(text)


def _form(model, text):
    return QuadraticForm.parse(model, text)


def _emit(args, pairs, plain=None):
    """Print key=value pairs in machine mode, else ``plain`` lines (or the values)."""
    if args.machine:
        for k, v in pairs:
            print(f"{k}={v}")
    elif plain is None:
        for _, v in pairs:
            print(v)
    else:
        for line in plain:
            print(line)


def _emit_report(args, report: TheoremReport) -> int:
    if args.machine:
        for r in report.results:
            print(f"{r.name}={r.status}")
    else:
        print(report)
    return EXIT_OK if report.ok else EXIT_THEOREM


# ---------- model verbs


def cmd_model_list(args):
    for name in CATALOG_NAMES:
        print(name)
    return EXIT_OK


def cmd_model_show(args):
    model = _model(args)
    sys.stdout.write(serialize_model(model))
    if model.formally_real:
        print(f"# orderings: {len(model.orderings)}")
        for o in model.orderings:
            print(f"#   {o.describe(model.group)}")
        print("# totally positive: " + ", ".join(model.format(s) for s in positive_cone(model)))
    else:
        print("# orderings: 0")
    return EXIT_OK


def cmd_model_validate(args):
    if args.model is not None:
        model = catalog_model(args.model)
    else:
        try:
            text = Path(args.file).read_text(encoding="utf-8")
        except OSError as exc:
            raise UsageError(f"cannot read {args.file}: {exc.strerror}")
        model, _ = parse_model_text(text)
    report = validate_model(model)
    if args.machine:
        for c in report.checks:
            print(f"{c.name}={'PASS' if c.passed else 'FAIL'}")
        print(f"formally_real={_bool(report.formally_real)}")
        print(f"pythagorean={_bool(report.pythagorean)}")
    else:
        print("\n".join(report.lines()))
    if report.ok and report.formally_real:
        prefix = "" if args.machine else "INFO "
        print("\n".join(prefix + line for line in consistency_flags(model).lines()))
    return EXIT_OK if report.ok else EXIT_COMPUTE


# ---------- form verbs


def cmd_form_isometric(args):
    if len(args.form) != 2:
        raise UsageError("form isometric needs exactly two --form arguments")
    model = _model(args)
    phi, psi = (_form(model, t) for t in args.form)
    _emit(args, [("isometric", _bool(isometric(phi, psi)))])
    return EXIT_OK


def cmd_form_isotropic(args):
    model = _model(args)
    _emit(args, [("isotropic", _bool(is_isotropic(_form(model, args.form))))])
    return EXIT_OK


def cmd_form_decompose(args):
    model = _model(args)
    i, an = witt_decompose(_form(model, args.form))
    _emit(args, [("witt_index", i), ("anisotropic", an)],
          [f"witt_index   {i}", f"anisotropic  {an}"])
    return EXIT_OK


def cmd_form_represents(args):
    model = _model(args)
    b = model.element(args.value)
    _emit(args, [("represents", _bool(represents(_form(model, args.form), b)))])
    return EXIT_OK


def cmd_form_pfister(args):
    model = _model(args)
    if args.slots:
        pi = pfister_build(model, parse_pfister_slots(model.group, args.slots))
        _emit(args, [("form", pi)])
        return EXIT_OK
    if not args.form:
        raise UsageError("form pfister needs --form or --slots")
    phi = _form(model, args.form)
    d = phi.dim
    slots = pfister_recognize(phi) if d and not d & (d - 1) else None
    text = "none" if slots is None else format_pfister(model.group, slots)
    _emit(args, [("pfister", text)])
    return EXIT_OK


def cmd_form_torsion(args):
    model = _model(args)
    phi = _form(model, args.form)
    t = is_torsion(phi, method=args.method, cap=args.cap)
    _emit(args, [("torsion", _bool(t)), ("order", witt_order(witt_class(phi), args.cap))])
    return EXIT_OK


# ---------- torsion / supreme


def cmd_torsion_enumerate(args):
    model = _model(args)
    group = torsion_subgroup(model)
    pairs = [("classes", len(group)), ("exponent", group.exponent)]
    plain = [f"# {len(group)} classes, exponent {group.exponent}"]
    for i, c in enumerate(group):
        order = group.order_of(c)
        pairs += [(f"class_{i}", c), (f"order_{i}", order)]
        plain.append(f"{str(c):<24} order {order}")
    _emit(args, pairs, plain)
    if args.check:
        return _emit_report(args, bfs_closure_check(model))
    return EXIT_OK


def cmd_supreme_find(args):
    model = _model(args)
    pi = supreme_search(model)
    _emit(args, [("supreme", "none" if pi is None else pi)])
    return EXIT_OK


def cmd_supreme_verify(args):
    model = _model(args)
    return _emit_report(args, verify_supreme_properties(model))


def cmd_supreme_multiplier(args):
    model = _model(args)
    slots = pfister_multiplier(model, _form(model, args.form))
    _emit(args, [("multiplier", format_pfister(model.group, slots)), ("folds", len(slots))],
          [format_pfister(model.group, slots) if slots else "<1>"])
    return EXIT_OK


def cmd_supreme_kneser(args):
    return _emit_report(args, kneser_check(_model(args)))


def cmd_supreme_probe(args):
    probe = universal_probe(_model(args))
    verdict = {True: "holds", False: "fails", None: "vacuous"}[probe.holds]
    _emit(args, [("universal", ";".join(map(str, probe.universal)) or "none"),
                 ("supreme", probe.supreme if probe.supreme is not None else "none"),
                 ("verdict", verdict)], probe.lines())
    return EXIT_OK


# ---------- invariants, realmax, extend


def cmd_invariants(args):
    report = invariant_report(_model(args), args.cap)
    lines = report.machine_lines() if args.machine else report.lines()
    print("\n".join(lines))
    return EXIT_OK


def cmd_realmax(args):
    model = _model(args)
    phi = _form(model, args.form)
    verdict = is_2_real_maximal(model, phi)
    pairs = [("realmax", _bool(verdict.verdict)), ("criterion", verdict.criterion)]
    if not verdict.verdict:
        pairs.append(("witness", verdict.witness))
    if args.pure:
        pure = pfister_pure_criterion(model, phi)
        pairs.append(("pure_part", _bool(pure.verdict)))
    _emit(args, pairs, [f"{phi}: 2-real-maximal {verdict.describe()}"] +
          ([f"pure-part criterion: {pure.describe()}"] if args.pure else []))
    return EXIT_OK


def cmd_extend(args):
    model = _model(args)
    if args.times < 1:
        raise UsageError("--times must be at least 1")
    names = [args.var] if args.times == 1 else [f"{args.var}_{i}" for i in range(1, args.times + 1)]
    for v in names:
        model = laurent_extend(model, v)
    sys.stdout.write(serialize_model(model))
    return EXIT_OK


# ---------- theorem suite


def theorem_suite(model, extend_var=None, seed=0, samples=2000, lg_dim=4) -> TheoremReport:
    """All applicable checks for one model, merged into a single report."""
    out = TheoremReport(f"theorems {model.name}")
    if not model.formally_real:
        out.skip("all", "model is not formally real")
        return out
    out.merge(local_global_check(model, lg_dim))
    if model.pythagorean:
        for name in ("supreme properties", "kneser", "sums of squares", "2-real-maximal", "torsion enumeration"):
            out.skip(name, "pythagorean model")
    else:
        out.merge(bfs_closure_check(model))
        out.merge(verify_supreme_properties(model))
        out.merge(kneser_check(model))
        out.merge(height_theorem_checks(model))
        out.merge(supreme_implies_realmax_check(model))
    if extend_var is not None:
        ext = laurent_extend(model, extend_var)
        out.merge(springer_check(ext, max_dim=4, samples=samples, seed=seed))
        if model.pythagorean:
            out.skip("laurent lifting", "pythagorean model")
        else:
            out.merge(prop_laurent_check(model, ext))
    return out


def cmd_check_theorems(args):
    names = [n for n in args.models.split(",") if n]
    if not names:
        raise UsageError("--models needs at least one name")
    models = [catalog_model(n) for n in names]
    failed = False
    for model in models:
        try:
            report = theorem_suite(model, args.extend, args.seed, args.samples, args.lg_dim)
        except (TheoremViolation, ConsistencyViolation) as exc:
            report = TheoremReport(f"theorems {model.name}")
            report.record("suite", False, str(exc))
        failed |= not report.ok
        for r in report.results:
            if args.machine:
                print(f"{model.name}.{r.name}={r.status}")
            else:
                print(f"{r.status:<11} {model.name:<14} {r.name}" + (f": {r.detail}" if r.detail else ""))
    return EXIT_THEOREM if failed else EXIT_OK


# ---------- parser


def build_parser():
    parser = _Parser(prog="torsionforms", description="Quadratic forms over finite field models.")
    verbs = parser.add_subparsers(dest="verb", required=True)

    model = verbs.add_parser("model", help="list, show or validate models")
    msub = model.add_subparsers(dest="action", required=True)
    msub.add_parser("list", help="catalog model names").set_defaults(func=cmd_model_list)
    p = msub.add_parser("show", help="print a model file with orderings")
    _add_model_args(p)
    p.set_defaults(func=cmd_model_show)
    p = msub.add_parser("validate", help="check the symbol axioms")
    _add_model_args(p)
    p.set_defaults(func=cmd_model_validate)

    fm = verbs.add_parser("form", help="queries on a single form")
    fsub = fm.add_subparsers(dest="action", required=True)
    p = fsub.add_parser("isometric")
    _add_model_args(p, forms=True)
    p.set_defaults(func=cmd_form_isometric)
    for name, func in (("isotropic", cmd_form_isotropic), ("decompose", cmd_form_decompose)):
        p = fsub.add_parser(name)
        _add_model_args(p, form=True)
        p.set_defaults(func=func)
    p = fsub.add_parser("represents")
    _add_model_args(p, form=True)
    p.add_argument("--value", required=True, help="square class, e.g. -3 or 2*t")
    p.set_defaults(func=cmd_form_represents)
    p = fsub.add_parser("pfister", help="recognize (--form) or build (--slots) a Pfister form")
    _add_model_args(p)
    p.add_argument("--form")
    p.add_argument("--slots", help='e.g. "<<3,-1>>"')
    p.set_defaults(func=cmd_form_pfister)
    p = fsub.add_parser("torsion", help="torsion test and Witt order")
    _add_model_args(p, form=True)
    p.add_argument("--method", choices=("signature", "order", "both"), default="both")
    p.add_argument("--cap", type=int, default=64)
    p.set_defaults(func=cmd_form_torsion)

    tor = verbs.add_parser("torsion", help="the torsion subgroup")
    tsub = tor.add_subparsers(dest="action", required=True)
    p = tsub.add_parser("enumerate")
    _add_model_args(p)
    p.add_argument("--check", action="store_true", help="cross-check with the breadth-first oracle")
    p.set_defaults(func=cmd_torsion_enumerate)

    sup = verbs.add_parser("supreme", help="supreme torsion forms")
    ssub = sup.add_subparsers(dest="action", required=True)
    for name, func in (("find", cmd_supreme_find), ("verify", cmd_supreme_verify),
                       ("kneser", cmd_supreme_kneser), ("probe", cmd_supreme_probe)):
        p = ssub.add_parser(name)
        _add_model_args(p)
        p.set_defaults(func=func)
    p = ssub.add_parser("multiplier")
    _add_model_args(p, form=True)
    p.set_defaults(func=cmd_supreme_multiplier)

    p = verbs.add_parser("invariants", help="u, Hasse number, Pythagoras number, height")
    _add_model_args(p)
    p.add_argument("--cap", type=int, default=None, help="dimension cap for the Hasse number search")
    p.set_defaults(func=cmd_invariants)

    p = verbs.add_parser("realmax", help="2-real-maximality of a form")
    _add_model_args(p, form=True)
    p.add_argument("--pure", action="store_true", help="also run the Pfister pure-part criterion")
    p.set_defaults(func=cmd_realmax)

    p = verbs.add_parser("extend", help="print the Laurent extension model file")
    _add_model_args(p)
    p.add_argument("--var", default="t")
    p.add_argument("--times", type=int, default=1)
    p.set_defaults(func=cmd_extend)

    p = verbs.add_parser("check-theorems", help="run every applicable theorem check")
    p.add_argument("--models", required=True, help="comma-separated catalog names")
    p.add_argument("--extend", metavar="VAR", help="also check the Laurent extension in VAR")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=2000)
    p.add_argument("--lg-dim", type=int, default=4, help="dimension bound for the local-global scan")
    p.add_argument("--machine", action="store_true")
    p.set_defaults(func=cmd_check_theorems)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (TheoremViolation, ConsistencyViolation) as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return EXIT_THEOREM
    except (TorsionFormsError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_COMPUTE


if __name__ == "__main__":
    sys.exit(main())
