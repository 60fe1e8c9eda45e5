"""Command-line interface.

Exit status: 0 when every check passes, 1 when a check fails (the witness is
printed), 2 for unreadable input or bad usage.  Reports go to stdout and
diagnostics to stderr.
"""
from __future__ import annotations

import argparse
import sys

from . import __version__
from .axioms import LEVELS, check_dual_quasi_hopf
from .errors import AlgebraError, ChecksFailed, ParseError
from .examples import (MUTANTS, CyclicGroupSpec, gauged_h4, group_algebra, sweedler_h4,
                       twisted_group_algebra)
from .instance import format_element, format_instance, load_instance
from .integrals import distinguished_grouplike, left_integrals, right_integrals
from .pipeline import antipode_status, verify_theorem
from .report import format_report
from .scalars import FieldSpec
from .sweedler import corpus_identity, default_binding, evaluate_identity, parse_bindings, parse_identity
from .tensors import set_term_ceiling, term_ceiling

OK, FAILED, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _out(text):
    print(text, file=sys.stdout)


def _emit(report, labels):
    if len(report):
        _out(format_report(report, labels))
    return OK if report.ok else FAILED


def _load(path):
    try:
        return load_instance(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc


def _prerequisites(H):
    """Run the full axiom check; return the report when it fails."""
    report = check_dual_quasi_hopf(H)
    return None if report.ok else report


def cmd_check(args):
    H = _load(args.file)
    return _emit(LEVELS[args.level](H), H.labels)


def cmd_integrals(args):
    H = _load(args.file)
    bad = _prerequisites(H)
    if bad:
        return _emit(bad, H.labels)
    for side, basis in (("left", left_integrals(H)), ("right", right_integrals(H))):
        if not basis:
            _out(f"{side}: 0")
        for T in basis:
            _out(f"{side}: {format_element(H, T.dense())}")
    return OK


def cmd_grouplike(args):
    H = _load(args.file)
    bad = _prerequisites(H)
    if bad:
        return _emit(bad, H.labels)
    left = left_integrals(H)
    if len(left) != 1:
        _out(f"left integral space has dimension {len(left)}; no distinguished grouplike")
        return FAILED
    a = distinguished_grouplike(H, left[0])
    support = [i for i, c in enumerate(a) if c]
    if len(support) == 1 and a[support[0]] == 1:
        _out(f"a = {H.labels[support[0]]}")
    else:
        _out(f"a = {format_element(H, a)}")
    return OK


def cmd_antipode(args):
    H = _load(args.file)
    bad = _prerequisites(H)
    if bad:
        return _emit(bad, H.labels)
    st = antipode_status(H)
    _out(f"injective: {'yes' if st.injective else 'no'}")
    _out(f"surjective: {'yes' if st.surjective else 'no'}")
    _out(f"rank: {st.rank}")
    _out(f"order: {st.order if st.order is not None else 'infinite'}")
    return OK if st.injective and st.surjective else FAILED


def cmd_verify(args):
    H = _load(args.file)
    return _emit(verify_theorem(H), H.labels)


def cmd_eval(args):
    H = _load(args.file)
    extras = {}
    if args.bind:
        try:
            with open(args.bind, encoding="utf-8") as fh:
                extras = parse_bindings(fh.read(), H)
        except OSError as exc:
            raise UsageError(f"cannot read {args.bind}: {exc.strerror}") from exc
    if args.builtin:
        try:
            name, ident = corpus_identity(args.builtin)
        except KeyError as exc:
            raise UsageError(str(exc.args[0])) from exc
    else:
        name = "identity"
        ident = parse_identity(args.identity, {k: v.arity for k, v in extras.items()})
    binding = default_binding(H, extras)
    return _emit(evaluate_identity(ident, H, binding, name), H.labels)


def _field(words):
    try:
        return FieldSpec.parse(" ".join(words))
    except ParseError as exc:
        raise UsageError(f"bad field {' '.join(words)!r}: {exc.message}") from exc


def cmd_example(args):
    if args.name == "mutant":
        if args.mutant not in MUTANTS:
            raise UsageError(f"unknown mutant {args.mutant!r}; choose from {', '.join(MUTANTS)}")
        H = MUTANTS[args.mutant]()
    else:
        field = _field(args.field)
        if args.name == "h4":
            H = sweedler_h4(field)
        elif args.name == "h4-gauge":
            H = gauged_h4(field)
        else:
            if args.n is None or args.n < 1:
                raise UsageError("--n must be a positive integer")
            try:
                zeta = field.parse_scalar(args.zeta) if args.zeta is not None else None
                spec = CyclicGroupSpec(args.n, field, zeta)
            except (ValueError, ZeroDivisionError) as exc:
                raise UsageError(str(exc)) from exc
            if args.name == "group":
                H = group_algebra(spec)
            else:
                H = twisted_group_algebra(spec)
        report = check_dual_quasi_hopf(H)
        if not report.ok:
            raise ChecksFailed("refusing to write an instance that fails the axioms", report)
    text = format_instance(H)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return OK


def build_parser():
    p = argparse.ArgumentParser(prog="dqhopf", description="Exact checks for dual quasi-Hopf algebras.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("--ceiling", type=int, metavar="N", help="maximum number of expanded terms")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check", help="run the axiom checks")
    s.add_argument("file")
    s.add_argument("--level", choices=list(LEVELS), default="hopf")
    s.set_defaults(fn=cmd_check)

    for name, fn, text in (("integrals", cmd_integrals, "bases of left and right integrals"),
                           ("grouplike", cmd_grouplike, "the distinguished grouplike"),
                           ("antipode", cmd_antipode, "bijectivity and order of the antipode")):
        s = sub.add_parser(name, help=text)
        s.add_argument("file")
        s.set_defaults(fn=fn)

    s = sub.add_parser("verify-theorem", aliases=["verify"], help="run every stage of the bijectivity argument")
    s.add_argument("file")
    s.set_defaults(fn=cmd_verify)

    s = sub.add_parser("eval", help="evaluate a Sweedler-notation identity")
    s.add_argument("file")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--identity", metavar="TEXT")
    g.add_argument("--builtin", metavar="NAME")
    s.add_argument("--bind", metavar="FILE", help="extra functionals, one 'NAME = values' per line")
    s.set_defaults(fn=cmd_eval)

    s = sub.add_parser("example", help="write a builtin instance")
    s.add_argument("name", choices=["group", "twist", "h4", "h4-gauge", "mutant"])
    s.add_argument("mutant", nargs="?", help="mutant name (for 'mutant')")
    s.add_argument("--n", type=int)
    s.add_argument("--zeta")
    s.add_argument("--field", nargs="+", default=["Q"], metavar="FIELD")
    s.add_argument("--out", metavar="FILE")
    s.set_defaults(fn=cmd_example)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.ceiling is not None and args.ceiling < 1:
        parser.error("--ceiling must be positive")
    previous = term_ceiling()
    try:
        if args.ceiling is not None:
            set_term_ceiling(args.ceiling)
        return args.fn(args)
    except ChecksFailed as exc:
        print(f"error: {exc}", file=sys.stderr)
        if exc.report is not None:
            print(format_report(exc.report), file=sys.stderr)
        return USAGE
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except AlgebraError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return USAGE
    finally:
        set_term_ceiling(previous)


if __name__ == "__main__":
    sys.exit(main())
