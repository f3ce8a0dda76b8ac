"""Command-line front end.

Exit status: 0 success / satisfiable / true, 1 unsatisfiable / false /
failed check, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .errors import TfsError
from .fstruct import parse_feature_structure, resolved
from .interp import format_interpretation, parse_interpretation, truth_of
from .morph import MorphAutomaton, format_morph, morph_to_interpretation, morph_violations, witness
from .resolve import iter_resolvants, res_naive, res_refined
from .signature import Signature, check_rational, parse_signature
from .unify import unify

OK, NO, ERROR = 0, 1, 2


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror or exc}") from exc


def _load_sig(path: str) -> Signature:
    return parse_signature(_read(path))


def _load_fs(path: str, sig: Signature, cls=None):
    if cls is None:
        return parse_feature_structure(_read(path), sig)
    return parse_feature_structure(_read(path), sig, cls)


def cmd_check_sig(args, out) -> int:
    sig = _load_sig(args.sig)
    if not check_rational(sig):  # unreachable for finite signatures
        out.write("signature is not rational\n")
        return NO
    out.write(f"types: {len(sig.types)}\n")
    out.write(f"attrs: {len(sig.attrs)}\n")
    out.write(f"species: {' '.join(sig.species)}\n")
    for (t, a), v in sig.approp.items():
        out.write(f"approp {t} {a} {v}\n")
    out.write("rational: yes\n")
    return OK


def cmd_resolve(args, out) -> int:
    sig = _load_sig(args.sig)
    fs = _load_fs(args.fs, sig)
    result = res_naive(fs, sig) if args.naive else res_refined(fs, sig)
    out.write(result.format())
    return OK if result else NO


def cmd_sat(args, out) -> int:
    sig = _load_sig(args.sig)
    fs = _load_fs(args.fs, sig)
    rho = next(iter_resolvants(fs, sig), None)
    out.write("sat\n" if rho is not None else "unsat\n")
    return OK if rho is not None else NO


def cmd_witness(args, out) -> int:
    sig = _load_sig(args.sig)
    fs = _load_fs(args.fs, sig)
    rho = next(iter_resolvants(fs, sig), None)
    if rho is None:
        out.write("unsat\n")
        return NO
    m = witness(resolved(fs, rho, sig), sig)
    out.write(format_morph(m))
    if args.model:
        out.write("---\n")
        out.write(format_interpretation(morph_to_interpretation(m, sig)))
        out.write(f"designated {m.root}\n")
    return OK


def cmd_check_morph(args, out) -> int:
    sig = _load_sig(args.sig)
    m = _load_fs(args.morph, sig, MorphAutomaton)
    problems = morph_violations(m, sig)
    if problems:
        for p in problems:
            out.write(f"violation: {p}\n")
        out.write("not a morph\n")
        return NO
    out.write("morph\n")
    return OK


def cmd_unify(args, out) -> int:
    sig = _load_sig(args.sig)
    a = _load_fs(args.fs_a, sig)
    b = _load_fs(args.fs_b, sig)
    result = unify(a, b, sig)
    out.write(result.format())
    return OK if result else NO


def cmd_truth(args, out) -> int:
    sig = _load_sig(args.sig)
    interp = parse_interpretation(_read(args.interp), sig)
    if args.object not in interp.species_of:
        raise UsageError(f"unknown object {args.object!r}")
    fs = _load_fs(args.fs, sig)
    holds = truth_of(fs, interp, args.object, sig)
    out.write("true\n" if holds else "false\n")
    return OK if holds else NO


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tfs", description="Satisfiability, resolution and unification of typed feature structures."
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check-sig", help="validate a signature and summarize it")
    p.add_argument("sig")
    p.set_defaults(func=cmd_check_sig)

    p = sub.add_parser("resolve", help="list the resolvants of a feature structure")
    p.add_argument("--naive", action="store_true", help="use generate-and-test enumeration")
    p.add_argument("sig")
    p.add_argument("fs")
    p.set_defaults(func=cmd_resolve)

    p = sub.add_parser("sat", help="decide satisfiability")
    p.add_argument("sig")
    p.add_argument("fs")
    p.set_defaults(func=cmd_sat)

    p = sub.add_parser("witness", help="print a morph the feature structure approximates")
    p.add_argument("--model", action="store_true", help="also print a finite interpretation")
    p.add_argument("sig")
    p.add_argument("fs")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("check-morph", help="check that a machine is totally well-typed")
    p.add_argument("sig")
    p.add_argument("morph")
    p.set_defaults(func=cmd_check_morph)

    p = sub.add_parser("unify", help="unify two feature structures")
    p.add_argument("sig")
    p.add_argument("fs_a")
    p.add_argument("fs_b")
    p.set_defaults(func=cmd_unify)

    p = sub.add_parser("truth", help="is the feature structure true of an object?")
    p.add_argument("sig")
    p.add_argument("interp")
    p.add_argument("object")
    p.add_argument("fs")
    p.set_defaults(func=cmd_truth)
    return parser


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return ERROR if exc.code else OK
    try:
        return args.func(args, out)
    except (UsageError, TfsError) as exc:
        err.write(f"tfs {args.command}: error: {exc}\n")
        return ERROR


if __name__ == "__main__":
    sys.exit(main())
