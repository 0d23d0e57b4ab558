"""Command-line front end.

Subcommands: snf, solve, classify, check, equiv.  Output is canonical
JSON (default) or human-readable text.  Exit codes:

  0  success
  2  malformed input file or usage error
  3  a matrix that must be unimodular is not
  4  a closure or enumeration cap was exceeded
  5  the generator permutations are not a consistent representation
  6  the given shift matrix is not invariant (check command)
  7  family index out of range (equiv command)
"""

import argparse
import sys as _sys
from pathlib import Path

from . import equiv as equiv_mod
from . import master as master_mod
from .errors import (
    CapExceeded,
    NotInvariant,
    NotUnimodular,
    ParseError,
    PreconditionFailed,
)
from .representation import group_closure
from .reportio import (
    dumps_canonical,
    load_matrix,
    load_presentation,
    load_rat_matrix,
    matrix_report,
    render_report_text,
    render_snf_text,
    solution_report,
    witness_entry,
)
from .snf import smith_decompose

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_NOT_UNIMODULAR = 3
EXIT_CAP_EXCEEDED = 4
EXIT_NOT_HOMOMORPHISM = 5
EXIT_NOT_INVARIANT = 6
EXIT_BAD_INDEX = 7


def _emit(args, payload, text):
    out = dumps_canonical(payload) if args.format == "json" else text
    if args.output:
        Path(args.output).write_text(out, encoding="utf-8")
    else:
        _sys.stdout.write(out)


def _read(path):
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e}") from None


def _load_presentation(args):
    presentation, options = load_presentation(_read(args.presentation))
    if args.bound is not None:
        options["bound"] = args.bound
    if args.closure_cap is not None:
        options["closure_cap"] = args.closure_cap
    if args.perm_cap is not None:
        options["perm_cap"] = args.perm_cap
    return presentation, options


def _prepare_system(presentation, options, strict=False):
    # Closure doubles as the finiteness check on the generated group.
    group_closure(presentation, cap=options["closure_cap"])
    sys_ = master_mod.build_system(presentation, strict=strict)
    return sys_, master_mod.solve_master(sys_)


def cmd_snf(args):
    dec = smith_decompose(load_matrix(_read(args.matrix)))
    _emit(args, matrix_report(dec), render_snf_text(dec))
    return EXIT_OK


def cmd_solve(args):
    presentation, options = _load_presentation(args)
    sys_, families = _prepare_system(presentation, options, strict=args.strict)
    rep = solution_report(sys_, families)
    _emit(args, rep, render_report_text(rep))
    return EXIT_OK


def cmd_classify(args):
    presentation, options = _load_presentation(args)
    sys_, families = _prepare_system(presentation, options, strict=args.strict)
    report = equiv_mod.classify(sys_, families, bound=options["bound"])
    rep = solution_report(sys_, families, classes=report, bound=options["bound"])
    _emit(args, rep, render_report_text(rep))
    return EXIT_OK


def cmd_check(args):
    presentation, _ = _load_presentation(args)
    P = load_rat_matrix(_read(args.shifts))
    Ts = master_mod.residual_check(presentation, P)
    payload = {
        "schema_version": 1,
        "invariant": True,
        "T": [[[str(x) for x in row] for row in T] for T in Ts],
    }
    text_lines = ["invariant: yes"]
    for k, T in enumerate(Ts, start=1):
        text_lines.append(f"T({k}):")
        text_lines.extend("  [ " + "  ".join(str(x) for x in row) + " ]" for row in T)
    _emit(args, payload, "\n".join(text_lines) + "\n")
    return EXIT_OK


def cmd_equiv(args):
    presentation, options = _load_presentation(args)
    sys_, families = _prepare_system(presentation, options, strict=args.strict)
    i, j = args.i, args.j
    if not (0 <= i < len(families) and 0 <= j < len(families)):
        _sys.stderr.write(
            f"error: family indices must lie in 0..{len(families) - 1}\n"
        )
        return EXIT_BAD_INDEX
    cset = equiv_mod.enumerate_unimodular_centralizer(
        equiv_mod.commutant_basis([M for M, _ in presentation.generators]),
        options["bound"],
    )
    perms = equiv_mod.perm_centralizer(presentation, cap=options["perm_cap"])
    witness = None
    for H in cset.elements:
        for tau, _ in perms:
            witness = equiv_mod.test_equivalence(
                sys_, families[j].S, sys_, families[i].S, H, tau
            )
            if witness is not None:
                break
        if witness is not None:
            break
    if witness is not None:
        payload = {
            "schema_version": 1,
            "witnessed": True,
            "bound": options["bound"],
            "exhaustive": cset.exhaustive,
            "witness": witness_entry(i, j, witness),
        }
        text = (
            f"families {i} and {j} are equivalent\n"
            f"H = {witness.H.tolist()}\nB sigma = {list(witness.B.images)}\n"
            f"Z = {list(witness.Z)}\n"
        )
    else:
        payload = {
            "schema_version": 1,
            "witnessed": False,
            "bound": options["bound"],
            "exhaustive": cset.exhaustive,
            "witness": None,
        }
        qualifier = "" if cset.exhaustive else " (search not exhaustive)"
        text = f"no witness within searched set, bound {options['bound']}{qualifier}\n"
    _emit(args, payload, text)
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="multilat",
        description="Exact solver and classifier for multilattice master equations.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--output", help="write the report to this path instead of stdout")
        p.add_argument("--format", choices=("json", "text"), default="json")

    def add_presentation(p):
        p.add_argument("presentation", help="presentation file (JSON)")
        p.add_argument("--bound", type=int, help="centralizer coefficient bound")
        p.add_argument("--closure-cap", dest="closure_cap", type=int, help="group closure cap")
        p.add_argument("--perm-cap", dest="perm_cap", type=int, help="permutation search cap")
        p.add_argument(
            "--strict",
            action="store_true",
            help="reject presentations whose generator assignment is not a homomorphism",
        )

    p = sub.add_parser("snf", help="Smith normal form of an integer matrix file")
    p.add_argument("matrix", help="matrix file (JSON nested arrays)")
    add_common(p)
    p.set_defaults(func=cmd_snf)

    p = sub.add_parser("solve", help="solve the master equation for a presentation")
    add_presentation(p)
    add_common(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("classify", help="solve and partition into equivalence classes")
    add_presentation(p)
    add_common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("check", help="verify a shift matrix against a presentation")
    add_presentation(p)
    p.add_argument("shifts", help="shift matrix file (JSON nested arrays of fractions)")
    add_common(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("equiv", help="search for an equivalence witness between two families")
    add_presentation(p)
    p.add_argument("i", type=int, help="first family index (solve ordering)")
    p.add_argument("j", type=int, help="second family index (solve ordering)")
    add_common(p)
    p.set_defaults(func=cmd_equiv)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as e:
        _sys.stderr.write(f"error: {e}\n")
        return EXIT_PARSE
    except NotUnimodular as e:
        _sys.stderr.write(f"error: {e}\n")
        return EXIT_NOT_UNIMODULAR
    except CapExceeded as e:
        _sys.stderr.write(f"error: {e}\n")
        return EXIT_CAP_EXCEEDED
    except PreconditionFailed as e:
        _sys.stderr.write(f"error: {e}\n")
        return EXIT_NOT_HOMOMORPHISM
    except NotInvariant as e:
        _sys.stderr.write(f"error: generator {e.generator + 1}: {e}\n")
        return EXIT_NOT_INVARIANT


if __name__ == "__main__":
    raise SystemExit(main())
