"""Command line: ``python3 -m mackey <command>``.

Commands::

    analyze <datum file | fixture tag> [--json] [--out FILE] [--samples N] [--seed S]
    verify <fixture tag> [--samples N] [--seed S] [--h H] [--moment-tol T] [--json] [--out FILE]
    cohomology <algebra file | datum file | tag> --degree K [--of g|n|l|l/k]
               [--coefficients trivial|adjoint|coadjoint] [--json]
    catalog [--datum TAG]

Exit codes: 0 success, 1 verification failure, 2 invariant violation,
3 internal consistency error, 64 usage error, 65 parse error.
The default seed comes from the MACKEY_SEED environment variable.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import catalog
from . import cohomology as co
from . import formats
from . import lie
from . import report
from . import verify
from .errors import ConsistencyError, DomainError, ParseError

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INVARIANT = 2
EXIT_CONSISTENCY = 3
EXIT_USAGE = 64
EXIT_PARSE = 65


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _parser() -> argparse.ArgumentParser:
    p = _Parser(prog="python3 -m mackey", description="Orbit-datum analysis and fixture verification.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    a = sub.add_parser("analyze", help="full report for a datum file or a catalog fixture")
    a.add_argument("datum")
    a.add_argument("--samples", type=int, default=0, help="verification samples for catalog fixtures")
    a.add_argument("--seed", type=int, default=None)
    a.add_argument("--json", action="store_true", help="print the machine-readable report")
    a.add_argument("--out", help="write the machine-readable report to a file")

    v = sub.add_parser("verify", help="finite-difference residual table for a fixture")
    v.add_argument("fixture")
    v.add_argument("--samples", type=int, default=100)
    v.add_argument("--seed", type=int, default=None)
    v.add_argument("--h", type=float, default=verify.DEFAULT_H)
    v.add_argument("--moment-tol", type=float, default=verify.MOMENT_TOL)
    v.add_argument("--json", action="store_true")
    v.add_argument("--out")

    c = sub.add_parser("cohomology", help="Chevalley-Eilenberg cohomology dimensions and representatives")
    c.add_argument("source", help="algebra file, datum file or catalog tag")
    c.add_argument("--degree", type=int, required=True)
    c.add_argument("--of", default="g", choices=["g", "n", "l", "k", "l/k"],
                   help="which algebra of a datum (default g)")
    c.add_argument("--coefficients", default="trivial", choices=["trivial", "adjoint", "coadjoint"])
    c.add_argument("--json", action="store_true")
    c.add_argument("--out")

    k = sub.add_parser("catalog", help="list fixtures or print a fixture's datum file")
    k.add_argument("--datum", metavar="TAG", help="print the datum file of a fixture")
    return p


def _header_kind(path: Path) -> str | None:
    try:
        with path.open() as fh:
            for line in fh:
                s = line.strip()
                if s:
                    parts = s.lstrip("#").split()
                    if s.startswith("#") and parts and parts[0].startswith("mackey-"):
                        return parts[0][7:]
                    return None
    except OSError:
        return None
    return None


def _source(arg: str) -> report.Source:
    p = Path(arg)
    if p.exists():
        return report.Source.from_file(formats.load_datum(p))
    if arg in catalog.tags():
        return report.Source.from_tag(arg)
    raise UsageError(f"{arg!r} is neither a file nor a catalog fixture ({', '.join(catalog.tags())})")


def _emit(args, rep: dict, text: str, out) -> None:
    if args.out:
        Path(args.out).write_text(formats.dumps(rep))
    out.write(formats.dumps(rep) if args.json else text)


def _cmd_analyze(args, out) -> int:
    src = _source(args.datum)
    if args.samples < 0:
        raise UsageError("--samples must be non-negative")
    rep = report.analysis_report(src, samples=args.samples, seed=args.seed)
    _emit(args, rep, report.analysis_text(rep), out)
    rows = rep["verification"]["rows"]
    return EXIT_OK if all(r["passed"] for r in rows) else EXIT_FAILED


def _cmd_verify(args, out) -> int:
    if args.fixture not in catalog.tags():
        raise UsageError(f"unknown fixture {args.fixture!r}; known: {', '.join(catalog.tags())}")
    if args.samples < 1 or args.h <= 0 or args.moment_tol <= 0:
        raise UsageError("--samples, --h and --moment-tol must be positive")
    rep = report.verify_report(args.fixture, seed=args.seed, samples=args.samples, h=args.h,
                               moment_tol=args.moment_tol)
    _emit(args, rep, report.verify_text(rep), out)
    return EXIT_OK if rep["passed"] else EXIT_FAILED


def _cohomology_algebra(args) -> tuple[lie.LieAlgebra, str, object]:
    p = Path(args.source)
    datum = None
    if p.exists():
        kind = _header_kind(p)
        if kind == "algebra":
            if args.of != "g":
                raise UsageError("--of needs a datum file or fixture tag")
            return formats.load_algebra(p), str(p), None
        datum = formats.load_datum(p).datum
    elif args.source in catalog.tags():
        datum = catalog.entry(args.source).datum()
    else:
        raise UsageError(f"{args.source!r} is neither a file nor a catalog fixture")
    if args.of == "g":
        return datum.alg, args.source, datum
    if args.of == "l/k":
        return report.quotient_l_k(datum), f"{args.source} l/k", datum
    sub = {"n": datum.ideal, "l": datum.l, "k": datum.k}[args.of]
    return lie.subalgebra(datum.alg, sub), f"{args.source} {args.of}", datum


def _cmd_cohomology(args, out) -> int:
    if args.degree not in (1, 2):
        raise UsageError("--degree must be 1 or 2")
    alg, name, datum = _cohomology_algebra(args)
    module = {"trivial": None, "adjoint": co.adjoint_module, "coadjoint": co.coadjoint_module}[args.coefficients]
    module = module(alg) if module else None
    block = report.cohomology_block(alg, [args.degree], module)[f"H{args.degree}"]
    rep = {"format": report.COHOMOLOGY_FORMAT, "algebra": name, "dim": alg.dim, "degree": args.degree,
           "coefficients": args.coefficients, "dimension": block["dim"], "representatives": block["representatives"]}
    if datum is not None and args.of == "l/k" and args.degree == 2 and module is None:
        from . import obstruction as ob

        rep["infinitesimal_class"] = "trivial" if ob.infinitesimal_class_trivial(datum) else "nontrivial"
    lines = [f"H^{args.degree}({name}; {args.coefficients}) has dimension {block['dim']}"]
    if "infinitesimal_class" in rep:
        lines.append(f"infinitesimal obstruction class: {rep['infinitesimal_class']}")
    for i, r in enumerate(block["representatives"]):
        lines.append(f"representative {i + 1}:")
        lines.append(r.rstrip("\n"))
    _emit(args, rep, "\n".join(lines) + "\n", out)
    return EXIT_OK


def _cmd_catalog(args, out) -> int:
    if args.datum:
        if args.datum not in catalog.tags():
            raise UsageError(f"unknown fixture {args.datum!r}")
        e = catalog.entry(args.datum)
        out.write(formats.format_datum(e.datum(), e.flags))
        return EXIT_OK
    for tag in catalog.tags():
        out.write(f"{tag:<18} {catalog.entry(tag).summary}\n")
    return EXIT_OK


COMMANDS = {"analyze": _cmd_analyze, "verify": _cmd_verify, "cohomology": _cmd_cohomology, "catalog": _cmd_catalog}


def main(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        args = _parser().parse_args(argv)
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except ParseError as exc:
        err.write(f"parse error: {exc}\n")
        return EXIT_PARSE
    except ConsistencyError as exc:
        err.write(f"consistency error: {exc}\n")
        return EXIT_CONSISTENCY
    except DomainError as exc:
        err.write(f"invariant violation: {exc}\n")
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
