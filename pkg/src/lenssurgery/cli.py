"""Command line entry point: ``lenssurgery <subcommand> ...``."""

from __future__ import annotations

import argparse
import json
import sys
from math import gcd

from . import harness
from .alexander import delta_via_phi
from .globalview import cyclic_lift, grid
from .modular import canonical_k
from .quadratic import UnknotBranch, tau_decompose

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_FINDINGS = 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _coprime(p: int, k: int) -> None:
    if p < 2:
        raise UsageError("p must be at least 2")
    if gcd(p, k) != 1:
        raise UsageError(f"gcd({p}, {k}) != 1")


def _format_record(rec: harness.ClassificationRecord) -> str:
    lines = [
        f"(p, k1) = ({rec.p}, {rec.k1})  class {rec.dual_class}  genus {rec.genus}",
        f"filters: ky={rec.passes_ky} alternating={rec.passes_alternating} pos={rec.passes_pos}",
    ]
    if rec.relation:
        r = rec.relation
        d = rec.decomposition
        lines.append(
            f"relation: a={r['a']} eps1={r['eps1']:+d} eps2={r['eps2']:+d} n={r['n']}"
            f"  tau={d['tau']} gamma'={d['gamma_prime']} stable={d['stable']}"
        )
    fams = " ".join(
        m["family"] if m["parameter"] is None else f"{m['family']}({m['parameter']})"
        for m in rec.matches
    )
    lines.append(f"matches: {fams or '-'}")
    if rec.anomalies:
        lines.append(f"anomalies: {', '.join(rec.anomalies)}")
    return "\n".join(lines) + "\n"


def cmd_classify(args) -> int:
    _coprime(args.p, args.k)
    rec = harness.classify(args.p, args.k)
    if args.json:
        sys.stdout.write(json.dumps(rec.to_dict(), sort_keys=True) + "\n")
    else:
        sys.stdout.write(_format_record(rec))
    return EXIT_OK


def cmd_enumerate(args) -> int:
    if args.pmax < 2:
        raise UsageError("--pmax must be at least 2")
    try:
        filters = harness.parse_filters(args.filter)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    data = harness.export(harness.enumerate_classes(args.pmax, filters), args.format)
    if args.out:
        with open(args.out, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.pmax < 2:
        raise UsageError("--pmax must be at least 2")
    report = harness.verify_main_theorem(args.pmax)
    if args.json:
        sys.stdout.write(json.dumps(report.to_dict(), sort_keys=True) + "\n")
        return report.exit_code
    print(f"classes: {report.classes}")
    print(f"hypothesis (stable, ky, alternating): {report.hypothesis}")
    for tag, count in report.type_counts.items():
        print(f"  {tag}: {count}")
    print(f"V-only: {len(report.v_only)}")
    print(f"no torus representative: {len(report.no_torus)}")
    for item in report.no_torus:
        print(f"  {item}")
    print(f"exceptions: {len(report.exceptions)}")
    for item in report.exceptions:
        print(f"  {item}")
    print("theorem holds" if report.holds else "EXCEPTIONS FOUND")
    return report.exit_code


def cmd_tables(args) -> int:
    diff = harness.reproduce_table(args.which, j_max=args.jmax)
    sys.stdout.write(diff.render())
    return EXIT_OK if diff.clean else EXIT_FINDINGS


def cmd_grid(args) -> int:
    _coprime(args.p, args.k)
    if args.jmin > args.jmax:
        raise UsageError("--jmin must not exceed --jmax")
    if args.imax < 0:
        raise UsageError("--imax must be nonnegative")
    k1 = canonical_k(args.p, args.k)
    poly = delta_via_phi(args.p, k1)
    if not poly.is_integral():
        raise UsageError(f"({args.p}, {k1}) has a half-integer coefficient table")
    try:
        dec = tau_decompose(args.p, k1)
    except UnknotBranch as exc:
        raise UsageError(str(exc)) from None
    g = grid(cyclic_lift(poly, dec), dec, args.imax, range(args.jmin, args.jmax + 1))
    sys.stdout.write(g.to_csv() if args.csv else g.to_ascii())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="lenssurgery", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("classify", help="full record for one pair")
    sp.add_argument("p", type=int)
    sp.add_argument("k", type=int)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser(
        "enumerate",
        help="one record per dual class up to --pmax",
        epilog=f"worker processes: ${harness.WORKERS_ENV}",
    )
    sp.add_argument("--pmax", type=int, required=True)
    sp.add_argument("--filter", default="", help="comma list of " + ",".join(harness.FILTERS))
    sp.add_argument("--format", choices=harness.FORMATS, default="jsonl")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("verify", help="check the classification theorem up to --pmax")
    sp.add_argument("--pmax", type=int, required=True)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("tables", help="re-derive a family table and print differences")
    sp.add_argument("--which", choices=harness.TABLES, required=True)
    sp.add_argument("--jmax", type=int, default=5)
    sp.set_defaults(func=cmd_tables)

    sp = sub.add_parser("grid", help="global view A(i + j k1)")
    sp.add_argument("p", type=int)
    sp.add_argument("k", type=int)
    sp.add_argument("--imax", type=int, required=True)
    sp.add_argument("--jmin", type=int, required=True)
    sp.add_argument("--jmax", type=int, required=True)
    fmt = sp.add_mutually_exclusive_group()
    fmt.add_argument("--ascii", action="store_true", default=True)
    fmt.add_argument("--csv", action="store_true")
    sp.set_defaults(func=cmd_grid)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"lenssurgery: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
