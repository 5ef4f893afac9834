"""Command line interface.

Subcommands: gen, compute, mx, certify, spectrum, verify. Spaces travel as
JSON ({"labels": [...], "d": [["p/q", ...], ...]}) on stdin/stdout so
commands pipe into each other. Exit codes: 0 success, 1 a verification
check failed, 2 bad usage or bad input.
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from . import __version__
from .algebra import HomologyTable, magnitude_homology
from .chains import enumerate_proper_chains, resolve_cap
from .errors import MaghError
from .frames import m_x
from .metric import (
    FiniteMetricSpace,
    complete_space,
    cycle_space,
    parse_rational,
    path_space,
    random_metric,
)
from .posets import mh2_certificate
from .verify import CHECKS, default_suite, run_checks


def _read_text(path):
    if path is None or path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _write_text(path, text):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _load_space(args):
    text = _read_text(getattr(args, "infile", None))
    if not text.strip():
        raise MaghError("empty input: expected a metric space as JSON or CSV")
    if text.lstrip().startswith("{"):
        return FiniteMetricSpace.from_json(text)
    return FiniteMetricSpace.from_csv(text)


def _cmd_gen(args):
    if args.kind == "cycle":
        space = cycle_space(args.n)
    elif args.kind == "path":
        space = path_space(args.n)
    elif args.kind == "complete":
        space = complete_space(args.n)
    else:
        space = random_metric(args.n, seed=args.seed, max_w=args.max_w)
    indent = 2 if args.pretty else None
    _write_text(args.outfile, space.to_json(indent=indent) + "\n")
    return 0


def _gradings(space, args):
    if args.l.strip() == "spectrum":
        values = set()
        for n in range(args.n_max + 1):
            values.update(enumerate_proper_chains(space, n, args.cap))
        out = sorted(values)
    else:
        out = sorted({parse_rational(part) for part in args.l.split(",") if part.strip()})
    if args.l_max is not None:
        bound = parse_rational(args.l_max)
        out = [l for l in out if l <= bound]
    for l in out:
        if l < 0:
            raise MaghError(f"negative grading {l} requested")
    return out


def _cmd_compute(args):
    space = _load_space(args)
    gradings = _gradings(space, args)
    cap = resolve_cap(args.cap)

    def rows_for(l):
        return magnitude_homology(space, l, args.n_max, cap)

    threads = max(1, args.threads)
    if threads == 1 or len(gradings) <= 1:
        chunks = [rows_for(l) for l in gradings]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            chunks = list(pool.map(rows_for, gradings))
    table = HomologyTable([row for chunk in chunks for row in chunk])
    if args.format == "json":
        _write_text(args.outfile, table.to_json() + "\n")
    elif args.format == "csv":
        _write_text(args.outfile, table.to_csv())
    else:
        _write_text(args.outfile, table.to_table())
    return 0


def _cmd_mx(args):
    space = _load_space(args)
    _write_text(args.outfile, _json_line(m_x(space).to_json_dict()))
    return 0


def _cmd_certify(args):
    space = _load_space(args)
    a, b = args.pair
    if not (0 <= a < space.n and 0 <= b < space.n):
        raise MaghError(f"pair ({a}, {b}) out of range for n={space.n}")
    cert = mh2_certificate(space, a, b)
    _write_text(args.outfile, _json_line(cert.to_json_dict()))
    return 0


def _cmd_spectrum(args):
    space = _load_space(args)
    lines = ["n,l,count"]
    for n in range(args.n_max + 1):
        buckets = enumerate_proper_chains(space, n, args.cap)
        for l in sorted(buckets):
            from .metric import format_rational

            lines.append(f"{n},{format_rational(l)},{len(buckets[l])}")
    _write_text(args.outfile, "\n".join(lines) + "\n")
    return 0


def _cmd_verify(args):
    checks = args.check or None
    if args.infile is not None:
        spaces = [_load_space(args)]
    else:
        spaces = default_suite(seed=args.seed)
    reports = run_checks(spaces, checks=checks, n_max=args.n_max, cap=args.cap)
    out = "".join(r.to_json() + "\n" for r in reports)
    _write_text(args.outfile, out)
    failed = sum(1 for r in reports if not r.passed)
    if failed:
        print(f"{failed} of {len(reports)} checks failed", file=sys.stderr)
        return 1
    return 0


def _json_line(obj):
    import json

    return json.dumps(obj, sort_keys=True) + "\n"


def _add_io(parser, needs_input=True):
    if needs_input:
        parser.add_argument(
            "--in",
            dest="infile",
            default=None,
            help="input file (JSON or CSV); default stdin",
        )
    parser.add_argument(
        "--out", dest="outfile", default=None, help="output file; default stdout"
    )


def build_parser():
    parser = argparse.ArgumentParser(
        prog="magh",
        description="Integer magnitude homology of finite metric spaces, exactly.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a named space as JSON")
    p.add_argument("kind", choices=["cycle", "path", "complete", "random"])
    p.add_argument("n", type=int, help="number of points")
    p.add_argument("--seed", type=int, default=0, help="random kind only")
    p.add_argument("--max-w", type=int, default=9, help="random kind only")
    p.add_argument("--pretty", action="store_true", help="indent the JSON")
    _add_io(p, needs_input=False)
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("compute", help="magnitude homology table of a space")
    p.add_argument(
        "--l",
        default="spectrum",
        help="'spectrum' or comma-separated gradings like '1,3/2,2'",
    )
    p.add_argument("--l-max", default=None, help="drop gradings above this value")
    p.add_argument("--n-max", type=int, default=3)
    p.add_argument("--format", choices=["table", "json", "csv"], default="table")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--cap", type=int, default=None, help="enumeration cap override")
    _add_io(p)
    p.set_defaults(func=_cmd_compute)

    p = sub.add_parser("mx", help="minimum four-cut length of a space")
    _add_io(p)
    p.set_defaults(func=_cmd_mx)

    p = sub.add_parser("certify", help="lower bound for MH_2 at grading d(a,b)")
    p.add_argument("--pair", nargs=2, type=int, required=True, metavar=("A", "B"))
    _add_io(p)
    p.set_defaults(func=_cmd_certify)

    p = sub.add_parser("spectrum", help="realized chain lengths per degree, CSV")
    p.add_argument("--n-max", type=int, default=3)
    p.add_argument("--cap", type=int, default=None)
    _add_io(p)
    p.set_defaults(func=_cmd_spectrum)

    p = sub.add_parser("verify", help="run cross-checks, one JSON report per line")
    p.add_argument(
        "--check",
        action="append",
        choices=sorted(CHECKS),
        help="run only this check (repeatable); default all",
    )
    p.add_argument("--all", action="store_true", help="run every check (the default)")
    p.add_argument("--n-max", type=int, default=3)
    p.add_argument("--seed", type=int, default=1, help="seed for the random suite spaces")
    p.add_argument("--cap", type=int, default=None)
    _add_io(p)
    p.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except MaghError as exc:
        print(f"magh: error: {exc}", file=sys.stderr)
        return 2
    except BrokenPipeError:
        return 0


if __name__ == "__main__":
    sys.exit(main())
