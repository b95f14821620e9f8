"""Command-line surface.

Exit codes: 0 clean; 1 usage or configuration error; 2 coverage,
resource, or I/O error; 3 at least one bound inequality failed inside
its applicability domain; 4 a sum-of-two-odd-primes failure (d = 0)
other than the known exception E = 4 (E = 4 too under --strict);
5 (opt-in via --exit-on-excluded) an excluded structural type occurred.

Worker count and checkpoint path can also come from the environment
(EVENQUAD_WORKERS, EVENQUAD_CHECKPOINT); explicit flags win.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Optional

from . import __version__
from .bounds import (DEFAULT_UPPER_C, REFERENCE_ROOTS, ROOT_FUNCTION_IDS,
                     check_bounds, dusart_scan, find_root)
from .errors import BracketError, CoverageError, ResourceBudgetError
from .model import decompose, interactions
from .primes import PrimeTable
from .render import (FORMATS, render_bound_report, render_census_csv,
                     render_decomposition, render_dusart, render_goldbach_csv,
                     render_interactions, render_scan, render_thresholds,
                     render_types)
from .scan import DEFAULT_CHUNK, scan_range
from .taxonomy import enumerate_types

THRESHOLD_BRACKETS = {
    "f_35": (100.0, 200.0),
    "threshold_235": (100.0, 1e6),
    "threshold_24": (100.0, 1e6),
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage errors exit 1, not argparse's 2
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(1)


def build_parser() -> argparse.ArgumentParser:
    fmt = _Parser(add_help=False)
    fmt.add_argument("-f", "--format", choices=FORMATS, default="table")
    fmt.add_argument("-o", "--output", metavar="PATH",
                     help="write to PATH instead of stdout")

    rng = _Parser(add_help=False)
    rng.add_argument("--from", dest="lo", type=int, required=True,
                     metavar="E", help="first even number (inclusive)")
    rng.add_argument("--to", dest="hi", type=int, required=True,
                     metavar="E", help="last even number (inclusive)")

    scan = _Parser(add_help=False)
    scan.add_argument("--sieve-limit", type=int, default=None,
                      help="sieve coverage (default: the scan end)")
    scan.add_argument("--constant", type=float, default=DEFAULT_UPPER_C,
                      help="upper bound multiplier (default %(default)s)")
    scan.add_argument("--workers", type=int, default=None,
                      help="process count (default: available cores)")
    scan.add_argument("--chunk-size", type=int, default=DEFAULT_CHUNK,
                      help="even numbers per chunk (default %(default)s)")
    scan.add_argument("--checkpoint", metavar="PATH", default=None,
                      help="JSON checkpoint to create or resume from")
    scan.add_argument("--max-chunks", type=int, default=None,
                      help="stop after N chunks (progress is checkpointed)")
    scan.add_argument("--strict", action="store_true",
                      help="count E = 4 as a reportable failure too")
    scan.add_argument("--exit-on-excluded", action="store_true",
                      help="exit 5 when an excluded type occurs")

    p = _Parser(prog="evenquad", description=__doc__,
                formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("decompose", parents=[fmt],
                        help="quadruple and wings of one even number")
    sp.add_argument("E", type=int)
    sp.add_argument("--sieve-limit", type=int, default=None)

    sp = sub.add_parser("interactions", parents=[fmt],
                        help="list the odd pairs summing to E")
    sp.add_argument("E", type=int)

    sub.add_parser("types", parents=[fmt],
                   help="the 75 structural types")

    sub.add_parser("census", parents=[fmt, rng, scan],
                   help="classify every even number in a range")
    sub.add_parser("goldbach", parents=[fmt, rng, scan],
                   help="scan for even numbers with no odd prime pair")

    sp = sub.add_parser("bounds", parents=[fmt, scan],
                        help="inequality battery for one E or a range")
    sp.add_argument("E", type=int, nargs="?", default=None)
    sp.add_argument("--from", dest="lo", type=int, default=None, metavar="E")
    sp.add_argument("--to", dest="hi", type=int, default=None, metavar="E")

    sp = sub.add_parser("dusart", parents=[fmt],
                        help="check x/ln x <= pi(x) <= c*x/ln x on a range")
    sp.add_argument("--from", dest="lo", type=int, default=2, metavar="X")
    sp.add_argument("--to", dest="hi", type=int, required=True, metavar="X")
    sp.add_argument("--constant", type=float, default=DEFAULT_UPPER_C)
    sp.add_argument("--sieve-limit", type=int, default=None)

    sp = sub.add_parser("thresholds", parents=[fmt],
                        help="bisection roots of the threshold functions")
    sp.add_argument("--tol", type=float, default=1e-9)
    sp.add_argument("--constant", type=float, default=DEFAULT_UPPER_C)

    sub.add_parser("theorem", parents=[fmt, rng, scan],
                   help="full battery plus the d > 0 claim on a range")
    return p


def _write(text: str, args) -> None:
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _require_even(name: str, value: int, minimum: int) -> None:
    if value % 2 or value < minimum:
        raise ValueError(f"{name} must be an even number >= {minimum}, "
                         f"got {value}")


def _check_sieve_limit(limit: Optional[int], needed: int) -> int:
    if limit is None:
        return needed
    if limit < needed:
        raise ValueError(f"--sieve-limit {limit} is below the largest "
                         f"number referenced ({needed})")
    return limit


def _scan_args(args, lo: int, hi: int) -> dict:
    workers = args.workers
    if workers is None:
        env = os.environ.get("EVENQUAD_WORKERS")
        workers = int(env) if env else (os.cpu_count() or 1)
    checkpoint = args.checkpoint or os.environ.get("EVENQUAD_CHECKPOINT")
    return dict(limit=_check_sieve_limit(args.sieve_limit, hi),
                constant=args.constant, chunk_size=args.chunk_size,
                workers=workers, checkpoint_path=checkpoint,
                max_chunks=args.max_chunks)


def _scan_exit_code(report, strict: bool, exit_on_excluded: bool) -> int:
    failures = [e for e in report.goldbach_failures if strict or e != 4]
    failures += [e for e in report.theorem_violations if strict or e != 4]
    if failures:
        return 4
    if any(report.bound_failures.values()):
        return 3
    if exit_on_excluded and report.excluded_hits:
        return 5
    return 0


def _cmd_decompose(args) -> int:
    _require_even("E", args.E, 2)
    limit = _check_sieve_limit(args.sieve_limit, max(args.E, 2))
    dec = decompose(args.E, PrimeTable(limit))
    _write(render_decomposition(dec, args.format), args)
    return 0


def _cmd_interactions(args) -> int:
    _require_even("E", args.E, 2)
    _write(render_interactions(args.E, list(interactions(args.E)),
                               args.format), args)
    return 0


def _cmd_types(args) -> int:
    _write(render_types(enumerate_types(), args.format), args)
    return 0


def _cmd_range_scan(args, mode: str, minimum: int = 4) -> int:
    _require_even("--from", args.lo, minimum)
    _require_even("--to", args.hi, minimum)
    if args.lo > args.hi:
        raise ValueError(f"--from {args.lo} exceeds --to {args.hi}")
    report = scan_range(args.lo, args.hi, mode=mode,
                        **_scan_args(args, args.lo, args.hi))
    if args.format == "csv" and mode == "census":
        text = render_census_csv(report)
    elif args.format == "csv" and mode == "goldbach":
        text = render_goldbach_csv(report)
    else:
        text = render_scan(report, args.format)
    _write(text, args)
    return _scan_exit_code(report, args.strict, args.exit_on_excluded)


def _cmd_bounds(args) -> int:
    if args.E is not None:
        _require_even("E", args.E, 2)
        limit = _check_sieve_limit(args.sieve_limit, args.E)
        dec = decompose(args.E, PrimeTable(limit))
        rep = check_bounds(dec, args.constant)
        _write(render_bound_report(rep, args.format), args)
        return 3 if rep.failed_ids() else 0
    if args.lo is None or args.hi is None:
        raise ValueError("bounds needs either a single E or --from/--to")
    return _cmd_range_scan(args, "bounds", minimum=2)


def _cmd_dusart(args) -> int:
    if args.lo < 2 or args.lo > args.hi:
        raise ValueError(f"need 2 <= --from <= --to, got "
                         f"[{args.lo}, {args.hi}]")
    limit = _check_sieve_limit(args.sieve_limit, args.hi)
    rep = dusart_scan(PrimeTable(limit), args.lo, args.hi, c=args.constant)
    _write(render_dusart(rep, args.format), args)
    return 3 if rep.lower_violations or rep.upper_violations else 0


def _cmd_thresholds(args) -> int:
    rows = []
    for name in ROOT_FUNCTION_IDS:
        lo, hi = THRESHOLD_BRACKETS[name]
        try:
            root, note = find_root(name, lo, hi, tol=args.tol,
                                   c=args.constant), ""
        except BracketError as exc:
            root, note = None, str(exc)
        rows.append({"function": name, "bracket": [lo, hi], "root": root,
                     "note": note, "reference": REFERENCE_ROOTS[name]})
    _write(render_thresholds(rows, args.format), args)
    return 0


_COMMANDS = {
    "decompose": _cmd_decompose,
    "interactions": _cmd_interactions,
    "types": _cmd_types,
    "census": lambda a: _cmd_range_scan(a, "census"),
    "goldbach": lambda a: _cmd_range_scan(a, "goldbach"),
    "bounds": _cmd_bounds,
    "dusart": _cmd_dusart,
    "thresholds": _cmd_thresholds,
    "theorem": lambda a: _cmd_range_scan(a, "theorem"),
}


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except ValueError as exc:
        sys.stderr.write(f"evenquad: config error: {exc}\n")
        return 1
    except (CoverageError, ResourceBudgetError) as exc:
        sys.stderr.write(f"evenquad: {exc}\n")
        return 2
    except OSError as exc:
        sys.stderr.write(f"evenquad: i/o error: {exc}\n")
        return 2


def entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entry()
