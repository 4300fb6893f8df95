"""``lexseg analyze|resolve|sweep|enumerate``.

JSON goes to stdout, diagnostics to stderr.  Exit codes: 0 ok, 2 usage,
3 verification mismatch, 4 unsupported construction.
"""
from __future__ import annotations

import argparse
import platform
import sys
import time
from typing import Optional, Sequence

from . import __version__, oracle
from .analysis import analyze
from .monomial import AmbientContext, ContextError
from .notation import (
    ParseError,
    format_monomial,
    parse_monomial,
    parse_monomial_list,
    resolution_to_dict,
    to_json,
)
from .quotients import CONSTRUCTIONS, construct_order
from .resolution import (
    UnsupportedConstruction,
    build_resolution,
    hilbert_numerator,
    resolution_from_generators,
    verify_resolution,
)
from .segment import SegmentError, enumerate_lexsegment
from .sweep import default_workers, run_sweep

EXIT_OK, EXIT_USAGE, EXIT_MISMATCH, EXIT_UNSUPPORTED = 0, 2, 3, 4


class UsageError(Exception):
    pass


def _ends(args) -> tuple[AmbientContext, object, object]:
    try:
        ctx = AmbientContext(args.n, args.d)
        u, v = parse_monomial(args.u, args.n), parse_monomial(args.v, args.n)
        ctx.check(u, v)
        enumerate_lexsegment(ctx, u, v)
    except (ParseError, ContextError, SegmentError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    return ctx, u, v


def _emit(payload: dict, args, started: float) -> None:
    if getattr(args, "meta", False):
        payload = dict(payload)
        payload["meta"] = {
            "version": __version__,
            "python": platform.python_version(),
            "seconds": round(time.perf_counter() - started, 3),
        }
    sys.stdout.write(to_json(payload))


def cmd_analyze(args, started: float) -> int:
    ctx, u, v = _ends(args)
    report = analyze(
        ctx,
        u,
        v,
        check_oracle=args.check_oracle,
        with_resolution=args.resolution,
        max_extra_degrees=args.max_extra_degrees,
        construction=args.order,
    )
    _emit(report.to_dict(), args, started)
    if not report.oracle_ok:
        bad = sorted(k for k, ok in report.oracle_agreement.items() if not ok)
        print(f"oracle disagreement: {', '.join(bad)}", file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


def cmd_resolve(args, started: float) -> int:
    if args.gens is not None:
        if args.n is None:
            raise UsageError("--gens needs --n")
        try:
            gens = parse_monomial_list(args.gens, args.n)
        except ParseError as exc:
            raise UsageError(str(exc)) from None
        if len(set(gens)) != len(gens):
            raise UsageError("--gens has duplicates")
        res = resolution_from_generators(gens)
    else:
        for flag in ("n", "d", "u", "v"):
            if getattr(args, flag) is None:
                raise UsageError(f"resolve needs --{flag} (or --n with --gens)")
        ctx, u, v = _ends(args)
        gens = enumerate_lexsegment(ctx, u, v)
        res = build_resolution(ctx, u, v, args.max_extra_degrees)
    payload = resolution_to_dict(res)
    payload["hilbert_numerator"] = list(hilbert_numerator(res))
    code = EXIT_OK
    if args.verify:
        rep = verify_resolution(res, gens, args.max_check_degree)
        kpoly = oracle.k_polynomial_by_counting(gens, res.n)
        payload["verification"] = {
            "complex": rep.passed("complex"),
            "minimal": rep.passed("minimal"),
            "homogeneous": rep.passed("homogeneous"),
            "exact": rep.passed("exact") and rep.passed("cokernel"),
            "max_check_degree": rep.max_check_degree,
            "strands": rep.strands_checked,
            "hilbert_numerator_matches": tuple(payload["hilbert_numerator"]) == kpoly,
            "failures": [
                {"check": f.check, "position": f.position, "degree": f.degree, "detail": f.detail}
                for f in rep.failures
            ],
        }
        if not rep.ok or not payload["verification"]["hilbert_numerator_matches"]:
            code = EXIT_MISMATCH
    _emit(payload, args, started)
    return code


def cmd_sweep(args, started: float) -> int:
    if args.max_n < 1 or args.max_d < 2:
        raise UsageError("--max-n must be at least 1 and --max-d at least 2")
    workers = args.workers if args.workers is not None else default_workers()
    summary = run_sweep(args.max_n, args.max_d, args.min_n, args.min_d, workers)
    _emit(summary.to_dict(), args, started)
    worst = summary.minimal_failure()
    if worst is not None:
        print(f"mismatch; reproduce with: lexseg analyze {worst.flags} --check-oracle", file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


def cmd_enumerate(args, started: float) -> int:
    ctx, u, v = _ends(args)
    if args.order == "lex":
        gens, kind = enumerate_lexsegment(ctx, u, v), "lex"
    else:
        gens, kind, _ = construct_order(ctx, u, v, args.max_extra_degrees, args.order)
    _emit({"order": kind, "count": len(gens), "gens": [format_monomial(w) for w in gens]}, args, started)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lexseg", description="Lexsegment ideal analysis.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def ends(sp, required=True):
        sp.add_argument("--n", type=int, required=required, help="number of variables")
        sp.add_argument("--d", type=int, required=required, help="generation degree")
        sp.add_argument("--u", required=required, help="upper end, e.g. x1*x3^2 or [1,0,2,0]")
        sp.add_argument("--v", required=required, help="lower end")
        sp.add_argument("--max-extra-degrees", type=int, default=2, help="shadow depth for completeness")
        sp.add_argument("--meta", action="store_true", help="append run metadata")

    a = sub.add_parser("analyze", help="classify one lexsegment ideal")
    ends(a)
    a.add_argument("--check-oracle", action="store_true", help="compare with brute force")
    a.add_argument("--resolution", action="store_true", help="include the explicit resolution")
    a.add_argument("--order", choices=CONSTRUCTIONS, default="auto")

    r = sub.add_parser("resolve", help="explicit minimal resolution")
    ends(r, required=False)
    r.add_argument("--gens", help="comma-separated generators in order (needs --n)")
    r.add_argument("--verify", action="store_true", help="certify the complex")
    r.add_argument("--max-check-degree", type=int, default=None)

    s = sub.add_parser("sweep", help="exhaustive oracle cross-check")
    s.add_argument("--max-n", type=int, required=True)
    s.add_argument("--max-d", type=int, required=True)
    s.add_argument("--min-n", type=int, default=1)
    s.add_argument("--min-d", type=int, default=2)
    s.add_argument("--workers", type=int, default=None, help="default: $LEXSEG_WORKERS or 1")
    s.add_argument("--seed", type=int, default=None, help="ignored; the sweep is exhaustive")
    s.add_argument("--meta", action="store_true")

    e = sub.add_parser("enumerate", help="list the generators")
    ends(e)
    e.add_argument("--order", choices=("lex",) + CONSTRUCTIONS, default="lex")
    return p


COMMANDS = {
    "analyze": cmd_analyze,
    "resolve": cmd_resolve,
    "sweep": cmd_sweep,
    "enumerate": cmd_enumerate,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    started = time.perf_counter()
    try:
        return COMMANDS[args.command](args, started)
    except UsageError as exc:
        print(f"lexseg: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except UnsupportedConstruction as exc:
        print(f"lexseg: unsupported construction: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED


if __name__ == "__main__":
    sys.exit(main())
