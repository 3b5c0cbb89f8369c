"""Command-line front end.

Exit codes: 0 success, 1 a verification failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, Sequence

from logconcavity import __version__
from logconcavity.arith import FamilyKind, FamilySpec
from logconcavity.cache import CoefficientCache, cached_table
from logconcavity.logconcave import exceptions, landscape, render_grid
from logconcavity.oracle import MAX_STATS_N, MAX_SUM_N, check_lemma1, check_lemma2, composition_q
from logconcavity.series import CoefficientTable, SeriesKind, q_table
from logconcavity.thresholds import (
    GROWTH_RATES,
    THRESHOLDS,
    GrowthBoundViolation,
    threshold_general,
    verify_growth,
    verify_theorem,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

CHALLENGE1_EXPECTED = frozenset(range(1, 744, 2)) - {717, 723, 729, 735, 741}


def _dump(doc) -> str:
    return json.dumps(doc, indent=1) + "\n"


def _map(fn: Callable, items: Iterable, jobs: int) -> list:
    items = list(items)
    if jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(jobs) as pool:
            return list(pool.map(fn, items))
    return [fn(x) for x in items]


def _table(args, spec: FamilySpec, kind: SeriesKind, N: int) -> CoefficientTable:
    cache_path = getattr(args, "cache", None)
    if not cache_path:
        return cached_table(spec, kind, N)
    try:
        return cached_table(spec, kind, N, CoefficientCache(cache_path))
    except OSError as exc:
        print(f"warning: cache {cache_path} unusable ({exc}); computing without it", file=sys.stderr)
        return cached_table(spec, kind, N)


def cmd_coeffs(args) -> int:
    spec = FamilySpec.of(args.family, args.d)
    table = _table(args, spec, SeriesKind(args.kind), args.n)
    if args.format == "json":
        doc = {
            "family": args.family,
            "kind": args.kind,
            "d_range": [args.d, args.d],
            "n_range": [0, args.n],
            "coeffs": [{"num": str(c.numerator), "den": str(c.denominator)} for c in table.coeffs],
        }
        sys.stdout.write(_dump(doc))
    elif args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["index", "num", "den"])
        for n, c in enumerate(table.coeffs):
            writer.writerow([n, c.numerator, c.denominator])
        sys.stdout.write(buf.getvalue())
    else:
        sys.stdout.write(",".join(str(c) for c in table.coeffs) + "\n")
    return EXIT_OK


def cmd_exceptions(args) -> int:
    spec = FamilySpec.of(args.family, args.d)
    found = exceptions(_table(args, spec, SeriesKind(args.kind), args.max_n + 1), args.max_n).exceptions
    if args.format == "json":
        doc = {
            "family": args.family,
            "kind": args.kind,
            "d_range": [args.d, args.d],
            "n_range": [1, args.max_n],
            "exceptions": list(found),
        }
        sys.stdout.write(_dump(doc))
    else:
        sys.stdout.write(" ".join(map(str, found)) + "\n")
    return EXIT_OK


def cmd_landscape(args) -> int:
    grid = landscape(SeriesKind(args.kind), FamilyKind(args.family), args.max_n, args.max_d, jobs=args.jobs)
    sys.stdout.write(render_grid(grid, args.format))
    return EXIT_OK


def _verify_one(job: tuple[str, int, int]):
    family, n, probes = job
    return verify_theorem(family, n, probes)


def cmd_verify(args) -> int:
    jobs = [(args.family, n, args.probes) for n in range(args.n_from, args.n_to + 1)]
    reports = _map(_verify_one, jobs, args.jobs)
    doc = {
        "family": args.family,
        "kind": "geo",
        "n_range": [args.n_from, args.n_to],
        "d_range": [min(r.probe_degrees[0] for r in reports), max(r.probe_degrees[-1] for r in reports)],
        "note": "D_value is a floating approximation; the true threshold lies within D_error_bound of it",
        "report": [r.to_json() for r in reports],
    }
    sys.stdout.write(_dump(doc))
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def cmd_bounds(args) -> int:
    family = FamilyKind(args.family)
    r = GROWTH_RATES[family]
    q0 = q_table(FamilySpec(family, 0), args.growth_n)
    try:
        bound = verify_growth(q0, r, args.growth_n)
    except GrowthBoundViolation as exc:
        print(f"growth bound violated: {exc}", file=sys.stderr)
        return EXIT_FAIL
    rows = []
    ok = True
    for n in range(args.n_from, args.n_to + 1):
        closed = THRESHOLDS[family](n)
        general = threshold_general(n, r, q0)
        agree = abs(closed.value - general.value) <= 2 * max(closed.error, general.error)
        ok &= bool(agree)
        rows.append({
            "n": n,
            "D_approx": float(closed.value),
            "D_error_bound": float(closed.error),
            "general_D_approx": float(general.value),
            "agree": bool(agree),
            "first_probe_degree": closed.first_degree_above(),
        })
    doc = {
        "family": args.family,
        "kind": "geo",
        "n_range": [args.n_from, args.n_to],
        "growth": {"r": str(bound.r), "verified_up_to": bound.verified_up_to},
        "report": rows,
    }
    sys.stdout.write(_dump(doc))
    return EXIT_OK if ok else EXIT_FAIL


def cmd_oracle(args) -> int:
    if args.check == "lemma1":
        res = check_lemma1(args.n_max)
        doc = {"check": "lemma1", "n_range": [2, args.n_max], "passed": res.passed, "failure": res.failure}
        sys.stdout.write(_dump(doc))
        return EXIT_OK if res.passed else EXIT_FAIL
    failures = []
    for family in (FamilyKind.SIGMA, FamilyKind.PSI):
        for d in range(args.d_max + 1):
            spec = FamilySpec(family, d)
            if args.check == "lemma2":
                q0 = q_table(spec.at_degree(0), args.n_max).integers()
                for n in range(2, args.n_max + 1):
                    res = check_lemma2(spec, n, q0)
                    if not res.passed:
                        failures.append(res.failure)
            else:
                q = q_table(spec, args.n_max).integers()
                for n in range(1, args.n_max + 1):
                    brute = composition_q(spec, n)
                    if brute != q[n]:
                        failures.append(f"{spec.label} n={n}: series {q[n]} != compositions {brute}")
    doc = {
        "check": args.check,
        "n_range": [1 if args.check == "composition" else 2, args.n_max],
        "d_range": [0, args.d_max],
        "passed": not failures,
        "failures": failures,
    }
    sys.stdout.write(_dump(doc))
    return EXIT_FAIL if failures else EXIT_OK


def _odd_misses(job: tuple[int, int]) -> list[int]:
    d, max_n = job
    found = set(exceptions(q_table(FamilySpec.sigma(d), max_n + 1), max_n).exceptions)
    return [n for n in range(1, max_n + 1, 2) if n not in found]


def cmd_challenge(args) -> int:
    N = args.max_n
    if args.id == 1:
        table = _table(args, FamilySpec.sigma(0), SeriesKind.EXPONENTIAL, N + 1)
        found = set(exceptions(table, N).exceptions)
        expected = {n for n in CHALLENGE1_EXPECTED if n <= N}
        doc = {
            "challenge": 1,
            "family": "sigma", "kind": "exp", "d_range": [0, 0], "n_range": [1, N],
            "exception_count": len(found),
            "largest_exception": max(found) if found else None,
            "missing": sorted(expected - found),
            "unexpected": sorted(found - expected),
        }
        passed = not doc["missing"] and not doc["unexpected"]
    elif args.id == 2:
        sets = {}
        for d in (0, 1, 2):
            table = _table(args, FamilySpec.psi(d), SeriesKind.GEOMETRIC, N + 1)
            sets[d] = exceptions(table, N).exceptions
        doc = {
            "challenge": 2,
            "family": "psi", "kind": "geo", "d_range": [0, 2], "n_range": [1, N],
            "psi0_exceptions": list(sets[0]),
            "psi1_exceptions": list(sets[1]),
            "psi2_exceptions": list(sets[2]),
            "psi2_non_exception_count": N - len(sets[2]),
        }
        passed = list(sets[0]) == [1] and list(sets[1]) == [1]
    else:
        q5 = q_table(FamilySpec.sigma(5), 11).integers()
        delta = q5[10] ** 2 - q5[9] * q5[11]
        misses = _map(_odd_misses, [(d, N) for d in range(5)], args.jobs)
        doc = {
            "challenge": 3,
            "family": "sigma", "kind": "geo", "d_range": [0, 5], "n_range": [1, N],
            "sigma5_delta_at_10": str(delta),
            "sigma5_exception_at_10": delta < 0,
            "odd_non_exceptions": {str(d): m for d, m in enumerate(misses)},
        }
        passed = delta < 0 and not any(misses)
    doc["passed"] = passed
    sys.stdout.write(_dump(doc))
    return EXIT_OK if passed else EXIT_FAIL


def _nonneg(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {value}")
    return value


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="logconcavity", description=__doc__.splitlines()[0])
    parser.add_argument("-q", "--quiet", action="store_true", help="suppress the version banner on stderr")
    sub = parser.add_subparsers(dest="command", required=True)
    families = ["sigma", "psi"]

    def common(p, kind=True, cache=True):
        p.add_argument("--family", choices=families, required=True)
        if kind:
            p.add_argument("--kind", choices=["exp", "geo"], required=True)
        if cache:
            p.add_argument("--cache", metavar="PATH", help="coefficient cache file")

    p = sub.add_parser("coeffs", help="print coefficients a_0..a_n")
    common(p)
    p.add_argument("--d", type=_nonneg, required=True)
    p.add_argument("--n", type=_nonneg, required=True)
    p.add_argument("--format", choices=["text", "json", "csv"], default="text")
    p.set_defaults(func=cmd_coeffs)

    p = sub.add_parser("exceptions", help="list log-concavity exceptions up to max-n")
    common(p)
    p.add_argument("--d", type=_nonneg, required=True)
    p.add_argument("--max-n", type=_positive, required=True)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_exceptions)

    p = sub.add_parser("landscape", help="render the exception grid over n and d")
    common(p, cache=False)
    p.add_argument("--max-n", type=_positive, default=14)
    p.add_argument("--max-d", type=_nonneg, default=17)
    p.add_argument("--format", choices=["ascii", "json", "csv"], default="ascii")
    p.add_argument("--jobs", type=_positive, default=1)
    p.set_defaults(func=cmd_landscape)

    p = sub.add_parser("verify", help="check the mod-3 sign pattern above the degree threshold")
    common(p, kind=False, cache=False)
    p.add_argument("--n-from", type=int, required=True)
    p.add_argument("--n-to", type=int, required=True)
    p.add_argument("--probes", type=_positive, default=3)
    p.add_argument("--jobs", type=_positive, default=1)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bounds", help="growth bound and threshold table")
    common(p, kind=False, cache=False)
    p.add_argument("--n-from", type=int, default=3)
    p.add_argument("--n-to", type=int, default=50)
    p.add_argument("--growth-n", type=_positive, default=200)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("oracle", help="brute-force checks over compositions")
    p.add_argument("--check", choices=["lemma1", "lemma2", "composition"], required=True)
    p.add_argument("--n-max", type=int, default=None)
    p.add_argument("--d-max", type=_nonneg, default=4)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("challenge", help="exception-set checks: 1 = p^sigma_0, 2 = q^psi_0..2, 3 = q^sigma_0..5")
    p.add_argument("--id", type=int, choices=[1, 2, 3], required=True)
    p.add_argument("--max-n", type=_positive, default=1000)
    p.add_argument("--cache", metavar="PATH", help="coefficient cache file")
    p.add_argument("--jobs", type=_positive, default=1)
    p.set_defaults(func=cmd_challenge)
    return parser


def _validate(parser: argparse.ArgumentParser, args) -> None:
    if args.command in ("verify", "bounds"):
        if args.n_from < 3:
            parser.error("--n-from must be at least 3")
        if args.n_to < args.n_from:
            parser.error("--n-to must be >= --n-from")
        if args.command == "bounds" and args.growth_n < args.n_to + 1:
            parser.error("--growth-n must be at least --n-to + 1")
    if args.command == "oracle":
        defaults = {"lemma1": 28, "lemma2": 30, "composition": 14}
        if args.n_max is None:
            args.n_max = defaults[args.check]
        limit = MAX_STATS_N if args.check == "lemma1" else MAX_SUM_N if args.check == "composition" else None
        low = 4 if args.check == "lemma1" else 2
        if args.n_max < low or (limit is not None and args.n_max > limit):
            parser.error(f"--n-max out of range for {args.check}")


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _validate(parser, args)
    if not args.quiet:
        print(f"logconcavity {__version__}", file=sys.stderr)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
