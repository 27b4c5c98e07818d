"""Command-line front end.

Subcommands: delta, moments, scan, normal, waring, verify.  Output is CSV
(dot-decimal, headers always, reals at 15 significant digits) or JSON, to
stdout or --out.  Flags can be read from a file with @path.

Exit codes: 0 success, 1 verify failure, 2 usage or configuration,
3 capacity, 4 I/O.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys

from . import aggregates, waring, weights
from .arith import classical, divisors, factorize
from .delta import delta_max, moment, moment_oracle, support_measure, close_tuple_count
from .errors import CapacityError, ConfigurationError, WeightClassError
from .verify import SUITES

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_USAGE = 2
EXIT_CAPACITY = 3
EXIT_IO = 4


def _fmt(v) -> str:
    if isinstance(v, bool):
        return "1" if v else "0"
    if isinstance(v, float):
        return f"{v:.15g}"
    return str(v)


def _write_text(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(out, "w") as fh:
            fh.write(text)
            if not text.endswith("\n"):
                fh.write("\n")


def _csv_text(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def _emit_rows(args, header: list[str], rows: list[list], keys: list[str] | None = None):
    if args.format == "json":
        keys = keys or header
        payload = [dict(zip(keys, row)) for row in rows]
        _write_text(json.dumps(payload, sort_keys=True), args.out)
    else:
        _write_text(_csv_text(header, rows), args.out)


def _parse_int_list(text: str) -> list[int]:
    return [int(t) for t in text.split(",") if t.strip()]


def _parse_float_list(text: str) -> list[float]:
    return [float(t) for t in text.split(",") if t.strip()]


def _parse_range(spec: str) -> list[int]:
    if ".." in spec:
        a, b = spec.split("..", 1)
        lo, hi = int(a), int(b)
        if lo < 1 or hi < lo:
            raise ConfigurationError(f"bad range {spec!r}")
        return list(range(lo, hi + 1))
    n = int(spec)
    if n < 1:
        raise ConfigurationError("n must be positive")
    return [n]


def _weight_from_args(args) -> weights.WeightSpec:
    name = args.weight.replace("-", "_")
    return weights.by_name(name, getattr(args, "y", None))


def cmd_delta(args) -> int:
    rows = []
    for n in _parse_range(args.spec):
        f = factorize(n)
        rows.append([n, delta_max(divisors(f)), f.tau, f.omega])
    _emit_rows(args, ["n", "delta", "tau", "omega"], rows)
    return EXIT_OK


def cmd_moments(args) -> int:
    if args.qmax < 1:
        raise ConfigurationError("qmax must be >= 1")
    f = factorize(args.n)
    divs = divisors(f)
    support = support_measure(divs)
    rows = []
    for q in range(1, args.qmax + 1):
        m = moment(divs, q).value
        try:
            oracle = _fmt(moment_oracle(divs, q, cap=args.oracle_cap).value)
        except CapacityError:
            oracle = ""
        try:
            close = close_tuple_count(divs, q, cap=args.oracle_cap)
        except CapacityError:
            close = ""
        rows.append([q, m, oracle, close, support])
    _emit_rows(args, ["q", "moment", "moment_oracle", "close_tuples", "support"], rows)
    return EXIT_OK


def _curve_csv(curve: list[dict]) -> str:
    keys = sorted({k for row in curve for k in row}, key=lambda k: (k != "x", k != "S", k))
    return _csv_text(keys, [[row.get(k, "") for k in keys] for row in curve])


def cmd_scan(args) -> int:
    config = aggregates.ScanConfig(
        x=args.x,
        weight=_weight_from_args(args),
        segment_size=args.segment_size,
        a=args.a,
        epsilon=args.epsilon,
        xi=args.xi,
    )
    checkpoints = _parse_int_list(args.checkpoints) if args.checkpoints else []
    if checkpoints:
        report = aggregates.bound_ratio_curve(config, checkpoints, workers=args.workers)
    else:
        report = aggregates.scan(config, workers=args.workers)
    if args.format == "json":
        _write_text(report.to_json(), args.out)
    else:
        rows = [[v, c] for v, c in sorted(report.delta_histogram.items())]
        _write_text(_csv_text(["delta", "count"], rows), args.out)
    if args.curve_out:
        if not report.curve:
            raise ConfigurationError("--curve-out needs --checkpoints")
        _write_text(_curve_csv(report.curve), args.curve_out)
    return EXIT_OK


def cmd_normal(args) -> int:
    config = aggregates.ScanConfig(x=args.x, weight=weights.UNIT, segment_size=args.segment_size)
    gammas = _parse_float_list(args.gammas) if args.gammas else aggregates.DEFAULT_GAMMAS
    rows = aggregates.normal_order_report(config, gammas, workers=args.workers)
    _emit_rows(
        args,
        ["gamma", "exceedances", "sample_size", "fraction"],
        [[r.gamma, r.exceedances, r.sample_size, r.fraction] for r in rows],
    )
    return EXIT_OK


def cmd_waring(args) -> int:
    form = waring.WaringForm(
        coeffs=tuple(_parse_int_list(args.c)),
        exponents=tuple(_parse_int_list(args.ell)),
        allow_zero=not args.no_zero,
    )
    form.validate(strict=args.strict)
    table = waring.enumerate_representations(form, args.x, cap=args.cap)
    pairs = waring.count_equal_pairs(table)
    summary = {
        "coeffs": list(form.coeffs),
        "exponents": list(form.exponents),
        "allow_zero": form.allow_zero,
        "x": args.x,
        "equal_pairs_ordered": pairs,
        "equal_pairs_unordered": pairs // 2,
        "representable": waring.count_representable(table),
        "total_tuples": table.total_tuples,
        "distinct_values": len(table.records),
        "a": args.a,
    }
    if args.checkpoints:
        rows = waring.bound_curve(form, _parse_int_list(args.checkpoints), a=args.a, cap=args.cap)
        summary["curve"] = [
            {
                "x": r.x,
                "pairs": r.pairs,
                "representable": r.representable,
                "pair_ratio": r.pair_ratio,
                "representable_ratio": r.representable_ratio,
            }
            for r in rows
        ]
        if args.curve_out:
            _write_text(_curve_csv(summary["curve"]), args.curve_out)
    _write_text(json.dumps(summary, sort_keys=True), args.out)
    if args.hist_out:
        rows = [[v, rec.total] for v, rec in sorted(table.records.items())]
        _write_text(_csv_text(["value", "count"], rows), args.hist_out)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.suite not in SUITES:
        known = ", ".join(sorted(SUITES))
        raise ConfigurationError(f"unknown suite {args.suite!r}; known: {known}")
    fn, params = SUITES[args.suite]
    kwargs = {}
    for name, (flag, default) in params.items():
        v = getattr(args, flag.lstrip("-").replace("-", "_"), None)
        kwargs[name] = default if v is None else v
    failures = fn(**kwargs)
    if failures:
        print(f"FAIL {args.suite}: {len(failures)} violation(s)")
        _write_text(json.dumps(failures[:1000], sort_keys=True), args.out)
        return EXIT_VERIFY
    print(f"PASS {args.suite} ({', '.join(f'{k}={v}' for k, v in kwargs.items())})")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="divconc",
        description="Divisor concentration toolkit: peak window counts, moments, "
        "weighted scans, and representation counting.",
        fromfile_prefix_chars="@",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, default_format="csv"):
        p.add_argument("--format", choices=("csv", "json"), default=default_format)
        p.add_argument("--out", default=None, help="output path (default stdout)")
        p.add_argument("--seed", type=int, default=1, help="seed for sampled reports")

    p = sub.add_parser("delta", help="peak window count per n")
    p.add_argument("spec", help="single n or inclusive range a..b")
    add_common(p)
    p.set_defaults(fn=cmd_delta)

    p = sub.add_parser("moments", help="profile moments of one n")
    p.add_argument("n", type=int)
    p.add_argument("qmax", type=int)
    p.add_argument("--oracle-cap", type=int, default=10**8)
    add_common(p)
    p.set_defaults(fn=cmd_moments)

    p = sub.add_parser("scan", help="weighted scan of n <= x")
    p.add_argument("x", type=int)
    p.add_argument("--weight", choices=("unit", "omega-power", "squarefree-unit"),
                   default="unit")
    p.add_argument("--y", type=float, default=None, help="parameter for omega-power")
    p.add_argument("--segment-size", type=int, default=100_000)
    p.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    p.add_argument("--checkpoints", default=None, help="comma-separated x values")
    p.add_argument("--curve-out", default=None, help="write checkpoint curve CSV here")
    p.add_argument("--a", type=float, default=aggregates.DEFAULT_A)
    p.add_argument("--epsilon", type=float, default=0.1)
    p.add_argument("--xi", type=int, default=None)
    add_common(p, default_format="json")
    p.set_defaults(fn=cmd_scan)

    p = sub.add_parser("normal", help="exceedance fractions of (log log n)^gamma")
    p.add_argument("x", type=int)
    p.add_argument("--gammas", default=None, help="comma-separated exponents")
    p.add_argument("--segment-size", type=int, default=100_000)
    p.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    add_common(p)
    p.set_defaults(fn=cmd_normal)

    p = sub.add_parser("waring", help="representation counts for a diagonal form")
    p.add_argument("--c", required=True, help="comma-separated coefficients c0,..,ck")
    p.add_argument("--ell", required=True, help="comma-separated exponents l0,..,lk")
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--strict", action="store_true",
                   help="require sum of 1/l_j (j >= 1) to equal 1/2 exactly")
    p.add_argument("--no-zero", action="store_true", help="coordinates start at 1")
    p.add_argument("--checkpoints", default=None)
    p.add_argument("--curve-out", default=None)
    p.add_argument("--hist-out", default=None, help="write value,count CSV here")
    p.add_argument("--a", type=float, default=aggregates.DEFAULT_A)
    p.add_argument("--cap", type=int, default=waring.TUPLE_CAP)
    add_common(p, default_format="json")
    p.set_defaults(fn=cmd_waring)

    p = sub.add_parser("verify", help="run an exhaustive invariant sweep")
    p.add_argument("suite", help="one of: " + ", ".join(sorted(SUITES)))
    p.add_argument("--max", type=int, default=None, dest="max")
    p.add_argument("--x", type=int, default=None)
    p.add_argument("--samples", type=int, default=None)
    add_common(p)
    p.set_defaults(fn=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (ConfigurationError, WeightClassError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapacityError as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
