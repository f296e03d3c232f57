"""Command-line front door.

Subcommands: ``construct``, ``verify``, ``neighborhood``, ``bench-mom``,
``distinguish``, ``scan``, ``gen``.  Distributions are read and written as
``{"atoms": [{"x": ..., "w": ...}, ...]}`` JSON; reports are JSON (or CSV for
the tabular commands).  Output files are byte-stable: keys are sorted and
floats use their shortest round-trip form.

Exit codes: 0 pass, 1 a checked condition failed, 2 usage or parse error,
3 degenerate or regime-refused input without ``--override-regime``.

The default seed is 0, overridable through the ``ADVMEAN_SEED`` environment
variable or ``--seed``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from pathlib import Path

from . import corpus
from .adversary import construct_q, regime_flags
from .distribution import distribution_to_dict, load_distribution
from .errors import DegenerateError, DomainError, InsufficientSamplesError
from .harness import (
    TrialConfig,
    VerificationReport,
    asymptotic_scan,
    bench_mom,
    lr_test_error,
    pair_conditions,
    verify_neighborhood,
    verify_theorem,
)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_REFUSED = 3


def _json_bytes(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _emit(text: str, out_path: str | None) -> None:
    if out_path:
        Path(out_path).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _csv_text(rows: list[dict], columns: list[str]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([row[c] for c in columns])
    return buf.getvalue()


class _CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _load(path: str):
    try:
        return load_distribution(path)
    except json.JSONDecodeError as exc:
        raise _CliError(
            EXIT_USAGE,
            f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}",
        ) from exc
    except (OSError, DomainError) as exc:
        raise _CliError(EXIT_USAGE, f"{path}: {exc}") from exc


def _check_regime(n: int, delta: float, override: bool) -> None:
    flags = regime_flags(n, delta)
    if not flags.ok and not override:
        raise _CliError(
            EXIT_REFUSED,
            f"(n={n}, delta={delta}) is outside the asserted regime "
            "(delta <= 0.1, log(1/delta)/n <= 0.01); rerun with "
            "--override-regime to proceed without assertions",
        )
    if not flags.ok:
        print(
            "warning: outside the asserted regime; conditions are reported "
            "but not enforced",
            file=sys.stderr,
        )


def _default_seed() -> int:
    return int(os.environ.get("ADVMEAN_SEED", "0"))


def _report_exit(report: VerificationReport, override: bool) -> int:
    if report.degenerate:
        print(f"refused: degenerate input ({report.meta.get('reason')})", file=sys.stderr)
        return EXIT_REFUSED
    if not report.regime.ok and override:
        return EXIT_PASS
    return EXIT_PASS if report.passed else EXIT_FAIL


def _cmd_construct(args) -> int:
    p = _load(args.infile)
    _check_regime(args.n, args.delta, args.override_regime)
    try:
        res = construct_q(p, args.n, args.delta)
    except DegenerateError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    payload = distribution_to_dict(res.q)
    payload["meta"] = res.meta_dict()
    _emit(_json_bytes(payload), args.out)
    return EXIT_PASS


def _cmd_verify(args) -> int:
    p = _load(args.infile)
    _check_regime(args.n, args.delta, args.override_regime)
    if args.pair:
        q = _load(args.pair)
        conditions = pair_conditions(p, q, args.n, args.delta)
        report = VerificationReport(
            claim="indistinguishable_pair",
            conditions=conditions,
            regime=regime_flags(args.n, args.delta),
            meta={"mode": "pair", "pair_file": str(args.pair)},
        )
    else:
        report = verify_theorem(
            p, args.n, args.delta, override_regime=args.override_regime
        )
    _emit(_json_bytes(report.to_dict()), args.out)
    return _report_exit(report, args.override_regime)


def _cmd_neighborhood(args) -> int:
    p = _load(args.infile)
    _check_regime(args.n, args.delta, args.override_regime)
    report = verify_neighborhood(
        p, args.n, args.delta, override_regime=args.override_regime
    )
    _emit(_json_bytes(report.to_dict()), args.out)
    return _report_exit(report, args.override_regime)


def _bench_csv(rows: list[dict]) -> str:
    return _csv_text(
        rows,
        [
            "distribution",
            "n",
            "delta",
            "trials",
            "seed",
            "failure_rate",
            "bound",
            "ci_halfwidth",
            "pass",
        ],
    )


def _cmd_bench_mom(args) -> int:
    p = _load(args.infile)
    cfg = TrialConfig(n=args.n, delta=args.delta, trials=args.trials, seed=args.seed)
    try:
        report = bench_mom(p, cfg, workers=args.workers)
    except InsufficientSamplesError as exc:
        raise _CliError(EXIT_USAGE, str(exc)) from exc
    report["distribution"] = Path(args.infile).stem
    if args.format == "csv":
        _emit(_bench_csv([report]), args.out)
    else:
        _emit(_json_bytes(report), args.out)
    return EXIT_PASS if report["pass"] else EXIT_FAIL


def _cmd_distinguish(args) -> int:
    p = _load(args.infile)
    q = _load(args.pair)
    cfg = TrialConfig(n=args.n, delta=args.delta, trials=args.trials, seed=args.seed)
    report = lr_test_error(p, q, cfg, workers=args.workers)
    report["distribution"] = Path(args.infile).stem
    if args.format == "csv":
        _emit(
            _csv_text(
                [report],
                [
                    "distribution",
                    "n",
                    "delta",
                    "trials",
                    "seed",
                    "empirical_error",
                    "ci_halfwidth",
                    "pass",
                ],
            ),
            args.out,
        )
    else:
        _emit(_json_bytes(report), args.out)
    return EXIT_PASS if report["pass"] else EXIT_FAIL


def _cmd_scan(args) -> int:
    p = _load(args.infile)
    try:
        n_list = [int(tok) for tok in args.n_list.split(",") if tok]
    except ValueError as exc:
        raise _CliError(EXIT_USAGE, f"bad --n-list: {exc}") from exc
    if not n_list:
        raise _CliError(EXIT_USAGE, "--n-list is empty")
    rows = asymptotic_scan(p, args.delta, n_list)
    label = Path(args.infile).stem
    for row in rows:
        row["distribution"] = label
    if args.format == "json":
        _emit(_json_bytes(rows), args.out)
    else:
        _emit(
            _csv_text(rows, ["distribution", "n", "delta", "epsilon", "normalized"]),
            args.out,
        )
    return EXIT_PASS


def _cmd_gen(args) -> int:
    try:
        d = corpus.build(args.name)
    except DomainError as exc:
        raise _CliError(EXIT_USAGE, str(exc)) from exc
    _emit(_json_bytes(distribution_to_dict(d)), args.out)
    return EXIT_PASS


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="advmean",
        description=(
            "Construct indistinguishable partner distributions, verify their "
            "guarantees, and benchmark the median-of-means estimator."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(sp, trials=False, pair=False, fmt=None):
        sp.add_argument("--in", dest="infile", required=True, help="distribution JSON")
        sp.add_argument("--n", type=int, required=True, help="sample budget")
        sp.add_argument("--delta", type=float, required=True, help="failure probability")
        sp.add_argument("--out", default=None, help="output path (default stdout)")
        if pair:
            sp.add_argument("--pair", default=None, help="second distribution JSON")
        if trials:
            sp.add_argument("--trials", type=int, default=20000)
            sp.add_argument("--seed", type=int, default=_default_seed())
            sp.add_argument("--workers", type=int, default=1)
        if fmt:
            sp.add_argument("--format", choices=fmt, default=fmt[0])
        sp.add_argument(
            "--override-regime",
            action="store_true",
            help="run outside the asserted regime with assertions downgraded",
        )

    sp = sub.add_parser("construct", help="write the partner distribution")
    add_common(sp)
    sp.set_defaults(fn=_cmd_construct)

    sp = sub.add_parser("verify", help="check the pair guarantees")
    add_common(sp, pair=True)
    sp.set_defaults(fn=_cmd_verify)

    sp = sub.add_parser("neighborhood", help="check neighborhood membership")
    add_common(sp)
    sp.set_defaults(fn=_cmd_neighborhood)

    sp = sub.add_parser("bench-mom", help="median-of-means failure-rate benchmark")
    add_common(sp, trials=True, fmt=["json", "csv"])
    sp.set_defaults(fn=_cmd_bench_mom)

    sp = sub.add_parser("distinguish", help="likelihood-ratio test simulation")
    add_common(sp, trials=True, pair=True, fmt=["json", "csv"])
    sp.set_defaults(fn=_cmd_distinguish)

    sp = sub.add_parser("scan", help="tabulate the error bound across n")
    sp.add_argument("--in", dest="infile", required=True)
    sp.add_argument("--delta", type=float, required=True)
    sp.add_argument("--n-list", required=True, help="comma-separated sample counts")
    sp.add_argument("--out", default=None)
    sp.add_argument("--format", choices=["csv", "json"], default="csv")
    sp.set_defaults(fn=_cmd_scan)

    sp = sub.add_parser("gen", help="emit a corpus distribution")
    sp.add_argument("--name", required=True, help=", ".join(corpus.names()))
    sp.add_argument("--out", default=None)
    sp.set_defaults(fn=_cmd_gen)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "command", None) == "distinguish" and not args.pair:
        parser.error("distinguish requires --pair")
    try:
        return args.fn(args)
    except _CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
