"""Command-line interface.

    masscap run <scenario.toml> [--format json|csv|text] [--out PATH] [--jobs N]
    masscap oracle schwarzschild --n N --m M --r0 R [--format json|text]

Exit status: 0 when all checks pass (hypothesis violations included),
1 when an invariant assertion fails, 2 on parse or numerics errors.
When --out is omitted and MASSCAP_OUT_DIR is set, reports land in that
directory as <scenario>.<format>; otherwise they go to stdout.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import asdict
from pathlib import Path

from .errors import CheckFailure, NumericsError, ScenarioParseError
from .scenario import Report, emit, run_scenario, to_canonical_json
from .schwarzschild import SchwarzschildData, schwarzschild_report

EXIT_OK = 0
EXIT_CHECK_FAILURE = 1
EXIT_ERROR = 2


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="masscap",
        description="Mass-capacity inequality verification lab",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="execute a scenario file")
    run.add_argument("scenario", type=Path, help="path to a scenario TOML file")
    run.add_argument("--format", choices=("json", "csv", "text"), default="json")
    run.add_argument("--out", type=Path, default=None, help="output path")
    run.add_argument("--jobs", type=int, default=1, help="concurrent sweep points")

    oracle = sub.add_parser("oracle", help="print closed-form oracle values")
    oracle_sub = oracle.add_subparsers(dest="oracle_kind", required=True)
    schw = oracle_sub.add_parser("schwarzschild", help="Schwarzschild boundary report")
    schw.add_argument("--n", type=int, required=True, help="dimension (>= 3)")
    schw.add_argument("--m", type=float, required=True, help="mass parameter")
    schw.add_argument("--r0", type=float, required=True, help="boundary coordinate radius")
    schw.add_argument("--format", choices=("json", "text"), default="text")
    return parser


def _resolve_out(out: Path | None, default_name: str) -> Path | None:
    if out is not None:
        env_dir = os.environ.get("MASSCAP_OUT_DIR")
        if env_dir and not out.is_absolute():
            return Path(env_dir) / out
        return out
    env_dir = os.environ.get("MASSCAP_OUT_DIR")
    if env_dir:
        return Path(env_dir) / default_name
    return None


def _write(payload: bytes, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(payload.decode())
    else:
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_bytes(payload)


def _cmd_run(args) -> int:
    report: Report | None = None
    status = EXIT_OK
    try:
        report = run_scenario(args.scenario, jobs=args.jobs)
    except CheckFailure as exc:
        report = exc.report
        status = EXIT_CHECK_FAILURE
        print(f"check failure: {exc}", file=sys.stderr)
    except ScenarioParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except NumericsError as exc:
        print(f"numerics error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR

    if report is not None:
        out = _resolve_out(args.out, f"{report.scenario}.{args.format}")
        _write(emit(report, args.format), out)
    return status


def _cmd_oracle_schwarzschild(args) -> int:
    try:
        data = SchwarzschildData(n=args.n, m=args.m, r0=args.r0)
        report = schwarzschild_report(data)
    except Exception as exc:  # noqa: BLE001 - CLI boundary
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    if args.format == "json":
        sys.stdout.write(to_canonical_json(asdict(report)))
    else:
        for key, value in asdict(report).items():
            print(f"{key:14s} = {value!r}")
    return EXIT_OK


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    if args.command == "run":
        return _cmd_run(args)
    if args.command == "oracle":
        return _cmd_oracle_schwarzschild(args)
    return EXIT_ERROR


def entrypoint() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    raise SystemExit(main())
