"""Command line entry point: ``presslab run|list|oracle``."""
from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from .experiments import CSV_HEADER, EXPERIMENTS, ConfigError, format_value, run_experiment
from .oracle import OracleError, transfer_pressure
from .potential import potential_from_json
from .symbolic import space_from_json

EXIT_OK, EXIT_FAILED, EXIT_CONFIG, EXIT_ORACLE = 0, 1, 2, 3


def _load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def write_outputs(out_dir: Path, report: dict, rows: list):
    out_dir.mkdir(parents=True, exist_ok=True)
    with open(out_dir / "report.json", "w") as fh:
        json.dump(report, fh, indent=2, sort_keys=True, default=str)
        fh.write("\n")
    with open(out_dir / "samples.csv", "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for row in rows:
            writer.writerow([format_value(v) for v in row])


def cmd_run(args) -> int:
    cfg = _load_json(args.config)
    outcome = run_experiment(cfg)
    report = outcome.report(cfg)
    write_outputs(Path(args.out), report, outcome.rows)
    failed = [c["name"] for c in outcome.exact + outcome.extrapolated if not c["passed"]]
    status = "PASS" if outcome.passed else "FAIL"
    print(f"{outcome.experiment}: {status} ({len(outcome.exact)} exact, "
          f"{len(outcome.extrapolated)} extrapolated checks) -> {args.out}")
    for name in failed[:20]:
        print(f"  failed: {name}")
    return EXIT_OK if outcome.passed else EXIT_FAILED


def cmd_list(args) -> int:
    for name in sorted(EXPERIMENTS):
        print(f"{name:22s} {EXPERIMENTS[name][1]}")
    return EXIT_OK


def cmd_oracle(args) -> int:
    try:
        space = space_from_json(_load_json(args.space))
        f = potential_from_json(space, _load_json(args.potential))
    except ConfigError:
        raise
    except (ValueError, KeyError, TypeError, StopIteration) as exc:
        raise ConfigError(str(exc)) from None
    print("%.12g" % transfer_pressure(space, f))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="presslab", description="Pressure of subshifts of finite type.")
    sub = parser.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", help="run an experiment config")
    run.add_argument("config")
    run.add_argument("--out", default="presslab-out", help="output directory (default: presslab-out)")
    run.set_defaults(func=cmd_run)
    lst = sub.add_parser("list", help="list built-in experiments")
    lst.set_defaults(func=cmd_list)
    orc = sub.add_parser("oracle", help="print the transfer-matrix pressure")
    orc.add_argument("space")
    orc.add_argument("potential")
    orc.set_defaults(func=cmd_oracle)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except OracleError as exc:
        print(f"presslab: oracle refused: {exc}", file=sys.stderr)
        return EXIT_ORACLE
    except ConfigError as exc:
        print(f"presslab: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
