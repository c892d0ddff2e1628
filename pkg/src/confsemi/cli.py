"""Command line front end: run a check suite or a parameter sweep.

Exit codes: 0 when every check passes, 1 when any check fails, 2 for
configuration or usage errors.
"""

from __future__ import annotations

import argparse
import csv
import os
import sys
from dataclasses import replace

from .config import SUITE_NAMES, ConfigError, parse_config
from .reports import write_report_json, write_summary_csv
from .suites import run_suite, run_sweep

__all__ = ["main"]

_SWEEP_COLUMNS = ("delta", "n", "a", "b", "c", "conjugacy_residual",
                  "law_residual", "correspondence_residual")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="confsemi",
        description="Run numerical identity checks for rescaled-clock "
                    "semigroups and their model problems.")
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="run one named check suite")
    run_p.add_argument("--suite", required=True, choices=SUITE_NAMES,
                       help="which checks to run")
    run_p.add_argument("--config", required=True, help="configuration file")
    run_p.add_argument("--out", default=None,
                       help="output directory (overrides the config)")
    run_p.add_argument("--seed", type=int, default=None,
                       help="random seed (overrides the config)")

    sweep_p = sub.add_parser("sweep", help="tabulate residuals over a "
                                           "parameter grid")
    sweep_p.add_argument("--config", required=True, help="configuration file")
    sweep_p.add_argument("--out", default=None,
                         help="output directory (overrides the config)")
    return parser


def _cmd_run(args) -> int:
    cfg = parse_config(args.config)
    cfg = replace(cfg, suite=args.suite).with_overrides(
        out_dir=args.out, seed=args.seed)
    reports = run_suite(cfg)
    os.makedirs(cfg.out_dir, exist_ok=True)
    report_path = os.path.join(cfg.out_dir, "report.json")
    summary_path = os.path.join(cfg.out_dir, "summary.csv")
    write_report_json(reports, report_path)
    write_summary_csv(reports, summary_path)
    for rep in reports:
        print(rep.one_line())
    failed = sum(1 for rep in reports if not rep.passed)
    print(f"{len(reports)} checks, {failed} failed "
          f"(suite={cfg.suite}, seed={cfg.seed})")
    print(f"wrote {report_path} and {summary_path}")
    return 1 if failed else 0


def _cmd_sweep(args) -> int:
    cfg = parse_config(args.config)
    cfg = cfg.with_overrides(out_dir=args.out)
    rows = run_sweep(cfg)
    os.makedirs(cfg.out_dir, exist_ok=True)
    sweep_path = os.path.join(cfg.out_dir, "sweep.csv")
    with open(sweep_path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(_SWEEP_COLUMNS)
        for row in rows:
            writer.writerow([repr(row[col]) if isinstance(row[col], float)
                             else row[col] for col in _SWEEP_COLUMNS])
    bad = sum(1 for row in rows
              for col in ("conjugacy_residual", "law_residual",
                          "correspondence_residual")
              if not (row[col] == row[col] and abs(row[col]) < float("inf")))
    print(f"{len(rows)} sweep rows -> {sweep_path}")
    if bad:
        print(f"{bad} non-finite residual cells", file=sys.stderr)
        return 1
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "run":
            return _cmd_run(args)
        return _cmd_sweep(args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
