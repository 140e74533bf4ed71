"""Command line entry point: run experiment configs and the formula gate."""

from __future__ import annotations

import argparse
import sys

from .errors import ConfigError
from .experiments import ExperimentConfig, emit, run


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="lab", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run an experiment from a JSON config")
    p_run.add_argument("config", help="path to the experiment config JSON")
    p_run.add_argument("--out", default=None, help="output directory (default: config or cwd)")
    p_run.add_argument("--workers", type=int, default=None, help="parallel replica workers")
    p_run.add_argument(
        "--format", default="json", help="comma-separated emit formats: csv,json,svg"
    )

    p_check = sub.add_parser("check-formulas", help="run the closed-form identity gate")
    p_check.add_argument("--grid", type=int, default=1000, help="d-grid points (default 1000)")

    args = parser.parse_args(argv)
    try:
        if args.command == "run":
            config = ExperimentConfig.from_file(args.config)
            if args.workers is not None:
                config = ExperimentConfig(**{**_fields(config), "workers": args.workers})
            report = run(config)
            out_dir = args.out or config.out or "."
            formats = [f.strip() for f in args.format.split(",") if f.strip()]
            for path in emit(report, out_dir, formats):
                print(f"wrote {path}")
            print(report.summary())
            return 0 if report.passed else 1
        if args.command == "check-formulas":
            config = ExperimentConfig(experiment="formula-identities", grid_points=args.grid)
            report = run(config)
            for name, dev in report.extras["checks"].items():
                verdict = "PASS" if dev <= report.tolerance else "FAIL"
                print(f"{name}: max deviation {dev:.3e} (tolerance {report.tolerance:g}) {verdict}")
            return 0 if report.passed else 1
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    return 2


def _fields(config: ExperimentConfig) -> dict:
    return {name: getattr(config, name) for name in config.__dataclass_fields__}


if __name__ == "__main__":
    raise SystemExit(main())
