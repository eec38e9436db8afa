"""Command-line entry point.

    shadowlab <experiment> [--config PATH] [--seed N] [--out DIR]
    shadowlab replay MANIFEST
    shadowlab validate-config PATH

Exit codes: 0 success, 2 configuration error, 3 stage failure.
"""
from __future__ import annotations

import argparse
import json
import sys

from .config import EXPERIMENTS, ExperimentConfig
from .experiments import StageFailure, replay, run_experiment

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_STAGE = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="shadowlab",
        description="Seeded, resumable runs of the simulated experiments.")
    sub = parser.add_subparsers(dest="command", required=True)
    for exp in EXPERIMENTS:
        sp = sub.add_parser(exp, help=f"run the {exp} experiment")
        sp.add_argument("--config", help="JSON config file (defaults applied when omitted)")
        sp.add_argument("--seed", type=int, help="master seed override")
        sp.add_argument("--out", default=None, help="output directory (default: runs/<experiment>)")
    rp = sub.add_parser("replay", help="re-run from a manifest, skipping verified stages")
    rp.add_argument("manifest", help="path to manifest.json")
    vc = sub.add_parser("validate-config", help="check a config file")
    vc.add_argument("config", help="JSON config file")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "validate-config":
        try:
            config = ExperimentConfig.from_file(args.config)
        except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
            print(f"invalid config: {exc}", file=sys.stderr)
            return EXIT_CONFIG
        print(f"valid config for {config.experiment} "
              f"(hash {config.content_hash()})")
        return EXIT_OK
    if args.command == "replay":
        try:
            report = replay(args.manifest)
        except (OSError, ValueError) as exc:
            print(f"replay rejected: {exc}", file=sys.stderr)
            return EXIT_CONFIG
        except StageFailure as exc:
            print(str(exc), file=sys.stderr)
            return EXIT_STAGE
        print(json.dumps(report, indent=1, sort_keys=True))
        return EXIT_OK

    try:
        if args.config:
            config = ExperimentConfig.from_file(args.config)
            if config.experiment != args.command:
                raise ValueError(
                    f"config is for {config.experiment!r}, not {args.command!r}")
        else:
            config = ExperimentConfig(args.command)
        if args.seed is not None:
            config = ExperimentConfig(config.experiment, config.params, args.seed)
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    out_dir = args.out or f"runs/{config.experiment}"
    try:
        report = run_experiment(config, out_dir)
    except StageFailure as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_STAGE
    print(json.dumps(report, indent=1, sort_keys=True))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
