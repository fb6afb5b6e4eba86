"""Command-line front end.

One subcommand per scenario plus ``validate``::

    intraphoton headline [--config FILE] [--out DIR] [--seed N] [--noiseless]
    intraphoton validate --config FILE

Without ``--config`` a subcommand runs its shipped default config.  The
output directory defaults to ``$INTRAPHOTON_OUT``, then the current
directory.  Exit codes: 0 ok, 2 config error (including validation
failures), 3 runtime error (I/O and everything else).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import replace
from importlib import resources
from pathlib import Path

from .config import ConfigError, load_config, validate_config
from .scenarios import SCENARIO_NAMES, run_scenario, write_outputs

_SCENARIO_HELP = {
    "hom-dip": "coincidence dip vs interferometer delay",
    "fringes": "coincidence fringes vs the OAM analyzer angle",
    "chsh-theta": "CHSH S vs the analyzer separation angle",
    "chsh-vs-delay": "CHSH S vs the pair delay (entanglement tuning)",
    "headline": "repeated CHSH runs at fixed angles, mean and spread",
}


def default_config_path(name: str) -> Path:
    """Path of the shipped config for a scenario subcommand."""
    filename = name.replace("-", "_") + ".toml"
    return Path(str(resources.files("intraphoton") / "configs" / filename))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="intraphoton",
        description="Simulate tunable polarization-OAM entanglement experiments.",
    )
    commands = parser.add_subparsers(dest="command", required=True)
    for name in SCENARIO_NAMES:
        sub = commands.add_parser(name, help=_SCENARIO_HELP[name])
        sub.add_argument("--config", type=Path, default=None, help="TOML config file (default: shipped config)")
        sub.add_argument("--out", type=Path, default=None, help="output directory (default: $INTRAPHOTON_OUT or '.')")
        sub.add_argument("--seed", type=int, default=None, help="override the config seed")
        sub.add_argument("--noiseless", action="store_true", help="exact expectations, no Monte Carlo columns")
    validate = commands.add_parser("validate", help="validate a config file without running it")
    validate.add_argument("--config", type=Path, required=True, help="TOML config file to check")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "validate":
            report = validate_config(args.config)
            print(json.dumps(report.to_dict(), indent=2))
            return 0 if report.ok else 2
        config_path = args.config if args.config is not None else default_config_path(args.command)
        config = load_config(config_path)
        if args.seed is not None:
            config = replace(config, seed=args.seed)
        output = run_scenario(args.command, config, noiseless=args.noiseless)
        out_dir = args.out if args.out is not None else Path(os.environ.get("INTRAPHOTON_OUT", "."))
        csv_path, meta_path = write_outputs(output, out_dir)
        print(f"wrote {csv_path}")
        print(f"wrote {meta_path}")
        for key, value in output.summary.items():
            print(f"{key} = {value:.6g}")
        return 0
    except ConfigError as exc:
        for issue in exc.issues:
            place = f" (line {issue.line}, column {issue.column})" if issue.line is not None else ""
            print(f"config error [{issue.kind}]{place}: {issue.message}", file=sys.stderr)
        return 2
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


def entry() -> None:
    sys.exit(main())
