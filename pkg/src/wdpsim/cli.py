"""Command-line front end.

Subcommands:
    ber-sweep       run the SNR grid of one scenario, write records
    csi-dump        one training-frame CSI estimate for both observers
    security-sweep  per-alpha BER sweeps (matched or mismatched receiver)
    validate        parse scenario/channel files and print the resolved config

Exit codes: 0 success, 1 runtime failure (e.g. unreadable file),
2 usage/configuration error.
"""

import argparse
import json
import os
import sys

from ._io import write_atomic
from .csi import csi_rows, write_csi_csv
from .results import write_ber_csv, write_ber_json
from .scenario import Scenario, ScenarioError, apply_overrides, describe, load_scenario_file
from .simulate import run_ber_sweep, run_csi_experiment, run_security_sweep


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wdp-sim",
        description="Multicarrier privacy/security waveform simulator",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, needs_out: bool):
        p.add_argument("--scenario", required=True, help="scenario file path")
        if needs_out:
            p.add_argument("--out", required=True, help="output data file path")
            p.add_argument(
                "--format",
                choices=("csv", "json"),
                default="csv",
                help="output data format (default csv)",
            )
            p.add_argument(
                "--figure",
                nargs="?",
                const="",
                default=None,
                metavar="PATH",
                help="also render a figure of the results (default: next to --out, .png)",
            )
        p.add_argument("--seed", type=int, default=None, help="override the scenario seed")
        p.add_argument(
            "--workers", type=int, default=1, help="parallel worker processes (default 1)"
        )
        p.add_argument(
            "--set",
            dest="overrides",
            action="append",
            default=[],
            metavar="KEY=VALUE",
            help="override a scenario key (repeatable)",
        )

    add_common(sub.add_parser("ber-sweep", help="run a BER sweep"), needs_out=True)
    add_common(sub.add_parser("csi-dump", help="dump CSI estimates"), needs_out=True)
    add_common(
        sub.add_parser("security-sweep", help="run per-alpha BER sweeps"), needs_out=True
    )
    add_common(sub.add_parser("validate", help="check a scenario file"), needs_out=False)
    return parser


def _load_scenario(args) -> Scenario:
    scenario = load_scenario_file(args.scenario)
    scenario = apply_overrides(scenario, args.overrides)
    if args.seed is not None:
        scenario = apply_overrides(scenario, [f"seed={args.seed}"])
    if args.workers < 1:
        raise ScenarioError("--workers must be >= 1")
    return scenario


def _figure_path(args) -> str | None:
    if args.figure is None:
        return None
    return args.figure or os.path.splitext(args.out)[0] + ".png"


def _write_records(records, args) -> None:
    if args.format == "json":
        write_ber_json(args.out, records)
    else:
        write_ber_csv(args.out, records)
    figure = _figure_path(args)
    if figure:
        from .plotting import save_ber_figure

        save_ber_figure(records, figure)


def _cmd_ber_sweep(args) -> int:
    scenario = _load_scenario(args)
    records = run_ber_sweep(scenario, workers=args.workers)
    _write_records(records, args)
    return 0


def _cmd_security_sweep(args) -> int:
    scenario = _load_scenario(args)
    if not scenario.alphas:
        raise ScenarioError("security-sweep needs an 'alphas' list in the scenario")
    records = run_security_sweep(scenario, workers=args.workers)
    _write_records(records, args)
    return 0


def _cmd_csi_dump(args) -> int:
    scenario = _load_scenario(args)
    legit, eaves = run_csi_experiment(scenario)
    if args.format == "json":
        rows = csi_rows(legit) + csi_rows(eaves)

        def body(fh):
            json.dump(rows, fh, indent=2)
            fh.write("\n")

        write_atomic(args.out, body)
    else:
        write_csi_csv(args.out, legit, eaves)
    figure = _figure_path(args)
    if figure:
        from .plotting import save_csi_figure

        save_csi_figure(legit, eaves, figure, title=scenario.scenario_id)
    return 0


def _cmd_validate(args) -> int:
    scenario = _load_scenario(args)
    print(describe(scenario))
    return 0


_COMMANDS = {
    "ber-sweep": _cmd_ber_sweep,
    "csi-dump": _cmd_csi_dump,
    "security-sweep": _cmd_security_sweep,
    "validate": _cmd_validate,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    try:
        return _COMMANDS[args.command](args)
    except ScenarioError as exc:
        print(f"wdp-sim: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"wdp-sim: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"wdp-sim: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
