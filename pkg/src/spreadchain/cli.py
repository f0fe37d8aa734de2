"""Batch command-line front-end.

Subcommands:
    run <scenario.toml> [--out PATH] [--grid N] [--threads N]
    preset <name> [--out DIR] [--grid N] [--threads N] [--print]
    list-presets

Thread count falls back to the SPREADCHAIN_THREADS environment variable.
Outputs are CSV files with a commented header (tool version, grid, scenario
echo) plus a JSON run manifest next to them.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .presets import list_presets, preset_by_name
from .scenarios import (
    ScenarioError,
    load_scenario,
    run_scenario,
    scenario_to_toml,
    write_manifest,
)

THREADS_ENV = "SPREADCHAIN_THREADS"


def _threads(args: argparse.Namespace) -> int:
    if args.threads is not None:
        return max(1, args.threads)
    env = os.environ.get(THREADS_ENV)
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise SystemExit(f"{THREADS_ENV} must be an integer, got {env!r}")
    return 1


def _cmd_run(args: argparse.Namespace) -> int:
    try:
        scenario = load_scenario(args.scenario)
    except FileNotFoundError:
        print(f"error: scenario file not found: {args.scenario}", file=sys.stderr)
        return 2
    except ScenarioError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    out = args.out or str(Path(args.scenario).with_suffix(".csv").name)
    threads = _threads(args)
    path = run_scenario(scenario, out, grid_n=args.grid, threads=threads)
    write_manifest(path + ".manifest.json", [path], args.grid, threads, [("run", scenario)])
    print(path)
    return 0


def _cmd_preset(args: argparse.Namespace) -> int:
    try:
        preset = preset_by_name(args.name)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.print:
        for label, scenario in preset.scenarios:
            print(f"# --- {preset.name}: {label} ---")
            print(scenario_to_toml(scenario))
        return 0
    out_dir = Path(args.out or ".")
    out_dir.mkdir(parents=True, exist_ok=True)
    threads = _threads(args)
    outputs = []
    for label, scenario in preset.scenarios:
        path = out_dir / f"{preset.name}-{label}.csv"
        run_scenario(scenario, str(path), grid_n=args.grid, threads=threads)
        outputs.append(str(path))
        print(path)
    write_manifest(
        str(out_dir / f"{preset.name}.manifest.json"),
        outputs, args.grid, threads, list(preset.scenarios),
    )
    return 0


def _cmd_list_presets(_args: argparse.Namespace) -> int:
    for name, description in list_presets():
        print(f"{name:36s} {description}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spreadchain",
        description="Spread complexity, quench dynamics, and work statistics "
                    "for free-fermion spin chains.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run a scenario file and write its CSV")
    p_run.add_argument("scenario", help="path to a scenario TOML file")
    p_run.add_argument("--out", help="output CSV path (default: scenario name with .csv)")
    p_run.add_argument("--grid", type=int, help="momentum-grid intervals (default 1000)")
    p_run.add_argument("--threads", type=int, help=f"worker threads (default ${THREADS_ENV} or 1)")
    p_run.set_defaults(func=_cmd_run)

    p_preset = sub.add_parser("preset", help="run (or print) a named preset")
    p_preset.add_argument("name", help="preset name; see list-presets")
    p_preset.add_argument("--out", help="output directory (default: current directory)")
    p_preset.add_argument("--grid", type=int, help="momentum-grid intervals (default 1000)")
    p_preset.add_argument("--threads", type=int, help=f"worker threads (default ${THREADS_ENV} or 1)")
    p_preset.add_argument("--print", action="store_true", help="print the scenario TOML instead of running")
    p_preset.set_defaults(func=_cmd_preset)

    p_list = sub.add_parser("list-presets", help="list preset names and descriptions")
    p_list.set_defaults(func=_cmd_list_presets)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ScenarioError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
