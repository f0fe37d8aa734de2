#!/usr/bin/env python3
"""Run every preset into an output directory, timing each one.

    python scripts/run_all_figures.py --out out/figures [--grid 1000] [--threads 4]
"""

import argparse
import time

from spreadchain.cli import main as cli_main
from spreadchain.presets import list_presets


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out", default="out/figures")
    parser.add_argument("--grid", type=int)
    parser.add_argument("--threads", type=int)
    args = parser.parse_args()

    for name, _description in list_presets():
        argv = ["preset", name, "--out", args.out]
        if args.grid:
            argv += ["--grid", str(args.grid)]
        if args.threads:
            argv += ["--threads", str(args.threads)]
        t0 = time.perf_counter()
        rc = cli_main(argv)
        elapsed = time.perf_counter() - t0
        print(f"{name}: rc={rc} {elapsed:.1f}s")
        if rc != 0:
            raise SystemExit(rc)


if __name__ == "__main__":
    main()
