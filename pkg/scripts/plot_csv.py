#!/usr/bin/env python3
"""Plot one or more spreadchain CSV outputs (documentation helper, not library code).

Each CSV is drawn as observable-vs-first-column curves; multiple files can be
overlaid, which matches how the red/blue preset bundles are meant to be read.

    python scripts/plot_csv.py out/fig-quench-xy-red.csv out/fig-quench-xy-blue.csv \
        --column complexity --save fig-quench-xy.png
"""

import argparse
import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def read_table(path):
    rows = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(line for line in fh if not line.startswith("#"))
        header = next(reader)
        for row in reader:
            rows.append([float(x) for x in row])
    columns = list(zip(*rows))
    return header, {name: col for name, col in zip(header, columns)}


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("csv_files", nargs="+")
    parser.add_argument("--column", help="observable column (default: second column)")
    parser.add_argument("--save", help="output image path (default: derived from first CSV)")
    args = parser.parse_args()

    fig, ax = plt.subplots(figsize=(6, 4))
    x_name = None
    for path in args.csv_files:
        header, table = read_table(path)
        x_name = header[0]
        y_name = args.column or header[1]
        if y_name not in table:
            raise SystemExit(f"{path}: no column {y_name!r}; has {header}")
        ax.plot(table[x_name], table[y_name], label=Path(path).stem)
    ax.set_xlabel(x_name)
    ax.set_ylabel(args.column or "value")
    ax.legend(fontsize=8)
    fig.tight_layout()
    out = args.save or (Path(args.csv_files[0]).stem + ".png")
    fig.savefig(out, dpi=150)
    print(out)


if __name__ == "__main__":
    main()
