#!/usr/bin/env python3
"""Quick look at any CSV emitted by esdsim.

Plots every numeric column against the first column. Non-numeric cells
(NONE/NA) become gaps. Requires matplotlib only when actually plotting.

  python3 tools/plot_csv.py fig7.csv
  python3 tools/plot_csv.py sweep_ad_phi_a0p785398_leung4.csv -o sweep.png
"""

import argparse
import csv
import math
import sys


def load(path):
    comments, header, rows = [], None, []
    with open(path, newline="") as fh:
        for raw in fh:
            line = raw.rstrip("\n")
            if line.startswith("#"):
                comments.append(line[1:].strip())
            elif header is None:
                header = next(csv.reader([line]))
            elif line:
                rows.append(next(csv.reader([line])))
    if header is None:
        sys.exit(f"{path}: no header row found")
    return comments, header, rows


def numeric(cell):
    try:
        return float(cell)
    except ValueError:
        return math.nan


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("csv_path")
    ap.add_argument("-o", "--out", help="write a PNG instead of showing a window")
    args = ap.parse_args()

    comments, header, rows = load(args.csv_path)
    if not rows:
        sys.exit(f"{args.csv_path}: no data rows")

    try:
        import matplotlib
        if args.out:
            matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError:
        sys.exit("matplotlib is not installed; pip install matplotlib")

    x = [numeric(r[0]) for r in rows]
    fig, ax = plt.subplots(figsize=(7, 4.5))
    for col in range(1, len(header)):
        y = [numeric(r[col]) if col < len(r) else math.nan for r in rows]
        if all(math.isnan(v) for v in y):
            continue
        ax.plot(x, y, label=header[col])
    ax.set_xlabel(header[0])
    ax.legend(fontsize=8)
    if comments:
        ax.set_title("; ".join(comments[:2]), fontsize=9)
    fig.tight_layout()
    if args.out:
        fig.savefig(args.out, dpi=150)
        print(f"wrote {args.out}")
    else:
        plt.show()


if __name__ == "__main__":
    main()
