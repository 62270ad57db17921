#!/usr/bin/env python3
"""Render curl-lab output files as figures.

The CLI emits raw data only; this script is the plot layer. It understands
the three artifact kinds:

  objective.csv      k,objective            -> convergence curve
  regret_*.csv /     t,realized_loss,...    -> loss and log-regret curves
  comparison.csv
  rho_n*.txt         row<TAB>col<TAB>value  -> heatmap of a state marginal

Usage:
  plot_results.py out_dir [more_dirs...] [--save PREFIX]

Without --save, figures open interactively.
"""

import argparse
import csv
import pathlib
import sys

import matplotlib

import numpy as np


def read_csv_columns(path):
    with open(path, newline="") as f:
        rows = list(csv.reader(f))
    header, body = rows[0], rows[1:]
    cols = {name: np.array([float(r[i]) for r in body]) for i, name in enumerate(header)}
    return cols


def read_grid(path):
    data = np.loadtxt(path)
    side = int(np.max(data[:, 0])) + 1
    grid = np.zeros((side, side))
    for row, col, value in data:
        grid[int(row), int(col)] = value
    return grid


def plot_objective(ax, path):
    cols = read_csv_columns(path)
    ax.plot(cols["k"], cols["objective"])
    ax.set_xlabel("iteration k")
    ax.set_ylabel("objective")
    ax.set_title(path.parent.name + "/objective")


def plot_regret(ax, path):
    cols = read_csv_columns(path)
    t = cols["t"]
    for name, values in cols.items():
        if name.startswith("cum_regret"):
            per_round = values / t
            label = name.replace("cum_regret", "R_t/t") or "R_t/t"
            ax.loglog(t, np.maximum(per_round, 1e-12), label=label)
    ax.set_xlabel("episode t")
    ax.set_ylabel("average regret")
    ax.legend(fontsize=7)
    ax.set_title(path.name)


def plot_grid(ax, path):
    grid = read_grid(path)
    im = ax.imshow(grid, origin="upper")
    ax.figure.colorbar(im, ax=ax, shrink=0.8)
    ax.set_title(path.name)


def main():
    parser = argparse.ArgumentParser(description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("dirs", nargs="+", help="curl-lab output directories")
    parser.add_argument("--save", help="write PNGs with this path prefix instead of showing")
    args = parser.parse_args()

    if args.save:
        matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    jobs = []
    for d in args.dirs:
        root = pathlib.Path(d)
        if not root.is_dir():
            sys.exit(f"not a directory: {d}")
        for p in sorted(root.glob("objective.csv")):
            jobs.append((plot_objective, p))
        for p in sorted(root.glob("regret_*.csv")) + sorted(root.glob("comparison.csv")):
            jobs.append((plot_regret, p))
        for p in sorted(root.glob("rho_n*.txt")):
            jobs.append((plot_grid, p))

    if not jobs:
        sys.exit("nothing to plot")

    for i, (fn, path) in enumerate(jobs):
        fig, ax = plt.subplots(figsize=(5, 4))
        fn(ax, path)
        fig.tight_layout()
        if args.save:
            out = f"{args.save}{i:02d}_{path.stem}.png"
            fig.savefig(out, dpi=150)
            print(out)
            plt.close(fig)
    if not args.save:
        plt.show()


if __name__ == "__main__":
    main()
