#!/usr/bin/env python3
"""Plot the solver's CSV artifacts.

Reads curve_samples.csv and shocks.csv from a run directory and draws,
per output time, the flowed parametric curve with the located shock
lines, plus the shock trajectory X(t). Matplotlib is deliberately kept
out of the solver core; install it separately to use this script.

Usage:
    python3 scripts/plot_figures.py <run_dir> [--save prefix]
"""

import argparse
import csv
import sys
from collections import defaultdict


def read_csv(path):
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("run_dir", help="directory produced by 'eqarea run'")
    ap.add_argument("--save", default=None, help="save figures as <prefix>_*.png")
    args = ap.parse_args()

    try:
        import matplotlib

        if args.save:
            matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError:
        sys.exit("matplotlib is required for plotting (pip install matplotlib)")

    curves = read_csv(f"{args.run_dir}/curve_samples.csv")
    shocks = read_csv(f"{args.run_dir}/shocks.csv")

    by_time = defaultdict(list)
    for row in curves:
        by_time[float(row["t"])].append((float(row["s"]), float(row["x"]), float(row["u"])))
    shocks_by_time = defaultdict(list)
    for row in shocks:
        shocks_by_time[float(row["t"])].append(float(row["X"]))

    times = sorted(by_time)
    fig, axes = plt.subplots(1, len(times), figsize=(4 * len(times), 3), squeeze=False)
    for ax, t in zip(axes[0], times):
        pts = sorted(by_time[t])
        ax.plot([p[1] for p in pts], [p[2] for p in pts], "-", lw=1.2, label="curve")
        for X in shocks_by_time.get(t, []):
            ax.axvline(X, color="red", ls="--", lw=1, label="shock")
        ax.set_title(f"t = {t:g}")
        ax.set_xlabel("x")
        ax.set_ylabel("u")
    fig.tight_layout()
    if args.save:
        fig.savefig(f"{args.save}_curves.png", dpi=150)

    if shocks:
        fig2, ax2 = plt.subplots(figsize=(5, 3.5))
        traj = defaultdict(list)
        for row in shocks:
            traj[row["id"]].append((float(row["t"]), float(row["X"])))
        for sid, pts in sorted(traj.items()):
            pts.sort()
            ax2.plot([p[0] for p in pts], [p[1] for p in pts], "o-", ms=3, label=f"shock {sid}")
        ax2.set_xlabel("t")
        ax2.set_ylabel("X(t)")
        ax2.legend()
        fig2.tight_layout()
        if args.save:
            fig2.savefig(f"{args.save}_trajectory.png", dpi=150)

    if not args.save:
        plt.show()


if __name__ == "__main__":
    main()
