#!/usr/bin/env python3
"""Render experiment CSV output: estimates with CI bars against oracles,
and log-log exponent fits. Companion script, not part of the library."""
import argparse
import csv
import math

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("csv_path")
    ap.add_argument("--out", default="results.png")
    ap.add_argument("--loglog", action="store_true",
                    help="plot p against r on log axes (exponent view)")
    args = ap.parse_args()

    rows = list(csv.DictReader(open(args.csv_path)))
    if not rows:
        raise SystemExit("empty CSV")

    fig, ax = plt.subplots(figsize=(7, 4.5))
    if args.loglog:
        r = [float(row["r"]) for row in rows]
        p = [float(row["p_hat"]) for row in rows]
        lo = [float(row["p_hat"]) - float(row["ci_low"]) for row in rows]
        hi = [float(row["ci_high"]) - float(row["p_hat"]) for row in rows]
        ax.errorbar(r, p, yerr=[lo, hi], fmt="o", capsize=3, label="MC")
        oracles = [row.get("oracle") for row in rows]
        if all(o not in (None, "", "nan") for o in oracles):
            ax.plot(r, [float(o) for o in oracles], "x--", label="oracle")
        ax.set_xscale("log")
        ax.set_yscale("log")
        ax.set_xlabel("r")
        ax.set_ylabel("hit probability")
        # least-squares slope annotation
        lr = [math.log(v) for v in r]
        lp = [math.log(v) for v in p]
        n = len(lr)
        mx, my = sum(lr) / n, sum(lp) / n
        slope = sum((a - mx) * (b - my) for a, b in zip(lr, lp)) / sum(
            (a - mx) ** 2 for a in lr)
        ax.set_title(f"fitted slope {slope:.3f}")
    else:
        names = [row["experiment_id"] for row in rows]
        p = [float(row["p_hat"]) for row in rows]
        lo = [float(row["p_hat"]) - float(row["ci_low"]) for row in rows]
        hi = [float(row["ci_high"]) - float(row["p_hat"]) for row in rows]
        xs = range(len(rows))
        ax.errorbar(xs, p, yerr=[lo, hi], fmt="o", capsize=3, label="MC")
        oracles = [row.get("oracle") for row in rows]
        if all(o not in (None, "", "nan") for o in oracles):
            ax.plot(xs, [float(o) for o in oracles], "x", label="oracle")
        ax.set_xticks(list(xs))
        ax.set_xticklabels(names, rotation=45, ha="right")
        ax.set_ylabel("probability")
    ax.legend()
    fig.tight_layout()
    fig.savefig(args.out, dpi=130)
    print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
