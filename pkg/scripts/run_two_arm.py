#!/usr/bin/env python3
"""Run the two-arm benchmark and print the final-regret table.

Equivalent to `rotbench run configs/two_arm.yaml` but handy for quick edits.
"""
import argparse

import yaml

from rotting_bandits.harness import ExperimentConfig, export_csv, monte_carlo
from rotting_bandits.plotting import emit_plot


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--config", default="configs/two_arm.yaml")
    ap.add_argument("--runs", type=int, default=None)
    ap.add_argument("--out", default="results/two_arm.csv")
    ap.add_argument("--svg", default="results/two_arm.svg")
    args = ap.parse_args()

    with open(args.config) as f:
        raw = yaml.safe_load(f)
    if args.runs is not None:
        raw["runs"] = args.runs
    cfg = ExperimentConfig.from_mapping(raw)

    table = monte_carlo(cfg)
    export_csv(table, args.out)
    emit_plot(table, args.svg, kind="curves")

    print(f"{'policy':<12} {'mean regret':>12} {'q10':>10} {'q90':>10}")
    for policy, _label, t, mean, q10, q90 in table.aggregate():
        if t == cfg.T:
            print(f"{policy:<12} {mean:>12.2f} {q10:>10.2f} {q90:>10.2f}")
    print(f"wrote {args.out} and {args.svg}")


if __name__ == "__main__":
    main()
