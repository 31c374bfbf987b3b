#!/usr/bin/env python3
"""Per-policy wall-clock benchmark on the ten-arm experiment."""
import argparse

import yaml

from rotting_bandits.harness import ExperimentConfig, bench_runtime


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--config", default="configs/ten_arm.yaml")
    ap.add_argument("--runs", type=int, default=5)
    args = ap.parse_args()

    with open(args.config) as f:
        raw = yaml.safe_load(f)
    raw["runs"] = args.runs
    cfg = ExperimentConfig.from_mapping(raw)

    times = bench_runtime(cfg)
    for name, secs in sorted(times.items(), key=lambda kv: kv[1]):
        print(f"{name:<12} {secs:.4f} s/run")


if __name__ == "__main__":
    main()
