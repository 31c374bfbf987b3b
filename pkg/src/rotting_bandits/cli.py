"""`rotbench` command line: run / sweep / bench / plot.

Configs are YAML mappings validated strictly (unknown keys are errors). All
subcommands exit 0 on success; failures print one machine-readable line
`error: <kind>: <message>` to stderr and exit nonzero.
"""
from __future__ import annotations

import os
import sys

import click
import yaml

from .harness import (
    ConfigError,
    ExperimentConfig,
    bench_runtime,
    export_csv,
    l_sweep,
    load_csv,
    monte_carlo,
)
from .plotting import emit_plot


def _fail(kind: str, message: str) -> None:
    click.echo(f"error: {kind}: {message}", err=True)
    sys.exit(1)


def _load_config(path: str, seed, runs, threads, out_dir) -> ExperimentConfig:
    try:
        with open(path) as f:
            raw = yaml.safe_load(f)
    except OSError as e:
        _fail("io", str(e))
    except yaml.YAMLError as e:
        _fail("parse", str(e))
    if not isinstance(raw, dict):
        _fail("config", f"{path}: top level must be a mapping")
    if seed is not None:
        raw["base_seed"] = seed
    if runs is not None:
        raw["runs"] = runs
    if threads is not None:
        raw["workers"] = threads
    if out_dir is not None:
        raw["out_dir"] = out_dir
    try:
        return ExperimentConfig.from_mapping(raw)
    except ConfigError as e:
        _fail("config", str(e))


def _write_outputs(table, config: ExperimentConfig, stem: str) -> str:
    os.makedirs(config.out_dir, exist_ok=True)
    csv_path = os.path.join(config.out_dir, f"{stem}.csv")
    pulls_path = os.path.join(config.out_dir, f"{stem}_pulls.csv")
    try:
        export_csv(table, csv_path, pulls_path)
    except OSError as e:
        _fail("io", str(e))
    return csv_path


_OVERRIDES = [
    click.option("--seed", type=int, default=None, help="Override base_seed."),
    click.option("--runs", type=int, default=None, help="Override run count."),
    click.option("--threads", type=int, default=None, help="Worker processes."),
    click.option("--out-dir", type=str, default=None, help="Output directory."),
]


def _with_overrides(f):
    for opt in reversed(_OVERRIDES):
        f = opt(f)
    return f


@click.group()
def main():
    """Benchmark harness for rested rotting bandits."""


@main.command()
@click.argument("config", type=click.Path())
@_with_overrides
def run(config, seed, runs, threads, out_dir):
    """Run one experiment from CONFIG; write CSV results and a regret plot."""
    cfg = _load_config(config, seed, runs, threads, out_dir)
    table = monte_carlo(cfg)
    csv_path = _write_outputs(table, cfg, "run")
    svg_path = os.path.join(cfg.out_dir, "run.svg")
    emit_plot(table, svg_path, kind="curves")
    click.echo(f"wrote {csv_path} and {svg_path}")


@main.command()
@click.argument("config", type=click.Path())
@_with_overrides
def sweep(config, seed, runs, threads, out_dir):
    """Two-arm L-sweep from CONFIG; final regret vs L, CSV + SVG."""
    cfg = _load_config(config, seed, runs, threads, out_dir)
    table = l_sweep(cfg)
    csv_path = _write_outputs(table, cfg, "sweep")
    svg_path = os.path.join(cfg.out_dir, "sweep.svg")
    emit_plot(table, svg_path, kind="sweep")
    click.echo(f"wrote {csv_path} and {svg_path}")


@main.command()
@click.argument("config", type=click.Path())
@_with_overrides
def bench(config, seed, runs, threads, out_dir):
    """Per-policy wall-clock benchmark (sequential, single-threaded)."""
    cfg = _load_config(config, seed, runs, threads, out_dir)
    times = bench_runtime(cfg)
    os.makedirs(cfg.out_dir, exist_ok=True)
    path = os.path.join(cfg.out_dir, "bench.csv")
    try:
        with open(path, "w") as f:
            f.write("policy,mean_seconds\n")
            for name, secs in times.items():
                f.write(f"{name},{secs!r}\n")
    except OSError as e:
        _fail("io", str(e))
    for name, secs in times.items():
        click.echo(f"{name}: {secs:.4f} s/run")
    click.echo(f"wrote {path}")


@main.command()
@click.argument("csv_file", type=click.Path())
@click.argument("out", type=click.Path())
@click.option("--kind", type=click.Choice(["auto", "curves", "sweep", "per-arm"]),
              default="auto")
@click.option("--pulls", type=click.Path(), default=None,
              help="Companion per-arm pulls CSV (needed for per-arm plots).")
def plot(csv_file, out, kind, pulls):
    """Render CSV_FILE results to an SVG at OUT."""
    try:
        table = load_csv(csv_file, pulls)
    except OSError as e:
        _fail("io", str(e))
    except ValueError as e:
        _fail("parse", str(e))
    try:
        emit_plot(table, out, kind=kind)
    except OSError as e:
        _fail("io", str(e))
    except ValueError as e:
        _fail("plot", str(e))
    click.echo(f"wrote {out}")


if __name__ == "__main__":
    main()
