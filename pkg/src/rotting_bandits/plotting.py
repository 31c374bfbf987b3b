"""Static SVG plots of benchmark results.

Three layouts: regret-over-time curves with [10%, 90%] quantile bands,
final regret vs decay bound L (log-x) for sweeps, and a per-arm regret bar
chart for the ten-arm experiment.
"""
from __future__ import annotations

import re

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .harness import ResultTable, build_ten_arm  # noqa: E402
from .oracle import oracle_allocation  # noqa: E402


def _policy_labels(table: ResultTable) -> list[str]:
    seen = []
    for row in table.rows:
        if row[1] not in seen:
            seen.append(row[1])
    return seen


def plot_regret_curves(table: ResultTable, path: str) -> None:
    fig, ax = plt.subplots(figsize=(7, 4.5))
    agg = table.aggregate()
    for policy in _policy_labels(table):
        pts = [(t, mean, q10, q90) for p, _lbl, t, mean, q10, q90 in agg
               if p == policy]
        pts.sort()
        ts = [p[0] for p in pts]
        ax.plot(ts, [p[1] for p in pts], label=policy)
        ax.fill_between(ts, [p[2] for p in pts], [p[3] for p in pts], alpha=0.2)
    ax.set_xlabel("round t")
    ax.set_ylabel("regret")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, format="svg")
    plt.close(fig)


_L_RE = re.compile(r"L=([0-9.eE+-]+)")


def plot_sweep(table: ResultTable, path: str) -> None:
    """Final regret vs L on a log x-axis, one curve per policy."""
    finals: dict[tuple[str, float], list[float]] = {}
    t_max: dict[str, int] = {}
    for run_id, policy, label, t, regret, _s in table.rows:
        t_max[label] = max(t, t_max.get(label, 0))
    for run_id, policy, label, t, regret, _s in table.rows:
        if t != t_max[label]:
            continue
        m = _L_RE.search(label)
        if not m:
            continue
        finals.setdefault((policy, float(m.group(1))), []).append(regret)
    fig, ax = plt.subplots(figsize=(7, 4.5))
    for policy in _policy_labels(table):
        ls = sorted(L for (p, L) in finals if p == policy)
        if not ls:
            continue
        means = [np.mean(finals[(policy, L)]) for L in ls]
        ax.plot(ls, means, marker="o", label=policy)
    ax.set_xscale("log")
    ax.set_xlabel("decay bound L")
    ax.set_ylabel("regret at horizon")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, format="svg")
    plt.close(fig)


def plot_per_arm(table: ResultTable, path: str, T: int) -> None:
    """Ten-arm layout: mean per-arm regret gap * overpulls, keyed by gap."""
    instance = build_ten_arm()
    star = np.asarray(oracle_allocation(instance, T).counts)
    gaps = [0.0] + [instance.means[i].high for i in range(1, instance.K)]
    per_policy: dict[str, dict[int, list[int]]] = {}
    for run_id, policy, _label, arm, pulls in table.pulls:
        per_policy.setdefault(policy, {}).setdefault(arm, []).append(pulls)
    fig, ax = plt.subplots(figsize=(7, 4.5))
    width = 0.8 / max(1, len(per_policy))
    xs = np.arange(1, instance.K)
    for k, (policy, arms) in enumerate(sorted(per_policy.items())):
        heights = []
        for arm in xs:
            over = np.mean([max(0, n - star[arm]) for n in arms.get(arm, [0])])
            heights.append(gaps[arm] * over)
        ax.bar(xs + k * width - 0.4, heights, width=width, label=policy)
    ax.set_yscale("symlog", linthresh=1.0)
    ax.set_xticks(xs)
    ax.set_xticklabels([f"{g:g}" for g in gaps[1:]], rotation=45)
    ax.set_xlabel("arm gap")
    ax.set_ylabel("regret per arm at T")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, format="svg")
    plt.close(fig)


def emit_plot(table: ResultTable, path: str, kind: str = "auto", T: int | None = None) -> None:
    if not table.rows:
        raise ValueError("empty result table")
    if kind == "auto":
        labels = {row[2] for row in table.rows}
        kind = "sweep" if len(labels) > 1 else "curves"
    if kind == "curves":
        plot_regret_curves(table, path)
    elif kind == "sweep":
        plot_sweep(table, path)
    elif kind == "per-arm":
        if T is None:
            T = max(row[3] for row in table.rows)
        plot_per_arm(table, path, T)
    else:
        raise ValueError(f"unknown plot kind: {kind!r}")
