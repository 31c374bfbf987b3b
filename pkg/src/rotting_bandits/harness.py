"""Experiment harness: instance builders, seeded episode runner, Monte Carlo
aggregation, runtime benchmarking, and CSV emission.

Checkpoint regret is always measured against the oracle at that same horizon
t, so regret trajectories may rise and fall; no monotone clamp is applied
anywhere.
"""
from __future__ import annotations

import csv
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .baselines import DUcbPolicy, GreedyLastPolicy, SwUcbPolicy, Ucb1Policy, WswaPolicy
from .core import Constant, Policy, RottingInstance, StepDrop, mean_at, mean_table
from .eff_fewa import EffFewaPolicy
from .fewa import FewaPolicy
from .oracle import RegretReport, oracle_trajectory, regret_report


class ConfigError(ValueError):
    """Bad experiment configuration (unknown key, unknown policy, ...)."""


# ---------------------------------------------------------------------------
# Instance families
# ---------------------------------------------------------------------------

def build_two_arm(L: float, T: int, sigma: float = 1.0) -> RottingInstance:
    """Two arms: mu_1 = 0; mu_2 = L/2 for the first T/4 pulls, then -L/2."""
    if L <= 0 or T < 4:
        raise ValueError("need L > 0 and T >= 4")
    means = (Constant(0.0), StepDrop(L / 2.0, -L / 2.0, T // 4))
    return RottingInstance(means=means, sigma=sigma, L=L, horizon_hint=T)


TEN_ARM_GAPS = tuple(10.0 ** (-3.0 + 0.5 * k) for k in range(9))


def build_ten_arm(sigma: float = 1.0) -> RottingInstance:
    """One constant-zero arm plus nine arms stepping from +gap to -gap at
    pull 1000, gaps geometric from 0.001 to 10."""
    means = [Constant(0.0)]
    means += [StepDrop(g, -g, 1000) for g in TEN_ARM_GAPS]
    return RottingInstance(means=tuple(means), sigma=sigma, L=20.0, horizon_hint=10_000)


def make_instance(spec: dict, T: int) -> tuple[RottingInstance, str]:
    """Build an instance from a config mapping; returns (instance, label)."""
    spec = dict(spec)
    family = spec.pop("family", None)
    sigma = float(spec.pop("sigma", 1.0))
    if family == "two-arm":
        L = float(spec.pop("L"))
        if spec:
            raise ConfigError(f"unknown instance keys: {sorted(spec)}")
        return build_two_arm(L, T, sigma), f"two-arm(L={L:g})"
    if family == "ten-arm":
        if spec:
            raise ConfigError(f"unknown instance keys: {sorted(spec)}")
        return build_ten_arm(sigma), "ten-arm"
    raise ConfigError(f"unknown instance family: {family!r}")


# ---------------------------------------------------------------------------
# Policy registry
# ---------------------------------------------------------------------------

def _make_policy(name: str, params: dict, K: int, sigma: float) -> Policy:
    params = dict(params)
    policy: Policy
    if name == "fewa":
        policy = FewaPolicy(K, sigma, alpha=float(params.pop("alpha", 0.06)),
                            delta0=float(params.pop("delta0", 1.0)))
    elif name == "eff-fewa":
        policy = EffFewaPolicy(K, sigma, alpha=float(params.pop("alpha", 0.06)),
                               delta0=float(params.pop("delta0", 1.0)))
    elif name == "wswa":
        policy = WswaPolicy(K, sigma, alpha=float(params.pop("alpha", 0.2)))
    elif name == "ucb1":
        policy = Ucb1Policy(K, sigma, xi=float(params.pop("xi", 1.0)))
    elif name == "sw-ucb":
        policy = SwUcbPolicy(K, sigma, tau=int(params.pop("tau", 1000)),
                             xi=float(params.pop("xi", 0.6)))
    elif name == "d-ucb":
        policy = DUcbPolicy(K, sigma, gamma=float(params.pop("gamma", 0.99)),
                            xi=float(params.pop("xi", 0.6)))
    elif name == "greedy-last":
        policy = GreedyLastPolicy(K, sigma)
    else:
        raise ConfigError(f"unknown policy name: {name!r}")
    if params:
        raise ConfigError(f"unknown parameters for policy {name!r}: {sorted(params)}")
    return policy


def _fast_episode(name: str, params: dict, mu: np.ndarray, sigma: float,
                  noise: np.ndarray, T: int):
    """Compiled episode runner for the hot policies; None if unavailable."""
    if name == "fewa":
        return _kernels.fewa_episode(mu, sigma, noise, T,
                                     float(params.get("alpha", 0.06)),
                                     float(params.get("delta0", 1.0)))
    if name == "eff-fewa":
        return _kernels.eff_fewa_episode(mu, sigma, noise, T,
                                         float(params.get("alpha", 0.06)),
                                         float(params.get("delta0", 1.0)))
    if name == "ucb1":
        return _kernels.ucb1_episode(mu, sigma, noise, T,
                                     float(params.get("xi", 1.0)))
    if name == "wswa":
        return _kernels.wswa_episode(mu, sigma, noise, T,
                                     float(params.get("alpha", 0.2)))
    return None


POLICY_NAMES = ("fewa", "eff-fewa", "wswa", "ucb1", "sw-ucb", "d-ucb",
                "greedy-last", "oracle")


class OraclePolicy(Policy):
    """Greedy on the true means (needs the instance); zero regret by design."""

    name = "oracle"

    def __init__(self, instance: RottingInstance):
        super().__init__(instance.K, instance.sigma)
        self._instance = instance

    def _select(self, t: int) -> int:
        counts = self.log.counts
        vals = [mean_at(self._instance, i, counts[i]) for i in range(self.n_arms)]
        return max(range(self.n_arms), key=lambda i: (vals[i], -i))


# ---------------------------------------------------------------------------
# Episodes
# ---------------------------------------------------------------------------

def default_checkpoints(T: int, n: int = 50) -> list[int]:
    grid = np.unique(np.geomspace(1, T, n).round().astype(int))
    return sorted(set(int(x) for x in grid) | {T})


@dataclass
class EpisodeResult:
    policy: str
    instance_label: str
    run_id: int
    pulls: np.ndarray                # round-by-round arm sequence
    checkpoints: list[int]
    regrets: list[float]             # regret at each checkpoint, horizon-t oracle
    counts: np.ndarray               # per-arm pulls at T
    seconds: float                   # policy wall-clock (environment excluded)
    report: RegretReport             # full decomposition at T


def _checkpoint_regrets(instance: RottingInstance, pulls: np.ndarray,
                        checkpoints: list[int]) -> list[float]:
    T = len(pulls)
    _, jstar = oracle_trajectory(instance, T)
    tab = mean_table(instance, T)
    # expected reward actually collected at each round
    occ = np.zeros(instance.K, dtype=np.int64)
    gained = np.empty(T)
    for s in range(T):
        a = pulls[s]
        gained[s] = tab[a, occ[a]]
        occ[a] += 1
    jcum = np.concatenate(([0.0], np.cumsum(gained)))
    return [float(jstar[t] - jcum[t]) for t in checkpoints]


def run_episode(policy_name: str, params: dict, instance: RottingInstance, T: int,
                base_seed: int, run_id: int = 0, checkpoints: list[int] | None = None,
                use_fast: bool = True) -> EpisodeResult:
    """Run one seeded episode; identical (instance, policy, seed) give an
    identical pull trace across processes."""
    if checkpoints is None:
        checkpoints = default_checkpoints(T)
    ss = np.random.SeedSequence(entropy=base_seed, spawn_key=(run_id,))
    noise = np.random.default_rng(ss).standard_normal(T)
    mu = np.asarray(mean_table(instance, T))

    pulls = None
    seconds = 0.0
    if use_fast:
        _kernels.warmup()
        start = time.perf_counter()
        pulls = _fast_episode(policy_name, params, mu, instance.sigma, noise, T)
        seconds = time.perf_counter() - start
    if pulls is None:
        if policy_name == "oracle":
            policy = OraclePolicy(instance)
        else:
            policy = _make_policy(policy_name, params, instance.K, instance.sigma)
        pulls = np.empty(T, dtype=np.int64)
        counts = [0] * instance.K
        seconds = 0.0
        for t in range(1, T + 1):
            start = time.perf_counter()
            arm = policy.select(t)
            seconds += time.perf_counter() - start
            r = mu[arm, counts[arm]] + instance.sigma * noise[t - 1]
            counts[arm] += 1
            start = time.perf_counter()
            policy.observe(arm, r, t)
            seconds += time.perf_counter() - start
            pulls[t - 1] = arm

    regrets = _checkpoint_regrets(instance, pulls, checkpoints)
    counts_at_T = np.bincount(pulls, minlength=instance.K)
    report = regret_report(instance, counts_at_T, T)
    return EpisodeResult(policy_name, "", run_id, pulls, checkpoints, regrets,
                         counts_at_T, seconds, report)


# ---------------------------------------------------------------------------
# Configuration and Monte Carlo
# ---------------------------------------------------------------------------

@dataclass
class ExperimentConfig:
    instance: dict
    policies: list[tuple[str, dict]]
    T: int = 10_000
    runs: int = 100
    base_seed: int = 20190603
    checkpoints: list[int] | None = None
    workers: int = 1
    out_dir: str = "results"

    def __post_init__(self):
        if self.runs < 1:
            raise ConfigError("runs must be >= 1")
        if self.checkpoints is None:
            self.checkpoints = default_checkpoints(self.T)
        self.checkpoints = sorted(set(int(c) for c in self.checkpoints) | {self.T})
        if self.checkpoints[0] < 1 or self.checkpoints[-1] > self.T:
            raise ConfigError("checkpoints must lie in [1, T]")
        for name, _params in self.policies:
            if name not in POLICY_NAMES:
                raise ConfigError(f"unknown policy name: {name!r}")

    @classmethod
    def from_mapping(cls, raw: dict) -> "ExperimentConfig":
        raw = dict(raw)
        known = {"instance", "policies", "T", "runs", "base_seed", "checkpoints",
                 "workers", "out_dir"}
        unknown = set(raw) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        policies = []
        for p in raw.get("policies", []):
            p = dict(p)
            name = p.pop("name", None)
            if name is None:
                raise ConfigError("each policy entry needs a 'name'")
            policies.append((name, p))
        if not policies:
            raise ConfigError("config needs at least one policy")
        kwargs = {k: raw[k] for k in known & set(raw) if k not in ("policies",)}
        return cls(policies=policies, **kwargs)


@dataclass
class ResultTable:
    """Long-form results: one row per (policy, run, checkpoint)."""

    rows: list[tuple] = field(default_factory=list)
    # row: (run_id, policy, instance, t, regret, seconds)
    pulls: list[tuple] = field(default_factory=list)
    # pulls row: (run_id, policy, instance, arm, pulls_at_T)

    HEADER = ("run_id", "policy", "instance", "t", "regret", "seconds")
    PULLS_HEADER = ("run_id", "policy", "instance", "arm", "pulls")

    def add_episode(self, label: str, ep: EpisodeResult) -> None:
        for t, reg in zip(ep.checkpoints, ep.regrets):
            self.rows.append((ep.run_id, ep.policy, label, t, reg, ep.seconds))
        for arm, n in enumerate(ep.counts):
            self.pulls.append((ep.run_id, ep.policy, label, arm, int(n)))

    def final_regrets(self, policy: str, T: int) -> np.ndarray:
        return np.array([r[4] for r in self.rows
                         if r[1] == policy and r[3] == T])

    def aggregate(self) -> list[tuple]:
        """Per (policy, instance, t): mean and [10%, 90%] quantiles, order-independent."""
        groups: dict[tuple, list[float]] = {}
        for run_id, policy, label, t, regret, _s in self.rows:
            groups.setdefault((policy, label, t), []).append(regret)
        out = []
        for key in sorted(groups):
            vals = np.array(groups[key])
            out.append((*key, float(vals.mean()),
                        float(np.quantile(vals, 0.1)), float(np.quantile(vals, 0.9))))
        return out


def _run_one(args):
    (name, params, instance, T, base_seed, run_id, checkpoints) = args
    return run_episode(name, params, instance, T, base_seed, run_id, checkpoints)


def monte_carlo(config: ExperimentConfig) -> ResultTable:
    """All (policy, run) pairs with independent streams; aggregation does not
    depend on execution order. Runs share noise streams across policies for
    paired comparisons."""
    instance, label = make_instance(config.instance, config.T)
    table = ResultTable()
    jobs = [(name, params, instance, config.T, config.base_seed, run_id,
             config.checkpoints)
            for name, params in config.policies for run_id in range(config.runs)]
    if config.workers > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            episodes = list(pool.map(_run_one, jobs, chunksize=4))
    else:
        episodes = [_run_one(j) for j in jobs]
    for ep in episodes:
        table.add_episode(label, ep)
    return table


def bench_runtime(config: ExperimentConfig) -> dict[str, float]:
    """Average policy wall-clock seconds per run, sequential single-thread.

    Environment sampling (noise pre-draw) and regret bookkeeping are outside
    the timer; only policy work is measured.
    """
    instance, _label = make_instance(config.instance, config.T)
    out = {}
    for name, params in config.policies:
        total = 0.0
        for run_id in range(config.runs):
            ep = run_episode(name, params, instance, config.T,
                             config.base_seed, run_id, checkpoints=[config.T])
            total += ep.seconds
        out[name] = total / config.runs
    return out


# ---------------------------------------------------------------------------
# CSV I/O
# ---------------------------------------------------------------------------

def export_csv(table: ResultTable, path: str, pulls_path: str | None = None) -> None:
    with open(path, "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(ResultTable.HEADER)
        for row in table.rows:
            writer.writerow([row[0], row[1], row[2], row[3],
                             repr(float(row[4])), repr(float(row[5]))])
    if pulls_path is not None:
        with open(pulls_path, "w", newline="") as f:
            writer = csv.writer(f)
            writer.writerow(ResultTable.PULLS_HEADER)
            writer.writerows(table.pulls)


def load_csv(path: str, pulls_path: str | None = None) -> ResultTable:
    table = ResultTable()
    with open(path, newline="") as f:
        reader = csv.reader(f)
        header = tuple(next(reader))
        if header != ResultTable.HEADER:
            raise ValueError(f"unexpected CSV header: {header}")
        for row in reader:
            table.rows.append((int(row[0]), row[1], row[2], int(row[3]),
                               float(row[4]), float(row[5])))
    if pulls_path is not None:
        with open(pulls_path, newline="") as f:
            reader = csv.reader(f)
            next(reader)
            for row in reader:
                table.pulls.append((int(row[0]), row[1], row[2], int(row[3]),
                                    int(row[4])))
    return table


# ---------------------------------------------------------------------------
# Fig. 1-left style sweep
# ---------------------------------------------------------------------------

def default_L_grid(n: int = 20, low: float = 0.01, high: float = 10.0) -> list[float]:
    return [float(x) for x in np.geomspace(low, high, n)]


def l_sweep(config: ExperimentConfig, grid: list[float] | None = None) -> ResultTable:
    """Run the two-arm experiment across an L grid; instance labels carry L."""
    if grid is None:
        grid = default_L_grid()
    table = ResultTable()
    sigma = float(config.instance.get("sigma", 1.0))
    for L in grid:
        sub = ExperimentConfig(
            instance={"family": "two-arm", "L": L, "sigma": sigma},
            policies=config.policies, T=config.T, runs=config.runs,
            base_seed=config.base_seed, checkpoints=[config.T],
            workers=config.workers, out_dir=config.out_dir)
        part = monte_carlo(sub)
        table.rows.extend(part.rows)
        table.pulls.extend(part.pulls)
    return table
