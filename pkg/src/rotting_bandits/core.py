"""Problem definitions for rested rotting bandits.

An instance is a set of arms whose expected reward mu_i(n) is a
non-increasing function of the arm's own pull count n, with per-pull decay
bounded by L and initial value in [0, L]. Rewards are the mean plus Gaussian
noise of scale sigma.
"""
from __future__ import annotations

import bisect
import functools
from dataclasses import dataclass, field
from typing import Union

import numpy as np


class ProtocolError(RuntimeError):
    """Raised when the select/observe protocol is violated."""


# ---------------------------------------------------------------------------
# Mean functions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Constant:
    value: float

    def __call__(self, n: int) -> float:
        return self.value


@dataclass(frozen=True)
class StepDrop:
    """Mean `high` for the first `change_at_pull` pulls, then `low` forever."""

    high: float
    low: float
    change_at_pull: int

    def __call__(self, n: int) -> float:
        return self.high if n < self.change_at_pull else self.low


@dataclass(frozen=True)
class PiecewiseConstant:
    """Right-open pieces: value is values[k] on [breakpoints[k-1], breakpoints[k]).

    `values` has one more entry than `breakpoints`; the last value continues
    forever. Evaluation is O(log #pieces).
    """

    breakpoints: tuple[int, ...]
    values: tuple[float, ...]

    def __post_init__(self):
        if len(self.values) != len(self.breakpoints) + 1:
            raise ValueError("need len(values) == len(breakpoints) + 1")
        if any(b2 <= b1 for b1, b2 in zip(self.breakpoints, self.breakpoints[1:])):
            raise ValueError("breakpoints must be strictly increasing")

    def __call__(self, n: int) -> float:
        return self.values[bisect.bisect_right(self.breakpoints, n)]


@dataclass(frozen=True)
class Tabulated:
    """Explicit per-pull values; constant continuation past the last entry."""

    values: tuple[float, ...]

    def __call__(self, n: int) -> float:
        if n < len(self.values):
            return self.values[n]
        return self.values[-1]


MeanFunction = Union[Constant, StepDrop, PiecewiseConstant, Tabulated]


# ---------------------------------------------------------------------------
# Instance
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RottingInstance:
    """K arms with non-increasing means, noise scale sigma, decay bound L."""

    means: tuple[MeanFunction, ...]
    sigma: float
    L: float
    horizon_hint: int | None = None

    @property
    def K(self) -> int:
        return len(self.means)

    def __post_init__(self):
        if self.K < 1:
            raise ValueError("need at least one arm")
        if self.sigma < 0:
            raise ValueError("sigma must be >= 0")
        if self.L <= 0:
            raise ValueError("L must be > 0")


def mean_at(instance: RottingInstance, arm: int, n: int) -> float:
    """Expected reward of `arm` after `n` prior pulls."""
    if not 0 <= arm < instance.K:
        raise ValueError(f"arm {arm} out of range [0, {instance.K})")
    if n < 0:
        raise ValueError("pull count must be >= 0")
    return float(instance.means[arm](n))


@functools.lru_cache(maxsize=256)
def mean_table(instance: RottingInstance, n_max: int) -> np.ndarray:
    """(K, n_max) table of mu_i(n) for n = 0..n_max-1. Cached; do not mutate."""
    tab = np.empty((instance.K, n_max))
    for i, f in enumerate(instance.means):
        tab[i] = [f(n) for n in range(n_max)]
    tab.setflags(write=False)
    return tab


def validate_instance(instance: RottingInstance, n_max: int) -> list[tuple[int, int, str]]:
    """Check the non-increasing / bounded-decay / initial-range invariants.

    Returns a list of (arm, n, rule) violations; empty iff the instance is
    well-formed over pull counts up to n_max.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    violations = []
    for i in range(instance.K):
        vals = np.array([mean_at(instance, i, n) for n in range(n_max + 1)])
        if not 0.0 <= vals[0] <= instance.L:
            violations.append((i, 0, "initial value outside [0, L]"))
        diffs = vals[1:] - vals[:-1]
        for n in np.nonzero(diffs > 0)[0]:
            violations.append((i, int(n), "mean increases"))
        for n in np.nonzero(diffs < -instance.L)[0]:
            violations.append((i, int(n), "decay exceeds L"))
    return violations


# ---------------------------------------------------------------------------
# RNG streams
# ---------------------------------------------------------------------------

@dataclass
class RngStream:
    """A reproducible noise stream: (seed, stream_id) fully determines it.

    Streams for different stream_ids are statistically independent
    (SeedSequence spawn keys), which is what lets Monte Carlo runs execute
    in parallel without correlation.
    """

    seed: int
    stream_id: int = 0
    _gen: np.random.Generator = field(init=False, repr=False)

    def __post_init__(self):
        ss = np.random.SeedSequence(entropy=self.seed, spawn_key=(self.stream_id,))
        self._gen = np.random.default_rng(ss)

    def standard_normal(self, size=None):
        return self._gen.standard_normal(size)


def sample_reward(instance: RottingInstance, arm: int, n: int, rng: RngStream) -> float:
    """Noisy reward mu_arm(n) + sigma * eps with eps ~ N(0, 1)."""
    return mean_at(instance, arm, n) + instance.sigma * float(rng.standard_normal())


# ---------------------------------------------------------------------------
# Observation log
# ---------------------------------------------------------------------------

class ObservationLog:
    """Append-only per-arm reward sequences plus pull counts.

    rewards[i][n] is the reward of arm i's (n+1)-th pull. `t` counts total
    pulls made so far, so sum(counts) == t always.
    """

    def __init__(self, n_arms: int):
        if n_arms < 1:
            raise ValueError("need at least one arm")
        self.n_arms = n_arms
        self.rewards: list[list[float]] = [[] for _ in range(n_arms)]
        self.t = 0

    @property
    def counts(self) -> list[int]:
        return [len(r) for r in self.rewards]

    def count(self, arm: int) -> int:
        return len(self.rewards[arm])

    def record(self, arm: int, reward: float) -> None:
        if not 0 <= arm < self.n_arms:
            raise ValueError(f"arm {arm} out of range")
        self.rewards[arm].append(float(reward))
        self.t += 1


def record_pull(log: ObservationLog, arm: int, reward: float) -> ObservationLog:
    log.record(arm, reward)
    return log


# ---------------------------------------------------------------------------
# Policy interface
# ---------------------------------------------------------------------------

class Policy:
    """Contract every policy implements: select(t) -> arm, then observe.

    select is read-only on state; observe consumes exactly one (arm, reward)
    pair per round. Calling select twice without an intervening observe is a
    usage error.
    """

    name = "policy"

    def __init__(self, n_arms: int, sigma: float = 1.0):
        self.n_arms = n_arms
        self.sigma = sigma
        self.log = ObservationLog(n_arms)
        self._pending: int | None = None

    def select(self, t: int) -> int:
        if self._pending is not None:
            raise ProtocolError("select called twice without observe")
        arm = self._select(t)
        self._pending = arm
        return arm

    def observe(self, arm: int, reward: float, t: int) -> None:
        self._pending = None
        self.log.record(arm, reward)
        self._on_observe(arm, reward, t)

    def _select(self, t: int) -> int:
        raise NotImplementedError

    def _on_observe(self, arm: int, reward: float, t: int) -> None:
        pass

    def _first_unpulled(self) -> int | None:
        for i in range(self.n_arms):
            if self.log.count(i) == 0:
                return i
        return None


class RoundRobinPolicy(Policy):
    """Reference policy: arm t mod K at round t."""

    name = "round-robin"

    def _select(self, t: int) -> int:
        return t % self.n_arms
