"""Comparison policies: greedy-last, UCB1, wSWA, SW-UCB, D-UCB.

All of them pull each arm once (index order) before applying their own rule,
and break ties by lowest arm index, so every run is replayable.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass

from .core import Policy


@dataclass(frozen=True)
class BaselineParams:
    wswa_alpha: float = 0.2
    ucb_xi: float = 1.0
    sw_tau: int = 1000
    ducb_gamma: float = 0.99

    def __post_init__(self):
        if self.wswa_alpha <= 0 or self.ucb_xi <= 0:
            raise ValueError("window multiplier and exploration coefficient must be > 0")
        if self.sw_tau < 1:
            raise ValueError("sliding window must be >= 1")
        if not 0.0 < self.ducb_gamma < 1.0:
            raise ValueError("discount must be in (0, 1)")


def _argmax(values) -> int:
    best, best_i = None, -1
    for i, v in enumerate(values):
        if best is None or v > best:
            best, best_i = v, i
    return best_i


class GreedyLastPolicy(Policy):
    """Pulls the arm with the largest last observed reward.

    With sigma = 0 this is the deterministic greedy rule whose regret is at
    most L(K-1) on any valid instance.
    """

    name = "greedy-last"

    def _select(self, t: int) -> int:
        init = self._first_unpulled()
        if init is not None:
            return init
        return _argmax(seq[-1] for seq in self.log.rewards)


class Ucb1Policy(Policy):
    """UCB1 with sub-Gaussian scaling: mean + sqrt(2 sigma^2 xi ln(t) / N)."""

    name = "ucb1"

    def __init__(self, n_arms: int, sigma: float = 1.0, xi: float = 1.0):
        super().__init__(n_arms, sigma)
        self.xi = xi
        self._sums = [0.0] * n_arms

    def _on_observe(self, arm, reward, t):
        self._sums[arm] += reward

    def _select(self, t: int) -> int:
        init = self._first_unpulled()
        if init is not None:
            return init
        coef = 2.0 * self.sigma * self.sigma * self.xi * math.log(t)
        counts = self.log.counts
        return _argmax(self._sums[i] / counts[i] + math.sqrt(coef / counts[i])
                       for i in range(self.n_arms))


class WswaPolicy(Policy):
    """Sliding-window greedy with a T^{2/3}-style window.

    The default window is M(t) = max(1, ceil(alpha * sigma^(2/3) * (t/K)^(2/3))),
    clamped to each arm's own sample count; pass `window_fn(t) -> int` to
    substitute a different tuning.
    """

    name = "wswa"

    def __init__(self, n_arms: int, sigma: float = 1.0, alpha: float = 0.2,
                 window_fn=None):
        super().__init__(n_arms, sigma)
        self.alpha = alpha
        self._window_fn = window_fn
        # per-arm prefix sums so any window mean is O(1)
        self._prefix = [[0.0] for _ in range(n_arms)]

    def window(self, t: int) -> int:
        if self._window_fn is not None:
            return max(1, int(self._window_fn(t)))
        m = self.alpha * self.sigma ** (2.0 / 3.0) * (t / self.n_arms) ** (2.0 / 3.0)
        return max(1, math.ceil(m))

    def _on_observe(self, arm, reward, t):
        p = self._prefix[arm]
        p.append(p[-1] + reward)

    def _select(self, t: int) -> int:
        init = self._first_unpulled()
        if init is not None:
            return init
        m = self.window(t)

        def mean(i):
            n = self.log.count(i)
            w = min(m, n)
            p = self._prefix[i]
            return (p[n] - p[n - w]) / w

        return _argmax(mean(i) for i in range(self.n_arms))


class SwUcbPolicy(Policy):
    """SW-UCB: UCB over the rewards observed in the last tau rounds.

    Arms unseen within the window get an infinite index, which forces
    re-exploration (the restless behavior that hurts in rested problems).
    """

    name = "sw-ucb"

    def __init__(self, n_arms: int, sigma: float = 1.0, tau: int = 1000,
                 xi: float = 0.6):
        super().__init__(n_arms, sigma)
        self.tau = tau
        self.xi = xi
        self._window: deque[tuple[int, float]] = deque()
        self._win_sums = [0.0] * n_arms
        self._win_counts = [0] * n_arms

    def _on_observe(self, arm, reward, t):
        self._window.append((arm, reward))
        self._win_sums[arm] += reward
        self._win_counts[arm] += 1
        if len(self._window) > self.tau:
            old_arm, old_r = self._window.popleft()
            self._win_sums[old_arm] -= old_r
            self._win_counts[old_arm] -= 1

    def windowed_counts(self) -> list[int]:
        return list(self._win_counts)

    def _select(self, t: int) -> int:
        init = self._first_unpulled()
        if init is not None:
            return init
        log_term = math.log(min(t, self.tau))

        def index(i):
            n = self._win_counts[i]
            if n == 0:
                return math.inf
            return self._win_sums[i] / n + math.sqrt(self.xi * log_term / n)

        return _argmax(index(i) for i in range(self.n_arms))


class DUcbPolicy(Policy):
    """D-UCB: gamma-discounted means with a matching padding term."""

    name = "d-ucb"

    def __init__(self, n_arms: int, sigma: float = 1.0, gamma: float = 0.99,
                 xi: float = 0.6):
        super().__init__(n_arms, sigma)
        self.gamma = gamma
        self.xi = xi
        self.disc_counts = [0.0] * n_arms
        self.disc_sums = [0.0] * n_arms

    def _on_observe(self, arm, reward, t):
        g = self.gamma
        for i in range(self.n_arms):
            self.disc_counts[i] *= g
            self.disc_sums[i] *= g
        self.disc_counts[arm] += g
        self.disc_sums[arm] += g * reward

    def _select(self, t: int) -> int:
        init = self._first_unpulled()
        if init is not None:
            return init
        n_gamma = sum(self.disc_counts)
        log_term = math.log(n_gamma) if n_gamma > 1.0 else 0.0

        def index(i):
            n = self.disc_counts[i]
            if n <= 0.0:
                return math.inf
            return self.disc_sums[i] / n + math.sqrt(self.xi * log_term / n)

        return _argmax(index(i) for i in range(self.n_arms))


def greedy_last_value_select(log) -> int:
    if any(len(seq) == 0 for seq in log.rewards):
        raise ValueError("every arm needs at least one pull")
    return _argmax(seq[-1] for seq in log.rewards)
