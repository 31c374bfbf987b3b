"""Windowed mean estimates and Hoeffding confidence radii.

The window average of an arm is the arithmetic mean of its h most recent
rewards; the confidence radius c(h, delta) = sqrt((2 sigma^2 / h) ln(1/delta))
is the half-width such that the estimate is within c of its expectation with
probability 1 - delta for sigma-sub-Gaussian noise.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .core import ObservationLog


@dataclass(frozen=True)
class ConfidenceSchedule:
    """Per-round confidence delta_t = delta0 / t^alpha."""

    delta0: float = 1.0
    alpha: float = 0.06
    sigma: float = 1.0

    def __post_init__(self):
        if self.delta0 <= 0:
            raise ValueError("delta0 must be > 0")
        if self.alpha <= 0:
            raise ValueError("alpha must be > 0")
        if self.sigma < 0:
            raise ValueError("sigma must be >= 0")


def confidence_level(t: int, schedule: ConfidenceSchedule) -> float:
    if t < 1:
        raise ValueError("round index must be >= 1")
    return schedule.delta0 / t ** schedule.alpha


def confidence_radius(h: int, delta: float, sigma: float) -> float:
    """Hoeffding half-width for a window-h average; 0 when sigma=0 or delta>=1.

    delta may exceed 1 early in a run when delta0 > 1; the log term is clamped
    at zero so the radius stays real (the filter then keeps exact ties only).
    """
    if h < 1:
        raise ValueError("window must be >= 1")
    if delta <= 0:
        raise ValueError("delta must be > 0")
    if sigma < 0:
        raise ValueError("sigma must be >= 0")
    log_term = max(math.log(1.0 / delta), 0.0)
    return math.sqrt(2.0 * sigma * sigma * log_term / h)


def window_average(log: ObservationLog, arm: int, h: int) -> float:
    """Mean of the h most recent rewards of `arm`.

    Summation runs newest-to-oldest so that extending h-1 -> h incrementally
    (as the FEWA escalation loop does) reproduces the same float result.
    """
    n = log.count(arm)
    if not 1 <= h <= n:
        raise ValueError(f"window {h} not in [1, {n}] for arm {arm}")
    seq = log.rewards[arm]
    s = 0.0
    for j in range(1, h + 1):
        s += seq[n - j]
    return s / h


class WindowAverager:
    """Incremental window averages over one round of filtering.

    Each call to extend() grows every tracked arm's window by one (adding its
    next-oldest reward) in O(1) per arm.
    """

    def __init__(self, log: ObservationLog):
        self._log = log
        self._sums: dict[int, float] = {}
        self.h = 0

    def extend(self, arms) -> None:
        self.h += 1
        for i in arms:
            seq = self._log.rewards[i]
            self._sums[i] = self._sums.get(i, 0.0) + seq[len(seq) - self.h]

    def value(self, arm: int) -> float:
        return self._sums[arm] / self.h
