"""Oracle greedy policy, exact regret via the over/under-pull decomposition,
and problem-dependent overpull diagnostics.

The oracle knows the true means and is greedy each round (optimal for
non-increasing means); regret of an allocation is the oracle's cumulative
expected reward minus the allocation's, and it decomposes exactly into
underpulled minus overpulled mean mass.
"""
from __future__ import annotations

import functools
import heapq
import math
from dataclasses import dataclass

import numpy as np

from .core import RottingInstance, mean_at, mean_table


@dataclass(frozen=True)
class Allocation:
    """End-of-horizon per-arm pull counts."""

    counts: tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.counts)


@dataclass
class RegretReport:
    J_star: float
    J_pi: float
    regret: float
    overpulled: dict[int, int]     # arm -> h_{i,T} (excess pulls)
    underpulled: dict[int, int]    # arm -> deficit
    mu_plus: float
    h_plus: dict[int, int] | None = None


def _as_counts(allocation) -> np.ndarray:
    if isinstance(allocation, Allocation):
        return np.asarray(allocation.counts, dtype=np.int64)
    return np.asarray(allocation, dtype=np.int64)


@functools.lru_cache(maxsize=64)
def oracle_trajectory(instance: RottingInstance, T: int) -> tuple[np.ndarray, np.ndarray]:
    """Greedy-oracle pull sequence and cumulative reward, for all t <= T.

    The greedy policy is prefix-consistent, so one horizon-T pass yields the
    oracle at every intermediate horizon. Returns (pulls, J_star_cum) with
    J_star_cum[t] the oracle's expected reward after t rounds. Cached.
    """
    if T < 1:
        raise ValueError("T must be >= 1")
    tab = mean_table(instance, T)
    pulls = np.empty(T, dtype=np.int64)
    jcum = np.empty(T + 1)
    jcum[0] = 0.0
    counts = [0] * instance.K
    # max-heap on (mean of next pull, lowest index wins ties)
    heap = [(-tab[i, 0], i) for i in range(instance.K)]
    heapq.heapify(heap)
    for t in range(T):
        neg_mu, i = heapq.heappop(heap)
        pulls[t] = i
        jcum[t + 1] = jcum[t] - neg_mu
        counts[i] += 1
        heapq.heappush(heap, (-tab[i, counts[i]] if counts[i] < T else -tab[i, T - 1], i))
    pulls.setflags(write=False)
    jcum.setflags(write=False)
    return pulls, jcum


def oracle_allocation(instance: RottingInstance, T: int) -> Allocation:
    pulls, _ = oracle_trajectory(instance, T)
    counts = np.bincount(pulls, minlength=instance.K)
    return Allocation(tuple(int(c) for c in counts))


def oracle_cumreward(instance: RottingInstance, allocation) -> float:
    """J(allocation) = sum_i sum_{s < N_i} mu_i(s)."""
    counts = _as_counts(allocation)
    if len(counts) != instance.K or (counts < 0).any():
        raise ValueError("allocation must have one nonnegative count per arm")
    total = 0.0
    for i, n in enumerate(counts):
        total += sum(mean_at(instance, i, s) for s in range(int(n)))
    return total


def regret_decomposition(instance: RottingInstance, allocation, T: int) -> float:
    """Regret via the over/under-pull split (independent of J* - J_pi)."""
    counts = _as_counts(allocation)
    star = _as_counts(oracle_allocation(instance, T))
    under = 0.0
    over = 0.0
    for i in range(instance.K):
        if star[i] > counts[i]:
            under += sum(mean_at(instance, i, s) for s in range(counts[i], star[i]))
        elif counts[i] > star[i]:
            over += sum(mean_at(instance, i, s) for s in range(star[i], counts[i]))
    return under - over


def regret_report(instance: RottingInstance, pi_allocation, T: int, *,
                  alpha: float | None = None, delta0: float = 1.0) -> RegretReport:
    counts = _as_counts(pi_allocation)
    if counts.sum() != T:
        raise ValueError(f"allocation sums to {counts.sum()}, expected T={T}")
    _, jcum = oracle_trajectory(instance, T)
    j_star = float(jcum[T])
    j_pi = oracle_cumreward(instance, counts)
    regret = j_star - j_pi
    star = _as_counts(oracle_allocation(instance, T))
    overpulled = {i: int(counts[i] - star[i]) for i in range(instance.K)
                  if counts[i] > star[i]}
    underpulled = {i: int(star[i] - counts[i]) for i in range(instance.K)
                   if star[i] > counts[i]}
    alt = regret_decomposition(instance, counts, T)
    if abs(alt - regret) > 1e-9 * max(1.0, abs(regret)):
        raise AssertionError(f"regret decomposition mismatch: {regret} vs {alt}")
    mu_plus = max(mean_at(instance, i, int(counts[i])) for i in range(instance.K))
    h_plus = None
    if alpha is not None:
        h_plus = h_plus_bound(instance, T, alpha, instance.sigma, delta0)
    return RegretReport(j_star, j_pi, regret, overpulled, underpulled, mu_plus, h_plus)


def brute_force_allocation(instance: RottingInstance, T: int) -> tuple[Allocation, float]:
    """Exhaustive maximizer of the cumulative-reward objective (small cases).

    J depends only on pull counts, so we enumerate count compositions of T
    over K arms rather than arm sequences.
    """
    K = instance.K
    if K ** T > 10 ** 7:
        raise ValueError(f"instance too large for brute force: K^T = {K}^{T}")
    # prefix[i][n] = sum_{s<n} mu_i(s)
    prefix = [np.concatenate(([0.0], np.cumsum(mean_table(instance, max(T, 1))[i][:T])))
              for i in range(K)]

    best_j = -math.inf
    best = None

    def rec(arm: int, remaining: int, counts: list[int], j: float):
        nonlocal best_j, best
        if arm == K - 1:
            total = j + prefix[arm][remaining]
            if total > best_j:
                best_j = total
                best = counts + [remaining]
            return
        for n in range(remaining + 1):
            rec(arm + 1, remaining - n, counts + [n], j + prefix[arm][n])

    rec(0, T, [], 0.0)
    return Allocation(tuple(best)), float(best_j)


def h_plus_bound(instance: RottingInstance, T: int, alpha: float, sigma: float,
                 delta0: float = 1.0) -> dict[int, int]:
    """Problem-dependent cap on per-arm overpulls.

    For each arm, the largest h <= T with h <= 1 + C / gap(h-1)^2, where
    C = 32 sigma^2 log_+(T^alpha / delta0) and gap(h) is the oracle's worst
    next-pull mean minus the arm's mean averaged over its h pulls past the
    oracle allocation. Non-positive gaps make the constraint vacuous.
    """
    star = _as_counts(oracle_allocation(instance, T))
    pulled = [i for i in range(instance.K) if star[i] >= 1]
    mu_floor = min(mean_at(instance, i, int(star[i]) - 1) for i in pulled)
    coef = 32.0 * sigma * sigma * max(alpha * math.log(T) - math.log(delta0), 0.0)
    result = {}
    for i in range(instance.K):
        base = int(star[i])
        best = 0
        running = 0.0  # sum of mu_i(base), ..., mu_i(base + h - 1)
        for h in range(1, T + 1):
            # gap at window h-1
            if h == 1:
                gap = mu_floor - mean_at(instance, i, base)
            else:
                gap = mu_floor - running / (h - 1)
            if gap <= 0 or h <= 1 + coef / (gap * gap):
                best = h
            running += mean_at(instance, i, base + h - 1)
        result[i] = best
    return result
