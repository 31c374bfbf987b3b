"""Compiled whole-episode runners for the expensive policies.

These reproduce the reference policy classes pull-for-pull (property-tested
in tests/test_kernels.py); they exist because the window-escalation policies
cost O(K t) per round, which pure Python cannot sustain at the benchmark
scale of T = 10^4 over hundreds of runs.

All kernels take a (K, T) table of true means, a length-T vector of
pre-drawn standard normal noise, and return the length-T pull trace.
"""
from __future__ import annotations

import math

import numpy as np
from numba import njit

BIG = np.int64(1) << 60

_warm = False


def warmup() -> None:
    """Force JIT compilation / on-disk cache load of every kernel.

    Called once per process before any timed episode so wall-clock numbers
    measure steady-state policy cost rather than compiler work.
    """
    global _warm
    if _warm:
        return
    mu = np.zeros((2, 4))
    noise = np.zeros(4)
    fewa_episode(mu, 1.0, noise, 4, 0.06, 1.0)
    eff_fewa_episode(mu, 1.0, noise, 4, 0.06, 1.0)
    ucb1_episode(mu, 1.0, noise, 4, 1.0)
    wswa_episode(mu, 1.0, noise, 4, 0.2)
    _warm = True


@njit(cache=True)
def fewa_episode(mu, sigma, noise, T, alpha, delta0):
    K = mu.shape[0]
    pulls = np.empty(T, dtype=np.int64)
    rewards = np.empty((K, T))
    counts = np.zeros(K, dtype=np.int64)
    sums = np.zeros(K)
    active = np.zeros(K, dtype=np.bool_)
    t = 0
    while t < T:
        tr = t + 1  # 1-based round index
        if t < K:
            arm = t  # initialization: each arm once, index order
        else:
            delta = delta0 / tr ** alpha
            if delta > 1.0:
                delta = 1.0
            log_term = math.log(1.0 / delta)
            if log_term < 0.0:
                log_term = 0.0
            n_active = K
            for i in range(K):
                active[i] = True
                sums[i] = 0.0
            w = 1
            arm = -1
            while True:
                if n_active == 1:
                    for i in range(K):
                        if active[i]:
                            arm = i
                    break
                # filter at window w
                best = -np.inf
                for i in range(K):
                    if active[i]:
                        sums[i] += rewards[i, counts[i] - w]
                        est = sums[i] / w
                        if est > best:
                            best = est
                two_c = 2.0 * math.sqrt(2.0 * sigma * sigma * log_term / w)
                for i in range(K):
                    if active[i] and best - sums[i] / w > two_c:
                        active[i] = False
                        n_active -= 1
                w += 1
                least = BIG
                least_arm = -1
                for i in range(K):
                    if active[i] and counts[i] < least:
                        least = counts[i]
                        least_arm = i
                if least <= w:
                    arm = least_arm
                    break
        r = mu[arm, counts[arm]] + sigma * noise[t]
        rewards[arm, counts[arm]] = r
        counts[arm] += 1
        pulls[t] = arm
        t += 1
    return pulls


@njit(cache=True)
def eff_fewa_episode(mu, sigma, noise, T, alpha, delta0):
    K = mu.shape[0]
    max_levels = 1
    while (1 << max_levels) <= T:
        max_levels += 1
    pulls = np.empty(T, dtype=np.int64)
    counts = np.zeros(K, dtype=np.int64)
    total = np.zeros(K)
    # level-major layout: the select loop scans one level across survivors,
    # so s_cur[j] is the contiguous hot row
    s_cur = np.zeros((max_levels, K))
    s_pend = np.zeros((max_levels, K))
    n_pend = np.zeros((max_levels, K), dtype=np.int64)
    n_levels = np.zeros(K, dtype=np.int64)
    surv = np.empty(K, dtype=np.int64)
    for t in range(T):
        tr = t + 1
        if t < K:
            arm = t
        else:
            delta = delta0 / tr ** alpha
            if delta > 1.0:
                delta = 1.0
            log_term = math.log(1.0 / delta)
            if log_term < 0.0:
                log_term = 0.0
            # compact survivor list, kept in ascending index order
            n_active = K
            for i in range(K):
                surv[i] = i
            j = 0
            arm = -1
            while True:
                if n_active == 1:
                    # a single survivor passes every remaining filter, and
                    # the stop rule eventually picks it: select it now
                    arm = surv[0]
                    break
                # filter at level j
                row = s_cur[j]
                best = -np.inf
                for k in range(n_active):
                    if row[surv[k]] > best:
                        best = row[surv[k]]
                two_c = 2.0 * math.sqrt(2.0 * sigma * sigma * log_term / (1 << j))
                # compact the survivors in place, tracking the least-pulled
                # one as we go (counts are fixed within a round, so this is
                # the same arm the stop rule would pick afterwards)
                m = 0
                least = BIG
                least_arm = -1
                for k in range(n_active):
                    i = surv[k]
                    if not (best - row[i] > two_c):
                        surv[m] = i
                        m += 1
                        if counts[i] < least:
                            least = counts[i]
                            least_arm = i
                n_active = m
                j += 1
                # the least-pulled survivor is eligible iff anyone is
                if least <= (np.int64(1) << j):
                    arm = least_arm
                    break
        r = mu[arm, counts[arm]] + sigma * noise[t]
        # EFF_Update
        counts[arm] += 1
        total[arm] += r
        n = counts[arm]
        # pending blocks only accumulate into levels that already existed;
        # a level created this round starts pending at the next sample
        for lev in range(n_levels[arm]):
            n_pend[lev, arm] += 1
            s_pend[lev, arm] += r
            if n_pend[lev, arm] == (np.int64(1) << lev):
                s_cur[lev, arm] = s_pend[lev, arm] / (np.int64(1) << lev)
                n_pend[lev, arm] = 0
                s_pend[lev, arm] = 0.0
        if n == (np.int64(1) << n_levels[arm]):
            lev = n_levels[arm]
            s_cur[lev, arm] = total[arm] / n
            s_pend[lev, arm] = 0.0
            n_pend[lev, arm] = 0
            n_levels[arm] += 1
        pulls[t] = arm
    return pulls


@njit(cache=True)
def ucb1_episode(mu, sigma, noise, T, xi):
    K = mu.shape[0]
    pulls = np.empty(T, dtype=np.int64)
    counts = np.zeros(K, dtype=np.int64)
    sums = np.zeros(K)
    for t in range(T):
        tr = t + 1
        if t < K:
            arm = t
        else:
            coef = 2.0 * sigma * sigma * xi * math.log(tr)
            best = -np.inf
            arm = -1
            for i in range(K):
                idx = sums[i] / counts[i] + math.sqrt(coef / counts[i])
                if idx > best:
                    best = idx
                    arm = i
        r = mu[arm, counts[arm]] + sigma * noise[t]
        sums[arm] += r
        counts[arm] += 1
        pulls[t] = arm
    return pulls


@njit(cache=True)
def wswa_episode(mu, sigma, noise, T, alpha):
    K = mu.shape[0]
    pulls = np.empty(T, dtype=np.int64)
    counts = np.zeros(K, dtype=np.int64)
    prefix = np.zeros((K, T + 1))
    sig23 = sigma ** (2.0 / 3.0)
    for t in range(T):
        tr = t + 1
        if t < K:
            arm = t
        else:
            m = alpha * sig23 * (tr / K) ** (2.0 / 3.0)
            window = np.int64(math.ceil(m))
            if window < 1:
                window = 1
            best = -np.inf
            arm = -1
            for i in range(K):
                w = window if window < counts[i] else counts[i]
                est = (prefix[i, counts[i]] - prefix[i, counts[i] - w]) / w
                if est > best:
                    best = est
                    arm = i
        r = mu[arm, counts[arm]] + sigma * noise[t]
        prefix[arm, counts[arm] + 1] = prefix[arm, counts[arm]] + r
        counts[arm] += 1
        pulls[t] = arm
    return pulls
