"""EFF-FEWA: the efficient variant with geometric windows h = 2^j.

Instead of recomputing window averages each round, every arm keeps one
current statistic s_c and one pending accumulator s_p per level j. Level j is
created when the arm's pull count first reaches 2^j (seeded with the running
mean of all samples so far); afterwards the pending sum promotes into s_c
every 2^j samples. Total state is at most 2 K log2(t) statistics.
"""
from __future__ import annotations

from .core import Policy
from .estimators import confidence_radius


class EffStatStore:
    """Per-arm, per-level current/pending statistics (Alg. EFF_Update)."""

    def __init__(self, n_arms: int):
        self.n_arms = n_arms
        self.counts = [0] * n_arms
        self.total_reward = [0.0] * n_arms
        self.s_current: list[list[float]] = [[] for _ in range(n_arms)]
        self.s_pending: list[list[float]] = [[] for _ in range(n_arms)]
        self.n_pending: list[list[int]] = [[] for _ in range(n_arms)]

    def num_levels(self, arm: int) -> int:
        return len(self.s_current[arm])

    def stat(self, arm: int, level: int) -> float:
        return self.s_current[arm][level]

    def size(self) -> int:
        """Number of stored statistics (one current + one pending per level)."""
        return 2 * sum(len(s) for s in self.s_current)

    def update(self, arm: int, reward: float) -> None:
        if not 0 <= arm < self.n_arms:
            raise ValueError(f"arm {arm} out of range")
        reward = float(reward)
        self.counts[arm] += 1
        n = self.counts[arm]
        self.total_reward[arm] += reward
        levels = self.s_current[arm]
        pend = self.s_pending[arm]
        npend = self.n_pending[arm]
        # the sample feeds only levels that existed before it arrived; a level
        # created this round starts its pending block at the NEXT sample
        for j in range(len(levels)):
            npend[j] += 1
            pend[j] += reward
            if npend[j] == 1 << j:
                levels[j] = pend[j] / (1 << j)
                npend[j] = 0
                pend[j] = 0.0
        if n == 1 << len(levels):
            # pull count hit 2^j for a new level j: seed with the global mean
            levels.append(self.total_reward[arm] / n)
            self.s_pending[arm].append(0.0)
            self.n_pending[arm].append(0)


def eff_update(store: EffStatStore, arm: int, reward: float, t: int | None = None) -> EffStatStore:
    store.update(arm, reward)
    return store


def eff_filter(members, j: int, delta_t: float, store: EffStatStore, sigma: float):
    """Keep members within 2 c(2^j, delta_t) of the per-level best statistic."""
    members = list(members)
    for i in members:
        if store.num_levels(i) <= j:
            raise ValueError(f"arm {i} has no level-{j} statistic")
    stats = {i: store.stat(i, j) for i in members}
    best = max(stats.values())
    two_c = 2.0 * confidence_radius(1 << j, delta_t, sigma)
    return [i for i in members if not (best - stats[i] > two_c)]


class EffFewaPolicy(Policy):
    """Reference (pure Python) EFF-FEWA implementation.

    The escalation mirrors FEWA with windows 2^j and the store's precomputed
    statistics; the stop rule uses N_i <= 2^j, and ties are broken by least
    pulled, then lowest index.
    """

    name = "eff-fewa"

    def __init__(self, n_arms: int, sigma: float = 1.0, alpha: float = 0.06,
                 delta0: float = 1.0):
        super().__init__(n_arms, sigma)
        self.alpha = alpha
        self.delta0 = delta0
        self.store = EffStatStore(n_arms)

    def _on_observe(self, arm: int, reward: float, t: int) -> None:
        self.store.update(arm, reward)

    def _select(self, t: int) -> int:
        init = self._first_unpulled()
        if init is not None:
            return init
        delta = min(self.delta0 / t ** self.alpha, 1.0)
        counts = self.store.counts
        survivors = list(range(self.n_arms))
        j = 0
        while True:
            if len(survivors) > 1:
                survivors = eff_filter(survivors, j, delta, self.store, self.sigma)
            j += 1
            eligible = [i for i in survivors if counts[i] <= (1 << j)]
            if eligible:
                return min(eligible, key=lambda i: counts[i])


def eff_select(state: EffFewaPolicy, t: int) -> int:
    return state.select(t)
