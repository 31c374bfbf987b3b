"""FEWA: filtering on expanding window averages.

Each round the policy escalates the window h = 1, 2, 3, ..., filtering out
arms whose window-h average trails the best survivor by more than twice the
confidence radius, and pulls the least-pulled survivor once the window
reaches it.
"""
from __future__ import annotations

from .core import ObservationLog, Policy
from .estimators import WindowAverager, confidence_radius, window_average


def filter_arms(members, h: int, delta_t: float, log: ObservationLog, sigma: float):
    """One filtering pass: keep members within 2 c(h, delta_t) of the best.

    Every member must have at least h pulls; violating that is a programming
    error in the caller, not a recoverable condition.
    """
    members = list(members)
    for i in members:
        if log.count(i) < h:
            raise ValueError(f"arm {i} has fewer than h={h} pulls")
    estimates = {i: window_average(log, i, h) for i in members}
    best = max(estimates.values())
    two_c = 2.0 * confidence_radius(h, delta_t, sigma)
    return [i for i in members if not (best - estimates[i] > two_c)]


class FewaPolicy(Policy):
    """Reference (pure Python) FEWA implementation.

    The escalation loop keeps a survivor set S and a window w, filtering S at
    window w and stopping as soon as the least-pulled survivor has no more
    than w samples; that survivor is pulled (ties: lowest index). A singleton
    survivor set short-circuits: no filter can remove it, so further
    escalation cannot change the selection.
    """

    name = "fewa"

    def __init__(self, n_arms: int, sigma: float = 1.0, alpha: float = 0.06,
                 delta0: float = 1.0):
        super().__init__(n_arms, sigma)
        self.alpha = alpha
        self.delta0 = delta0

    def _select(self, t: int) -> int:
        init = self._first_unpulled()
        if init is not None:
            return init
        delta = min(self.delta0 / t ** self.alpha, 1.0)
        counts = self.log.counts
        survivors = list(range(self.n_arms))
        averager = WindowAverager(self.log)
        w = 1
        while True:
            if len(survivors) == 1:
                return survivors[0]
            # filter at window w (all survivors have >= w pulls here)
            averager.extend(survivors)
            best = max(averager.value(i) for i in survivors)
            two_c = 2.0 * confidence_radius(w, delta, self.sigma)
            survivors = [i for i in survivors
                         if not (best - averager.value(i) > two_c)]
            w += 1
            least = min(survivors, key=lambda i: counts[i])
            if counts[least] <= w:
                return least


def fewa_select(state: FewaPolicy, t: int) -> int:
    return state.select(t)


def fewa_observe(state: FewaPolicy, arm: int, reward: float, t: int) -> FewaPolicy:
    state.observe(arm, reward, t)
    return state


def fewa_init(state: FewaPolicy, instance, rng) -> FewaPolicy:
    """Pull each arm once, in index order, over rounds 1..K."""
    from .core import sample_reward

    for t in range(1, state.n_arms + 1):
        arm = state.select(t)
        r = sample_reward(instance, arm, state.log.count(arm), rng)
        state.observe(arm, r, t)
    return state
