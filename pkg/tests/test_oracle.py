import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rotting_bandits.core import Constant, RottingInstance, StepDrop, Tabulated
from rotting_bandits.oracle import (
    Allocation,
    brute_force_allocation,
    h_plus_bound,
    oracle_allocation,
    oracle_cumreward,
    oracle_trajectory,
    regret_decomposition,
    regret_report,
)


def _random_instance(rng, K, n_max):
    """Random non-increasing step means with L = 1."""
    means = []
    for _ in range(K):
        start = rng.uniform(0.2, 1.0)
        vals = [start]
        for _ in range(n_max):
            vals.append(vals[-1] - rng.uniform(0, min(1.0, vals[-1] + 1.0)))
        means.append(Tabulated(tuple(vals)))
    return RottingInstance(means=tuple(means), sigma=0.0, L=1.0)


class TestOracle:
    def test_two_arm_split(self):
        # arm 1 worth L/2 for 5 pulls then -L/2: oracle takes those 5, then
        # lives on the zero arm
        inst = RottingInstance(means=(Constant(0.0), StepDrop(0.5, -0.5, 5)),
                               sigma=0.0, L=1.0)
        alloc = oracle_allocation(inst, 20)
        assert alloc.counts == (15, 5)
        assert oracle_cumreward(inst, alloc) == pytest.approx(2.5)

    def test_trajectory_prefix_consistent(self):
        inst = RottingInstance(means=(Constant(0.3), StepDrop(1.0, 0.0, 3)),
                               sigma=0.0, L=1.0)
        pulls_small, _ = oracle_trajectory(inst, 10)
        pulls_big, _ = oracle_trajectory(inst, 25)
        np.testing.assert_array_equal(pulls_small, pulls_big[:10])

    def test_tie_breaks_lowest_index(self):
        inst = RottingInstance(means=(Constant(0.5), Constant(0.5)),
                               sigma=0.0, L=1.0)
        pulls, _ = oracle_trajectory(inst, 4)
        # constant equal means: the lowest index wins every tie
        assert list(pulls) == [0, 0, 0, 0]

    @given(st.integers(0, 10 ** 6), st.integers(2, 3), st.integers(2, 8))
    @settings(max_examples=40, deadline=None)
    def test_greedy_matches_brute_force(self, seed, K, T):
        inst = _random_instance(np.random.default_rng(seed), K, T)
        _, jcum = oracle_trajectory(inst, T)
        _, best_j = brute_force_allocation(inst, T)
        assert jcum[T] == pytest.approx(best_j, abs=1e-9)

    def test_brute_force_size_guard(self):
        inst = _random_instance(np.random.default_rng(0), 3, 4)
        with pytest.raises(ValueError):
            brute_force_allocation(inst, 30)


class TestRegret:
    def test_decomposition_identity(self):
        rng = np.random.default_rng(7)
        for _ in range(50):
            K = int(rng.integers(2, 5))
            T = int(rng.integers(4, 40))
            inst = _random_instance(rng, K, T)
            counts = rng.multinomial(T, np.ones(K) / K)
            _, jcum = oracle_trajectory(inst, T)
            direct = jcum[T] - oracle_cumreward(inst, counts)
            split = regret_decomposition(inst, counts, T)
            assert split == pytest.approx(direct, abs=1e-9)

    def test_report_fields(self):
        inst = RottingInstance(means=(Constant(0.0), StepDrop(0.5, -0.5, 5)),
                               sigma=0.0, L=1.0)
        rep = regret_report(inst, (10, 10), 20)  # oracle is (15, 5)
        assert rep.overpulled == {1: 5}
        assert rep.underpulled == {0: 5}
        assert rep.regret == pytest.approx(2.5)  # 5 overpulls at gap 0.5
        assert rep.mu_plus == pytest.approx(0.0)

    def test_report_rejects_wrong_total(self):
        inst = RottingInstance(means=(Constant(0.0),), sigma=0.0, L=1.0)
        with pytest.raises(ValueError):
            regret_report(inst, (5,), 10)

    def test_oracle_allocation_has_zero_regret(self):
        inst = RottingInstance(means=(Constant(0.1), StepDrop(1.0, 0.0, 4)),
                               sigma=0.0, L=1.0)
        alloc = oracle_allocation(inst, 15)
        rep = regret_report(inst, alloc.counts, 15)
        assert rep.regret == pytest.approx(0.0, abs=1e-12)
        assert Allocation(alloc.counts).total == 15


class TestHPlus:
    def test_stationary_two_arm_value(self):
        # gap 1, sigma 1, alpha 5, T = 10^4: cap = 1 + 32*5*ln(10^4)
        inst = RottingInstance(means=(Constant(1.0), Constant(0.0)),
                               sigma=1.0, L=2.0)
        hp = h_plus_bound(inst, 10 ** 4, alpha=5.0, sigma=1.0)
        assert hp[1] == 1474
        assert hp[0] == 10 ** 4  # zero gap against itself: vacuous

    def test_larger_gap_smaller_cap(self):
        def inst(gap):
            return RottingInstance(means=(Constant(float(gap)), Constant(0.0)),
                                   sigma=1.0, L=max(gap, 1.0))
        h_small = h_plus_bound(inst(0.5), 1000, 5.0, 1.0)[1]
        h_big = h_plus_bound(inst(2.0), 1000, 5.0, 1.0)[1]
        assert h_big < h_small

    def test_report_includes_h_plus_on_request(self):
        inst = RottingInstance(means=(Constant(1.0), Constant(0.0)),
                               sigma=1.0, L=2.0)
        rep = regret_report(inst, (90, 10), 100, alpha=5.0)
        assert rep.h_plus is not None and 1 in rep.h_plus
