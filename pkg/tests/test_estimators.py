import math

import pytest
from hypothesis import given, strategies as st

from rotting_bandits.core import ObservationLog
from rotting_bandits.estimators import (
    ConfidenceSchedule,
    WindowAverager,
    confidence_level,
    confidence_radius,
    window_average,
)


class TestConfidenceSchedule:
    def test_delta_t(self):
        sched = ConfidenceSchedule(delta0=1.0, alpha=2.0)
        assert confidence_level(1, sched) == 1.0
        assert confidence_level(10, sched) == pytest.approx(0.01)

    def test_validation(self):
        with pytest.raises(ValueError):
            ConfidenceSchedule(delta0=0.0)
        with pytest.raises(ValueError):
            ConfidenceSchedule(alpha=-1.0)
        with pytest.raises(ValueError):
            confidence_level(0, ConfidenceSchedule())


class TestConfidenceRadius:
    def test_formula(self):
        # c(h, delta) = sqrt(2 sigma^2 ln(1/delta) / h)
        c = confidence_radius(4, 0.1, 2.0)
        assert c == pytest.approx(math.sqrt(2 * 4 * math.log(10) / 4))

    def test_shrinks_with_window(self):
        radii = [confidence_radius(h, 0.05, 1.0) for h in (1, 2, 4, 8)]
        assert radii == sorted(radii, reverse=True)

    def test_zero_cases(self):
        assert confidence_radius(3, 1.0, 1.0) == 0.0
        assert confidence_radius(3, 2.0, 1.0) == 0.0  # clamped log term
        assert confidence_radius(3, 0.5, 0.0) == 0.0

    def test_errors(self):
        with pytest.raises(ValueError):
            confidence_radius(0, 0.5, 1.0)
        with pytest.raises(ValueError):
            confidence_radius(1, 0.0, 1.0)
        with pytest.raises(ValueError):
            confidence_radius(1, 0.5, -1.0)


def _log_with(rewards):
    log = ObservationLog(1)
    for r in rewards:
        log.record(0, r)
    return log


class TestWindowAverage:
    def test_last_h(self):
        log = _log_with([1.0, 2.0, 3.0, 4.0])
        assert window_average(log, 0, 1) == 4.0
        assert window_average(log, 0, 2) == pytest.approx(3.5)
        assert window_average(log, 0, 4) == pytest.approx(2.5)

    def test_window_too_large(self):
        log = _log_with([1.0])
        with pytest.raises(ValueError):
            window_average(log, 0, 2)
        with pytest.raises(ValueError):
            window_average(log, 0, 0)

    @given(st.lists(st.floats(-10, 10, allow_nan=False), min_size=1,
                    max_size=50))
    def test_full_window_is_plain_mean(self, rewards):
        log = _log_with(rewards)
        n = len(rewards)
        assert window_average(log, 0, n) == pytest.approx(sum(rewards) / n)

    @given(st.lists(st.floats(-5, 5, allow_nan=False), min_size=2,
                    max_size=40))
    def test_incremental_averager_is_bit_identical(self, rewards):
        log = _log_with(rewards)
        avg = WindowAverager(log)
        for h in range(1, len(rewards) + 1):
            avg.extend([0])
            # exact float equality: both paths sum newest-to-oldest
            assert avg.value(0) == window_average(log, 0, h)
