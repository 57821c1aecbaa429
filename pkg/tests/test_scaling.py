import math

import pytest

from src.scaling import PowerScaling, eval_scaling, iterate_bound, loglog_fit, regime
from src.utils.exceptions import DomainError, InputError

D_CARPET = math.log(8) / math.log(3)


def test_eval_scaling_power_law():
    assert eval_scaling(PowerScaling(2.0), 3.0) == pytest.approx(9.0)
    assert eval_scaling(PowerScaling(D_CARPET), 1.0) == pytest.approx(1.0)
    assert eval_scaling(PowerScaling(D_CARPET), 3.0) == pytest.approx(8.0)


def test_eval_scaling_rejects_negative_radius():
    with pytest.raises(DomainError):
        eval_scaling(PowerScaling(2.0), -1.0)


def test_power_scaling_rejects_bad_exponent():
    with pytest.raises(DomainError):
        PowerScaling(0.0)


def test_regime_flags():
    report = regime(D_CARPET, 2.1, 2.0)
    assert (report.fvr, report.rsvr, report.svr) == (False, True, True)

    report = regime(2.0, 2.0, 2.0)
    assert (report.fvr, report.rsvr, report.svr) == (True, True, False)

    report = regime(2.0, 0.9, 1.5)
    assert not report.rsvr
    assert not report.window_ok


def test_iterate_bound_at_threshold():
    c0, b, beta = 3.0, 2.5, 0.7
    A0 = c0 ** (-1.0 / beta) * b ** (-1.0 / beta ** 2)
    result = iterate_bound(A0, c0, b, beta, 30)
    assert result.satisfied
    assert len(result.sequence) == 31
    for a, bound in zip(result.sequence, result.bounds):
        assert a <= bound * (1.0 + 1e-12)


def test_iterate_bound_tiny_initial_value():
    result = iterate_bound(1e-30, 1.0, 2.0, 1.0, 20)
    assert result.satisfied
    assert result.sequence[-1] < result.sequence[0]


def test_iterate_bound_above_threshold_diverges():
    A0 = 10.0 * 1.0 * 2.0 ** -1.0
    result = iterate_bound(A0, 1.0, 2.0, 1.0, 20)
    assert not result.satisfied
    assert result.sequence[-1] > result.sequence[0]


def test_loglog_fit_exact_and_constant():
    assert loglog_fit([(1, 1), (2, 4), (4, 16)]).slope == pytest.approx(2.0, abs=1e-10)
    assert loglog_fit([(1, 3.0), (2, 3.0)]).slope == pytest.approx(0.0, abs=1e-12)


def test_loglog_fit_noisy():
    fit = loglog_fit([(1, 1), (2, 3.9), (4, 16.1)])
    assert fit.slope == pytest.approx(2.005, abs=5e-3)
    assert fit.r_squared > 0.999


def test_loglog_fit_needs_two_radii():
    with pytest.raises(InputError):
        loglog_fit([(1, 1), (1, 2)])
