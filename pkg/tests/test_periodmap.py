import math

import numpy as np
import pytest

from calculators.nonlinearity import Feedback
from calculators.periodmap import (
    Classification,
    amplitude_grid,
    crossings,
    extrapolate_to_zero,
    realizable,
    realizable_value,
    sample,
    slope,
)
from calculators.planar import return_time
from utils.errors import ConfigError, LocallyConstantMap


# --------------------------------------------------
# realizable periods
# --------------------------------------------------
def test_realizable_sets():
    assert [r.value for r in realizable(Feedback.POSITIVE, 3)] == [4 / 3, 4 / 7, 4 / 11]
    assert [r.value for r in realizable(Feedback.NEGATIVE, 3)] == [4.0, 4 / 5, 4 / 9]
    assert [r.value for r in realizable(Feedback.NEGATIVE, 1)] == [4.0]


def test_realizable_markers_and_errors():
    assert realizable(Feedback.NEGATIVE, 1)[0].marker == "^"
    assert realizable(Feedback.POSITIVE, 1)[0].marker == "s"
    with pytest.raises(ConfigError):
        realizable(Feedback.POSITIVE, 0)


# --------------------------------------------------
# sampling
# --------------------------------------------------
def test_amplitude_grid_layout():
    a = amplitude_grid(8.0, 32)
    assert a.size == 33
    assert a[0] == 0.0
    assert a[-1] == pytest.approx(8.0)
    assert np.all(np.diff(a) > 0)
    uniform = a[1:9]
    np.testing.assert_allclose(np.diff(uniform), np.diff(uniform)[0])
    assert uniform[-1] == pytest.approx(2.0)


def test_linear_center_is_locally_constant(identity):
    table = sample(identity, a_max=10.0, m=32)
    np.testing.assert_allclose(table.periods, 2 * math.pi, atol=1e-8)
    assert table.classification is Classification.LOCALLY_CONSTANT


def test_hard_spring_table(cubic_table):
    assert cubic_table.periods[0] == pytest.approx(2 * math.pi)
    assert np.all(np.diff(cubic_table.periods) < 0)
    assert cubic_table.classification is Classification.HARD_SPRING


def test_soft_spring_table(tanh2_table):
    assert tanh2_table.periods[0] == pytest.approx(math.pi)
    assert np.all(np.diff(tanh2_table.periods) > 0)
    assert tanh2_table.classification is Classification.SOFT_SPRING


def test_table_matches_independent_tight_integration(cubic, cubic_table):
    for i in (3, 12, 25):
        a = cubic_table.amplitudes[i]
        tight, _ = return_time(cubic, a, rtol=1e-12, atol=1e-14)
        assert cubic_table.periods[i] == pytest.approx(tight, abs=1e-8)


def test_table_rows_use_seventeen_digits(cubic_table):
    rows = cubic_table.rows()
    assert rows[0] == ["a", "T", "dT", "classification"]
    assert len(rows) == cubic_table.amplitudes.size + 1
    assert float(rows[5][1]) == cubic_table.periods[4]
    assert rows[5][3] == "hard_spring"


@pytest.mark.parametrize("fixture, expected", [("cubic_table", 2 * math.pi), ("tanh2_table", math.pi)])
def test_limit_at_zero_amplitude(fixture, expected, request):
    table = request.getfixturevalue(fixture)
    assert extrapolate_to_zero(table) == pytest.approx(expected, abs=1e-4)


def test_limit_at_zero_does_not_depend_on_grid_coarseness(cubic):
    coarse = sample(cubic, a_max=5.0, m=16)
    assert coarse.amplitudes[1] > 0.1
    assert extrapolate_to_zero(coarse) == pytest.approx(2 * math.pi, abs=1e-5)


def test_sampling_preconditions(cubic):
    with pytest.raises(ConfigError):
        sample(cubic, a_max=-1.0, m=32)
    with pytest.raises(ConfigError):
        sample(cubic, a_max=5.0, m=4)


def test_slope_sign_change_within_noise_is_non_monotone(caplog):
    from calculators.periodmap.sampling import classify

    periods = np.array([4.0, 3.9, 3.8, 3.8, 3.7, 3.6])
    slopes = np.array([0.0, -1.0, -0.5, 1e-9, -0.5, -1.0])
    errors = np.full(6, 1e-6)
    assert classify(periods, slopes, errors, plateau_tol=1e-9) is Classification.NON_MONOTONE
    assert "within noise" in caplog.text
    slopes[3] = -1e-9
    assert classify(periods, slopes, errors, plateau_tol=1e-9) is Classification.HARD_SPRING


def test_mixed_spring_has_interior_extremum():
    from calculators.nonlinearity import builtin

    table = sample(builtin("mixed_spring", {"alpha": 1.0}), a_max=5.0, m=32)
    assert table.classification is Classification.NON_MONOTONE
    assert len(table.interior_extrema()) == 1


# --------------------------------------------------
# slope
# --------------------------------------------------
def test_slope_of_linear_center_vanishes(identity):
    assert slope(identity, 1.0).value == pytest.approx(0.0, abs=1e-7)


def test_slope_signs(cubic, tanh2):
    hard = slope(cubic, 1.0)
    soft = slope(tanh2, 1.0)
    assert hard.value < 0 and hard.significant
    assert soft.value > 0 and soft.significant


def test_slope_agrees_with_wide_difference(cubic):
    est = slope(cubic, 1.0)
    h = 1e-3
    brute = (return_time(cubic, 1.0 + h)[0] - return_time(cubic, 1.0 - h)[0]) / (2 * h)
    assert est.value == pytest.approx(brute, rel=1e-4)


# --------------------------------------------------
# crossings
# --------------------------------------------------
def test_soft_spring_crosses_four_once(tanh2_table):
    found = crossings(tanh2_table, 1)
    assert len(found) == 1
    c = found[0]
    assert c.rp.value == 4.0
    assert (c.T_lo - 4.0) * (c.T_hi - 4.0) < 0


def test_hard_spring_crossings(cubic_table):
    found = crossings(cubic_table, 2)
    assert [c.rp.value for c in found] == [4 / 3, 4 / 7]
    for c in found:
        assert c.a_lo < c.a_hi
        assert (c.T_lo - c.rp.value) * (c.T_hi - c.rp.value) < 0


def test_degenerate_linear_map_refused(quarter_wave):
    table = sample(quarter_wave, a_max=5.0, m=32)
    assert table.classification is Classification.LOCALLY_CONSTANT
    with pytest.raises(LocallyConstantMap):
        crossings(table, 1)
