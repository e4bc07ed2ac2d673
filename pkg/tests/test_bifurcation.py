import math

import numpy as np
import pytest

from calculators.bifurcation import EventKind, extrema, orbit_count, rows, scan
from calculators.nonlinearity import builtin, scaled
from calculators.periodmap import sample
from calculators.planar import period_at_zero
from utils.errors import ConfigError, InvalidBracket


@pytest.fixture(scope="module")
def tanh1():
    return builtin("tanh_soft", {"alpha": -1.0})


@pytest.fixture(scope="module")
def tanh1_table(tanh1):
    return sample(tanh1, a_max=5.0, m=16)


@pytest.fixture(scope="module")
def identity_table(identity):
    return sample(identity, a_max=2.0, m=16)


@pytest.fixture(scope="module")
def mixed():
    return builtin("mixed_spring", {"alpha": 1.0})


@pytest.fixture(scope="module")
def mixed_table(mixed):
    return sample(mixed, a_max=5.0, m=32)


def _hopf(events):
    return [e for e in events if e.kind is EventKind.HOPF]


def test_first_hopf_of_negative_feedback(tanh1, tanh1_table):
    events = scan(tanh1, tanh1_table, (0.1, 2.0), 1)
    hopf = _hopf(events)
    assert len(hopf) == 1
    assert abs(hopf[0].alpha - math.pi / 2) < 1e-12
    assert hopf[0].amplitude == 0.0 and hopf[0].period == 4.0


def test_hopf_of_positive_feedback(identity, identity_table):
    events = scan(identity, identity_table, (0.1, 12.0), 2)
    alphas = [e.alpha for e in _hopf(events)]
    assert alphas == pytest.approx([3 * math.pi / 2, 7 * math.pi / 2], abs=1e-12)


def test_hopf_values_increase_with_branch(tanh1, tanh1_table):
    hopf = _hopf(scan(tanh1, tanh1_table, (0.1, 100.0), 5))
    assert [e.n for e in hopf] == [1, 2, 3, 4, 5]
    assert all(b.alpha > a.alpha for a, b in zip(hopf, hopf[1:]))


def test_hopf_consistency_with_scaled_nonlinearity(tanh1, tanh1_table):
    for e in _hopf(scan(tanh1, tanh1_table, (0.1, 20.0), 3)):
        assert period_at_zero(scaled(tanh1, e.alpha)) == pytest.approx(e.period, abs=1e-12)


def test_monotone_map_has_no_saddle_nodes(tanh1, tanh1_table, cubic, cubic_table):
    for nl, table in ((tanh1, tanh1_table), (cubic, cubic_table)):
        events = scan(nl, table, (0.01, 100.0), 3)
        assert all(e.kind is EventKind.HOPF for e in events)


def test_saddle_node_candidates_at_interior_maximum(mixed, mixed_table):
    found = extrema(mixed_table)
    assert len(found) == 1
    ext = found[0]
    assert 0.0 < ext.amplitude < 5.0
    assert ext.period > mixed_table.period_at_zero

    events = scan(mixed, mixed_table, (0.1, 30.0), 3)
    candidates = [e for e in events if e.kind is EventKind.SADDLE_NODE_CANDIDATE]
    assert [e.n for e in candidates] == [1, 2, 3]
    for e in candidates:
        # the extremum amplitude is shared by every alpha
        assert e.amplitude == ext.amplitude
        assert e.alpha == pytest.approx(ext.period / e.period)
        assert e.slope_err >= 0.0
    assert [e.alpha for e in events] == sorted(e.alpha for e in events)


def test_empty_scan_and_bad_ranges(tanh1, tanh1_table):
    assert scan(tanh1, tanh1_table, (0.1, 0.2), 3) == []
    with pytest.raises(ConfigError):
        scan(tanh1, tanh1_table, (0.0, 1.0), 1)
    with pytest.raises(InvalidBracket):
        scan(tanh1, tanh1_table, (2.0, 1.0), 1)


def test_orbit_count_above_threshold(tanh1_table):
    assert orbit_count(tanh1_table, 1.0, 1) == {1: 0}
    assert orbit_count(tanh1_table, 2.0, 1) == {1: 1}


def test_event_rows(tanh1, tanh1_table):
    events = scan(tanh1, tanh1_table, (0.1, 2.0), 1)
    table = rows(events)
    assert table[0] == ["alpha", "kind", "n", "amplitude", "period"]
    assert table[1][1] == "Hopf"
    assert float(table[1][0]) == events[0].alpha
    assert np.isclose(float(table[1][4]), 4.0)
