import math

import numpy as np
import pytest

from calculators.nonlinearity import builtin, scaled
from calculators.planar import (
    PlanarState,
    integrate,
    orbit_distance,
    period_at_zero,
    reflect,
    return_time,
    rotate,
    symmetry_residuals,
    vector_field,
    winding_number,
)
from utils.errors import DomainError, ValidationError


# --------------------------------------------------
# vector field
# --------------------------------------------------
def test_vector_field_examples(identity, cubic, tanh2):
    assert vector_field(identity, PlanarState(1.0, 0.0)) == PlanarState(0.0, -1.0)
    assert vector_field(cubic, PlanarState(0.0, 0.0)) == PlanarState(0.0, 0.0)
    v = vector_field(tanh2, PlanarState(0.0, 1.0))
    assert v.xi == pytest.approx(-1.5231883119115297, rel=1e-15)
    assert v.eta == 0.0


def test_state_must_be_finite():
    with pytest.raises(DomainError):
        PlanarState(math.nan, 0.0)


def test_rotation_and_reflection_are_equivariances(cubic):
    s = PlanarState(0.7, -1.3)
    # F(rho s) = rho F(s), F(sigma s) = -sigma F(s)
    assert vector_field(cubic, rotate(s)) == rotate(vector_field(cubic, s))
    r = vector_field(cubic, reflect(s))
    f = reflect(vector_field(cubic, s))
    assert (r.xi, r.eta) == pytest.approx((-f.xi, -f.eta))


# --------------------------------------------------
# integrate
# --------------------------------------------------
@pytest.mark.parametrize("name", ["cubic", "tanh2"])
def test_flow_commutes_with_rotation_and_reversal(name, request):
    nl = request.getfixturevalue(name)
    rng = np.random.default_rng(5)
    for xi, eta, t in np.column_stack([rng.uniform(-2, 2, (8, 2)), rng.uniform(0.1, 3.0, 8)]):
        s0 = PlanarState(xi, eta)
        forward = integrate(nl, s0, t)(t)
        # phi_t(rho s) = rho phi_t(s)
        rotated = integrate(nl, rotate(s0), t)(t)
        np.testing.assert_allclose(rotated, [forward[1], -forward[0]], atol=1e-7)
        # phi_t(sigma s) = sigma phi_-t(s)
        backward = integrate(nl, s0, -t)(-t)
        reflected = integrate(nl, reflect(s0), t)(t)
        np.testing.assert_allclose(reflected, [backward[0], -backward[1]], atol=1e-7)


def test_dense_output_between_nodes_matches_tight_solve(tanh2):
    from scipy.integrate import solve_ivp

    sol = integrate(tanh2, PlanarState(3.337, 0.0), 4.0)
    mid = 0.5 * (sol.t[:-1] + sol.t[1:])
    ref = solve_ivp(lambda t, y: [tanh2(y[0], y[1]), -tanh2(y[1], y[0])], (0.0, 4.0), [3.337, 0.0],
                    method="DOP853", rtol=1e-13, atol=1e-14, t_eval=mid)
    assert np.max(np.abs(sol(mid) - ref.y.T)) < 1e-8


def test_circle_full_and_half_turn(identity):
    full = integrate(identity, PlanarState(1.0, 0.0), 2 * math.pi)
    np.testing.assert_allclose(full(2 * math.pi), [1.0, 0.0], atol=1e-9)
    half = integrate(identity, PlanarState(1.0, 0.0), math.pi)
    np.testing.assert_allclose(half(math.pi), [-1.0, 0.0], atol=1e-9)


def test_dense_output_follows_the_circle(identity):
    sol = integrate(identity, PlanarState(1.0, 0.0), 2 * math.pi)
    ts = np.linspace(0.0, 2 * math.pi, 97)
    np.testing.assert_allclose(sol(ts), np.column_stack([np.cos(ts), -np.sin(ts)]), atol=1e-9)


def test_cubic_orbit_closes_after_one_return(cubic):
    T, _ = return_time(cubic, 1.0)
    sol = integrate(cubic, PlanarState(1.0, 0.0), T)
    np.testing.assert_allclose(sol(T), [1.0, 0.0], atol=1e-8)


def test_backward_integration(identity):
    sol = integrate(identity, PlanarState(1.0, 0.0), -math.pi / 2)
    np.testing.assert_allclose(sol(-math.pi / 2), [0.0, 1.0], atol=1e-9)


# --------------------------------------------------
# return time / period at zero
# --------------------------------------------------
def test_linear_center_period(identity, quarter_wave):
    assert return_time(identity, 3.0)[0] == pytest.approx(2 * math.pi, abs=1e-9)
    assert return_time(quarter_wave, 1.0)[0] == pytest.approx(4.0, abs=1e-9)


def test_linear_center_period_across_amplitudes(identity):
    for a in np.linspace(0.1, 10.0, 32):
        assert abs(return_time(identity, a)[0] - 2 * math.pi) < 1e-8


def test_small_amplitude_limit(cubic):
    assert return_time(cubic, 1e-3)[0] == pytest.approx(2 * math.pi, abs=1e-4)


def test_period_at_zero(cubic, tanh2, quarter_wave):
    assert period_at_zero(cubic) == pytest.approx(2 * math.pi, rel=1e-15)
    assert period_at_zero(tanh2) == pytest.approx(math.pi, rel=1e-15)
    assert period_at_zero(quarter_wave) == pytest.approx(4.0, rel=1e-15)


def test_amplitude_below_floor_rejected(cubic):
    with pytest.raises(ValidationError):
        return_time(cubic, 1e-9)


def test_hard_spring_period_shrinks(cubic):
    periods = [return_time(cubic, a)[0] for a in (0.5, 1.0, 2.0, 4.0)]
    assert all(b < a for a, b in zip(periods, periods[1:]))


@pytest.mark.parametrize("alpha", [0.5, 2.0, 10.0])
def test_rescaling_law(cubic, alpha):
    s = scaled(cubic, alpha)
    for a in (0.5, 1.0, 2.5):
        assert return_time(s, a)[0] == pytest.approx(return_time(cubic, a)[0] / alpha, abs=1e-7)


# --------------------------------------------------
# symmetry residuals / winding
# --------------------------------------------------
def test_circle_symmetries_exact(identity):
    r = symmetry_residuals(identity, 1.0)
    assert max(r.shift_correct, r.xi_even, r.eta_odd) < 1e-9


def test_positive_feedback_symmetries(cubic):
    r = symmetry_residuals(cubic, 2.0)
    assert max(r.shift_correct, r.xi_even, r.eta_odd) < 1e-7
    assert r.shift_wrong >= 1e-2


def test_negative_feedback_symmetries(tanh2):
    r = symmetry_residuals(tanh2, 1.0)
    assert max(r.shift_correct, r.xi_even, r.eta_odd) < 1e-7
    assert r.shift_wrong >= 1e-2
    assert set(r.as_dict()) >= {"shift_correct", "shift_wrong", "xi_even", "eta_odd"}


def test_winding_direction_follows_feedback(cubic, tanh2):
    T, sol = return_time(cubic, 1.0)
    assert winding_number(sol, T) == -1
    T, sol = return_time(tanh2, 1.0)
    assert winding_number(sol, T) == 1


def test_nested_orbits_do_not_meet(cubic):
    Ta, sa = return_time(cubic, 1.0)
    Tb, sb = return_time(cubic, 1.5)
    assert orbit_distance(sa, Ta, sb, Tb) > 0.1
