# ==========================================
# Planar ODE — Return Time to the Section {eta = 0, xi > 0}
# ==========================================

import logging
import math

import numpy as np
from scipy.optimize import brentq

from config import settings
from calculators.planar.integrator import DenseSolution, PlanarState, planar_rhs, solve_dense
from utils.errors import ClosureFailure, NoReturn, ValidationError

logger = logging.getLogger(__name__)


def period_at_zero(nl) -> float:
    """
    T_f(0) = 2*pi / |d2 f(0,0)|, the continuous extension of the period map.
    """
    return 2.0 * math.pi / abs(nl.partials(0.0, 0.0)[1])


def _first_return(sol: DenseSolution, direction: float, start: int) -> int | None:
    """
    Index i >= max(start, 1) of the first mesh interval [t_{i-1}, t_i] on which
    direction*eta goes from negative to nonnegative with xi > 0.
    """
    g = direction * sol.y[:, 1]
    xi = sol.y[:, 0]
    for i in range(max(start, 1), sol.t.size):
        if g[i - 1] < 0 <= g[i] and xi[i] > 0:
            return i
    return None


def return_time(nl, a: float, rtol: float = settings.RTOL,
                atol: float = settings.ATOL) -> tuple:
    """
    First return time T_f(a) of the orbit through (a, 0) to the section
    {eta = 0, xi > 0}, crossed in the same direction as at t = 0.

    Returns (T, sol) where sol covers at least [0, T].
    """
    if not a >= settings.MIN_AMPLITUDE:
        raise ValidationError(
            f"Amplitude {a!r} below {settings.MIN_AMPLITUDE:g}; use period_at_zero",
            module="planar",
        )

    rhs = planar_rhs(nl)
    # eta' = -f(0, a) at the start; the return crossing repeats this direction
    direction = -math.copysign(1.0, nl(0.0, a))
    t0 = period_at_zero(nl)
    cap = settings.NO_RETURN_CAP / abs(nl.partials(0.0, 0.0)[1])

    sol = solve_dense(rhs, [a, 0.0], 0.0, 1.25 * t0, rtol, atol)
    chunk = 1.25 * t0
    scanned = 1
    while True:
        i = _first_return(sol, direction, scanned)
        if i is not None:
            break
        scanned = sol.t.size
        t_now = sol.t[-1]
        if t_now >= cap:
            raise NoReturn(
                f"No return to the section from a={a!r} before t={cap:.3g}; "
                "monotone feedback assumption broken?",
                module="planar",
            )
        chunk = min(2.0 * chunk, cap - t_now)
        sol = sol.concat(solve_dense(rhs, sol.y[-1], t_now, t_now + chunk, rtol, atol))

    t_lo, t_hi = sol.t[i - 1], sol.t[i]
    if sol.y[i, 1] == 0.0:
        T = float(t_hi)
    else:
        T = brentq(lambda t: sol.component(1, t), t_lo, t_hi, xtol=1e-15, rtol=4 * np.finfo(float).eps)

    end = sol(T)
    if abs(end[1]) >= settings.EVENT_TOL * max(1.0, a):
        logger.debug("Return polish residual |eta(T)|=%.3g at a=%g", abs(end[1]), a)
    if abs(end[0] - a) >= 1e-7 * max(1.0, a):
        raise ClosureFailure(
            f"Orbit from a={a!r} does not close: |xi(T)-a|={abs(end[0] - a):.3g}",
            module="planar",
        )
    logger.debug("T_f(%g) = %.15g (%d nodes)", a, T, sol.t.size)
    return float(T), sol
