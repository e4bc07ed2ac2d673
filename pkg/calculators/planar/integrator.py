# ==========================================
# Planar ODE — Vector Field and Dense Integration
# ==========================================
#
#   xi'  =  f(xi, eta)
#   eta' = -f(eta, xi)
#
# Adaptive RK 5(4) (scipy RK45) with cubic Hermite dense output built on the
# accepted mesh nodes.

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp
from scipy.interpolate import CubicHermiteSpline

from config import settings
from utils.errors import DomainError, StepFailure

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PlanarState:
    xi: float
    eta: float

    def __post_init__(self):
        if not (math.isfinite(self.xi) and math.isfinite(self.eta)):
            raise DomainError(f"Non-finite planar state ({self.xi}, {self.eta})", module="planar")

    def as_array(self) -> np.ndarray:
        return np.array([self.xi, self.eta], dtype=float)


class DenseSolution:
    """
    Trajectory on a strictly increasing mesh of (t, state, derivative) nodes
    with cubic Hermite interpolation between nodes. Values at nodes are
    returned exactly.
    """

    def __init__(self, t, y, yp, rhs=None):
        t = np.asarray(t, dtype=float)
        y = np.asarray(y, dtype=float)
        yp = np.asarray(yp, dtype=float)
        if y.ndim == 1:
            y = y[:, None]
            yp = yp[:, None]
        if t.size < 2 or np.any(np.diff(t) <= 0):
            raise StepFailure("Dense solution mesh must be strictly increasing", module="planar")
        self.t = t
        self.y = y
        self.yp = yp
        self.rhs = rhs
        self._spline = CubicHermiteSpline(t, y, yp, axis=0)
        self._dspline = None

    @property
    def t_span(self) -> tuple:
        return float(self.t[0]), float(self.t[-1])

    @property
    def dim(self) -> int:
        return self.y.shape[1]

    def __call__(self, t):
        tt = np.asarray(t, dtype=float)
        values = np.asarray(self._spline(tt))
        idx = np.searchsorted(self.t, tt)
        idx = np.clip(idx, 0, self.t.size - 1)
        hit = self.t[idx] == tt
        if np.ndim(tt) == 0:
            return self.y[idx].copy() if hit else values
        values[hit] = self.y[idx[hit]]
        return values

    def derivative(self, t):
        """
        Time derivative. Autonomous solutions use the vector field at the
        interpolated state; others differentiate the interpolant.
        """
        if self.rhs is not None:
            states = np.atleast_2d(self(t))
            out = np.array([self.rhs(s) for s in states])
            return out[0] if np.ndim(t) == 0 else out
        if self._dspline is None:
            self._dspline = self._spline.derivative()
        return np.asarray(self._dspline(np.asarray(t, dtype=float)))

    def component(self, i: int, t):
        return np.asarray(self(t))[..., i]

    def concat(self, other: "DenseSolution") -> "DenseSolution":
        """
        Joins a continuation that starts at this solution's final node.
        """
        if other.t[0] != self.t[-1]:
            raise StepFailure("Continuation does not start at the final node", module="planar")
        return DenseSolution(
            np.concatenate([self.t, other.t[1:]]),
            np.concatenate([self.y, other.y[1:]]),
            np.concatenate([self.yp, other.yp[1:]]),
            rhs=self.rhs,
        )


def vector_field(nl, s: PlanarState) -> PlanarState:
    """
    F(xi, eta) = (f(xi, eta), -f(eta, xi)).
    """
    return PlanarState(nl(s.xi, s.eta), -nl(s.eta, s.xi))


def planar_rhs(nl):
    def rhs(y):
        xi, eta = float(y[0]), float(y[1])
        try:
            return np.array([nl(xi, eta), -nl(eta, xi)])
        except OverflowError as exc:
            raise DomainError(f"Overflow evaluating f at ({xi}, {eta}): {exc}", module="planar")
    return rhs


def solve_dense(rhs, y0, t0: float, t1: float, rtol: float, atol: float, module: str = "planar",
                autonomous: bool = True, max_step: float = settings.MAX_STEP) -> DenseSolution:
    """
    Integrates y' = rhs(t, y) (or rhs(y) when autonomous) from t0 to t1 and
    returns the Hermite dense solution, oriented forward in time. Steps are
    capped at `max_step` so the cubic interpolant between nodes stays within
    the integration tolerance.
    """
    fun = (lambda t, y: rhs(y)) if autonomous else rhs
    sol = solve_ivp(fun, (t0, t1), np.atleast_1d(np.asarray(y0, dtype=float)), method="RK45",
                    rtol=rtol, atol=atol, max_step=max_step)
    if sol.status != 0:
        raise StepFailure(f"Integration failed at t={sol.t[-1]:.6g}: {sol.message}", module=module)
    y = sol.y.T
    if not np.all(np.isfinite(y)):
        raise DomainError("Non-finite state during integration", module=module)
    yp = np.array([fun(t, yi) for t, yi in zip(sol.t, y)])
    t = sol.t
    if t1 < t0:
        t, y, yp = t[::-1], y[::-1], yp[::-1]
    logger.debug("Integrated [%g, %g] with %d nodes", t0, t1, t.size)
    return DenseSolution(t, y, yp, rhs=rhs if autonomous else None)


def integrate(nl, s0: PlanarState, t_end: float, rtol: float = settings.RTOL,
              atol: float = settings.ATOL) -> DenseSolution:
    """
    Solution of the planar ODE from s0 on [0, t_end] (or [t_end, 0] when
    t_end < 0, used for backward checks).
    """
    if t_end == 0:
        raise ValueError("t_end must be nonzero")
    return solve_dense(planar_rhs(nl), s0.as_array(), 0.0, float(t_end), rtol, atol)
