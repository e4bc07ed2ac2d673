# ==========================================
# DDE — History Segments and Periodic Solutions
# ==========================================

import math

import numpy as np
from scipy.interpolate import CubicSpline

from config import settings
from utils.errors import DomainError
from utils.num_utils import validate_at_least


class HistorySegment:
    """
    N+1 uniform samples of a function on [-1, 0] with cubic spline
    interpolation between them.
    """

    def __init__(self, samples):
        samples = np.asarray(samples, dtype=float)
        validate_at_least(samples.size - 1, 32, "History mesh N")
        if not np.all(np.isfinite(samples)):
            raise DomainError("History samples must be finite", module="dde")
        self.samples = samples
        self.theta = np.linspace(-1.0, 0.0, samples.size)
        self._spline = CubicSpline(self.theta, samples)

    @property
    def N(self) -> int:
        return self.samples.size - 1

    @classmethod
    def from_function(cls, fn, N: int = settings.HISTORY_N) -> "HistorySegment":
        theta = np.linspace(-1.0, 0.0, N + 1)
        return cls(np.array([fn(th) for th in theta], dtype=float))

    def __call__(self, theta):
        return self._spline(theta)

    def derivative(self, theta):
        return self._spline(theta, 1)

    def critical_points(self) -> np.ndarray:
        """
        Interior extrema of the interpolant on [-1, 0].
        """
        roots = self._spline.derivative().roots(extrapolate=False)
        return roots[np.isfinite(roots)]


class PeriodicSolution:
    """
    A T-periodic scalar function with derivative access, evaluated on any t by
    wrap-around. Used for constructed orbits and closed-form fixtures.
    """

    def __init__(self, value, derivative, period: float, planar=None):
        self._value = value
        self._derivative = derivative
        self.period = float(period)
        self.planar = planar

    @classmethod
    def from_planar(cls, sol, period: float) -> "PeriodicSolution":
        """
        x(t) = xi(t mod T) from a planar dense solution covering [0, T].
        """
        return cls(
            lambda t: np.asarray(sol(np.mod(t, period)))[..., 0],
            lambda t: np.asarray(sol.derivative(np.mod(t, period)))[..., 0],
            period,
            planar=sol,
        )

    def __call__(self, t):
        return self._value(t)

    def derivative(self, t):
        return self._derivative(t)

    def delayed_planar(self, t):
        """
        The second planar coordinate eta(t mod T); equals x(t-1) for a
        Kaplan-Yorke orbit.
        """
        if self.planar is None:
            raise ValueError("No planar solution attached")
        return np.asarray(self.planar(np.mod(t, self.period)))[..., 1]

    def history(self, N: int = settings.HISTORY_N, start: float = 0.0) -> HistorySegment:
        """
        Segment x_start on [-1, 0].
        """
        theta = np.linspace(-1.0, 0.0, N + 1)
        return HistorySegment(np.asarray(self(start + theta), dtype=float))

    def derivative_history(self, N: int = settings.HISTORY_N, start: float = 0.0) -> HistorySegment:
        theta = np.linspace(-1.0, 0.0, N + 1)
        return HistorySegment(np.asarray(self.derivative(start + theta), dtype=float))


def cosine_fixture(omega: float = math.pi / 2) -> PeriodicSolution:
    """
    x(t) = cos(omega t), the explicit periodic solution of x' = -omega x(t-1)
    when omega = pi/2.
    """
    return PeriodicSolution(
        lambda t: np.cos(omega * np.asarray(t, dtype=float)),
        lambda t: -omega * np.sin(omega * np.asarray(t, dtype=float)),
        2.0 * math.pi / omega,
    )
