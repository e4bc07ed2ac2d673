# ==========================================
# DDE — Discretized Monodromy Operator
# ==========================================
#
# Linearization along a periodic solution x*:
#   y'(t) = A(t) y(t) + B(t) y(t-1)
#   A(t) = d1 f(x*(t), x*(t-1)),  B(t) = d2 f(x*(t), x*(t-1))
#
# Every basis history (unit sample at one mesh node, cubic spline in
# between) is propagated by the method of steps; all N+1 columns are carried
# as one vector ODE.

import logging
from dataclasses import dataclass

import numpy as np
from scipy.interpolate import CubicSpline

from config import settings
from calculators.planar.integrator import solve_dense
from utils.num_utils import validate_at_least, validate_positive

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LinearizationCoefficients:
    nl: object
    x: object

    def __call__(self, t: float) -> tuple:
        return self.nl.partials(float(self.x(t)), float(self.x(t - 1.0)))

    def sample(self, ts) -> np.ndarray:
        """
        Array of shape (len(ts), 2) with columns A, B.
        """
        return np.array([self(t) for t in np.atleast_1d(ts)])


def monodromy(nl, x, period: float, N: int = settings.MONODROMY_N,
              rtol: float = settings.DDE_RTOL, atol: float = settings.ATOL,
              coefficients=None) -> np.ndarray:
    """
    (N+1)x(N+1) matrix of the time-`period` solution operator of the
    linearized equation on the uniform history mesh theta_k = -1 + k/N.
    Column j is the sampled image of basis history e_j.

    `coefficients` overrides the linearization (a callable t -> (A, B)).
    """
    validate_at_least(N, settings.MONODROMY_MIN_N, "Monodromy mesh N")
    validate_positive(period, "period")
    coeff = coefficients if coefficients is not None else LinearizationCoefficients(nl, x)

    theta = np.linspace(-1.0, 0.0, N + 1)
    basis = CubicSpline(theta, np.eye(N + 1), axis=0)

    def delayed_from(piece):
        if piece is None:
            return lambda s: basis(s)
        return lambda s: piece(s)

    pieces = []
    y = np.eye(N + 1)[-1].copy()  # y_j(0) = e_j(0)
    t = 0.0
    prev = None
    while t < period:
        t1 = min(t + 1.0, period)
        delayed = delayed_from(prev)

        def rhs(s, yv, delayed=delayed):
            a, b = coeff(s)
            return a * yv + b * delayed(s - 1.0)

        piece = solve_dense(rhs, y, t, t1, rtol, atol, module="dde", autonomous=False)
        pieces.append(piece)
        prev = piece
        y = piece.y[-1].copy()
        t = t1

    # sample y on [period - 1, period]; times <= 0 fall back to the basis
    starts = np.array([p.t[0] for p in pieces])
    out = np.empty((N + 1, N + 1))
    for k, th in enumerate(theta):
        s = period + th
        if s <= 0.0:
            out[k] = basis(s)
            continue
        idx = int(np.clip(np.searchsorted(starts, s, side="right") - 1, 0, len(pieces) - 1))
        out[k] = pieces[idx](s)
    logger.debug("Monodromy over %.6g with N=%d from %d method-of-steps pieces", period, N, len(pieces))
    return out
