# ==========================================
# DDE — Method-of-Steps Simulation
# ==========================================
#
# On [k, k+1] the delayed value x(t-1) is known from the previous piece, so
# x' = f(x(t), x(t-1)) is a non-autonomous scalar ODE.

import logging
import math

import numpy as np

from config import settings
from calculators.planar.integrator import DenseSolution, solve_dense
from calculators.dde.history import HistorySegment
from utils.errors import BlowUp
from utils.num_utils import validate_positive

logger = logging.getLogger(__name__)


class DDESolution:
    """
    Scalar solution on [-1, t_max] stored as one dense piece per unit step.
    The first piece reproduces the history samples exactly.
    """

    def __init__(self, pieces: list):
        self.pieces = pieces
        self._starts = np.array([p.t[0] for p in pieces])

    @property
    def t_span(self) -> tuple:
        return float(self.pieces[0].t[0]), float(self.pieces[-1].t[-1])

    def _locate(self, t: np.ndarray) -> np.ndarray:
        idx = np.searchsorted(self._starts, t, side="right") - 1
        return np.clip(idx, 0, len(self.pieces) - 1)

    def _eval(self, t, method: str):
        tt = np.atleast_1d(np.asarray(t, dtype=float))
        out = np.empty_like(tt)
        idx = self._locate(tt)
        for k in np.unique(idx):
            mask = idx == k
            piece = self.pieces[k]
            out[mask] = np.asarray(getattr(piece, method)(tt[mask]))[:, 0]
        return out[0] if np.ndim(t) == 0 else out

    def __call__(self, t):
        return self._eval(t, "__call__")

    def derivative(self, t):
        return self._eval(t, "derivative")

    def segment(self, t: float, N: int = settings.HISTORY_N) -> HistorySegment:
        """
        The state x_t on [-1, 0] as a history segment.
        """
        theta = np.linspace(-1.0, 0.0, N + 1)
        return HistorySegment(self(t + theta))


def _history_piece(h: HistorySegment) -> DenseSolution:
    return DenseSolution(h.theta, h.samples, h.derivative(h.theta))


def simulate(nl, h: HistorySegment, t_max: float, rtol: float = settings.DDE_RTOL,
             atol: float = settings.ATOL) -> DDESolution:
    """
    Method-of-steps solution of x'(t) = f(x(t), x(t-1)) on [-1, t_max].
    """
    validate_positive(t_max, "t_max")
    pieces = [_history_piece(h)]
    x = float(h.samples[-1])
    k = 0
    while k < t_max:
        prev = pieces[-1]
        t0, t1 = float(k), float(min(k + 1, t_max))

        def rhs(t, y, prev=prev):
            return np.array([nl(y[0], float(prev(t - 1.0)[0]))])

        piece = solve_dense(rhs, [x], t0, t1, rtol, atol, module="dde", autonomous=False)
        peak = float(np.max(np.abs(piece.y)))
        if not math.isfinite(peak) or peak > settings.BLOWUP:
            raise BlowUp(f"|x| exceeded {settings.BLOWUP:g} on [{t0:g}, {t1:g}]", module="dde")
        pieces.append(piece)
        x = float(piece.y[-1, 0])
        k += 1
    logger.debug("Simulated %d unit steps", len(pieces) - 1)
    return DDESolution(pieces)


def trailing_amplitude_period(sol: DDESolution, window: float = 20.0, samples_per_unit: int = 200) -> tuple:
    """
    (max |x|, mean spacing of upward zero crossings) over the last `window`
    time units.
    """
    t_end = sol.t_span[1]
    ts = np.linspace(t_end - window, t_end, int(window * samples_per_unit) + 1)
    xs = sol(ts)
    amplitude = float(np.max(np.abs(xs)))
    up = np.nonzero((xs[:-1] < 0) & (xs[1:] >= 0))[0]
    if up.size < 2:
        return amplitude, math.nan
    # linear interpolation inside each bracketing interval
    crossings = ts[up] - xs[up] * (ts[up + 1] - ts[up]) / (xs[up + 1] - xs[up])
    return amplitude, float(np.mean(np.diff(crossings)))
