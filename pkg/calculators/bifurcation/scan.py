# ==========================================
# Bifurcation — Scan of the Scaling Parameter alpha in x' = alpha f
# ==========================================
#
# T_{alpha f}(a) = T_f(a) / alpha, so one unscaled table serves every alpha.
#   Hopf:        alpha = T_f(0) / value
#   Saddle-node: alpha = T_f(a_ext) / value at an interior extremum a_ext

import logging
from dataclasses import dataclass
from enum import Enum

import numpy as np

from calculators.periodmap import realizable
from utils.errors import InvalidBracket
from utils.num_utils import fmt17, validate_at_least, validate_positive

logger = logging.getLogger(__name__)


class EventKind(str, Enum):
    HOPF = "Hopf"
    SADDLE_NODE_CANDIDATE = "SaddleNodeCandidate"


@dataclass(frozen=True)
class Extremum:
    amplitude: float
    period: float
    slope_err: float


@dataclass(frozen=True)
class BifurcationEvent:
    kind: EventKind
    alpha: float
    n: int
    amplitude: float
    period: float
    slope_err: float = 0.0

    def as_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "alpha": self.alpha,
            "n": self.n,
            "amplitude": self.amplitude,
            "period": self.period,
            "slope_err": self.slope_err,
        }

    def row(self) -> list:
        return [fmt17(self.alpha), self.kind.value, str(self.n), fmt17(self.amplitude), fmt17(self.period)]


def extrema(table) -> list:
    """
    Interior extrema of T_f, each located by a quadratic fit over the five
    grid points around the slope sign change. Computed once per table.
    """
    a, T = table.amplitudes, table.periods
    out = []
    for i in table.interior_extrema():
        lo = max(0, min(i - 2, a.size - 5))
        window = slice(lo, lo + 5)
        c2, c1, c0 = np.polyfit(a[window], T[window], 2)
        if c2 == 0:
            continue
        a_ext = -c1 / (2.0 * c2)
        if not a[i] <= a_ext <= a[i + 1]:
            # fit vertex outside the sign-change cell: fall back to the cell midpoint
            a_ext = 0.5 * (a[i] + a[i + 1])
        T_ext = float(np.polyval([c2, c1, c0], a_ext))
        err = float(max(table.slope_errors[i], table.slope_errors[i + 1]))
        out.append(Extremum(float(a_ext), T_ext, err))
    return out


def scan(nl, table, alpha_range: tuple, n_max: int) -> list:
    """
    Hopf points and saddle-node candidates of x' = alpha f for alpha in
    alpha_range, sorted by alpha.
    """
    alpha_lo, alpha_hi = (float(v) for v in alpha_range)
    validate_positive(alpha_lo, "alpha_lo")
    if alpha_hi < alpha_lo:
        raise InvalidBracket(f"alpha range [{alpha_lo:g}, {alpha_hi:g}] is empty", module="bifurcation")
    validate_at_least(n_max, 1, "n_max")

    T0 = table.period_at_zero
    found_extrema = extrema(table)
    events = []
    for rp in realizable(nl.feedback, n_max):
        alpha = T0 / rp.value
        if alpha_lo <= alpha <= alpha_hi:
            events.append(BifurcationEvent(EventKind.HOPF, alpha, rp.n, 0.0, rp.value))
        for ext in found_extrema:
            alpha = ext.period / rp.value
            if alpha_lo <= alpha <= alpha_hi:
                events.append(BifurcationEvent(EventKind.SADDLE_NODE_CANDIDATE, alpha, rp.n,
                                               ext.amplitude, rp.value, ext.slope_err))
    events.sort(key=lambda e: (e.alpha, e.kind.value, e.n))
    logger.info("Bifurcation scan on [%g, %g]: %d events", alpha_lo, alpha_hi, len(events))
    return events


def orbit_count(table, alpha: float, n_max: int) -> dict:
    """
    Number of periodic orbits of x' = alpha f per branch n, counted as sign
    changes of T_f(a)/alpha - value along the sampled grid.
    """
    validate_positive(alpha, "alpha")
    scaled = table.periods / alpha
    counts = {}
    for rp in realizable(table.feedback, n_max):
        d = scaled - rp.value
        counts[rp.n] = int(np.count_nonzero((d[:-1] < 0) != (d[1:] < 0)))
    return counts


def rows(events: list) -> list:
    return [["alpha", "kind", "n", "amplitude", "period"]] + [e.row() for e in events]
