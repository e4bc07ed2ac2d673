# ==========================================
# Period Map — Crossings with Realizable Periods
# ==========================================

import logging
from dataclasses import dataclass

import numpy as np

from config import settings
from calculators.periodmap.realizable import RealizablePeriod, realizable
from calculators.periodmap.sampling import Classification, PeriodMapTable
from calculators.planar import return_time
from utils.errors import LocallyConstantMap
from utils.parallel import ordered_map

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Crossing:
    rp: RealizablePeriod
    a_lo: float
    a_hi: float
    T_lo: float
    T_hi: float
    refined: bool = False
    tangential: bool = False

    @property
    def bracket(self) -> tuple:
        return self.a_lo, self.a_hi


def _lower_end(table: PeriodMapTable, i: int) -> float:
    # the a=0 entry is the equilibrium; brackets start just above it
    a = table.amplitudes
    return float(a[i]) if a[i] > 0 else max(settings.MIN_AMPLITUDE, 1e-3 * float(a[1]))


def _refine(table: PeriodMapTable, rp: RealizablePeriod, i: int) -> list:
    a_lo = _lower_end(table, i)
    a_hi = float(table.amplitudes[i + 1])
    sub = np.linspace(a_lo, a_hi, settings.TANGENCY_REFINE + 1)
    T = np.empty_like(sub)
    T[0], T[-1] = table.periods[i], table.periods[i + 1]
    T[1:-1] = ordered_map(lambda amp: return_time(table.nl, amp)[0], sub[1:-1])
    err = max(table.slope_errors[i], table.slope_errors[i + 1])

    found = []
    for j in range(sub.size - 1):
        d_lo, d_hi = T[j] - rp.value, T[j + 1] - rp.value
        if (d_lo < 0) == (d_hi < 0):
            continue
        secant = (T[j + 1] - T[j]) / (sub[j + 1] - sub[j])
        tangential = abs(secant) <= table.noise_factor * err
        found.append(Crossing(rp, float(sub[j]), float(sub[j + 1]), float(T[j]), float(T[j + 1]),
                              refined=True, tangential=tangential))
    return found


def crossings(table: PeriodMapTable, n_max: int, include_tangential: bool = False) -> list:
    """
    Brackets [a_lo, a_hi] where T_f(a) - value changes sign, for every
    realizable period of the table's feedback up to n_max. Crossings with a
    near-zero slope are refined 4x; those still flat are tangential
    (saddle-node candidates) and only returned when include_tangential is set.
    """
    if table.classification is Classification.LOCALLY_CONSTANT:
        raise LocallyConstantMap(
            "Period map is locally constant; crossing detection is refused",
            module="periodmap",
        )
    T = table.periods
    s = table.slopes
    e = table.slope_errors
    out = []
    for rp in realizable(table.feedback, n_max):
        d = T - rp.value
        for i in range(T.size - 1):
            if (d[i] < 0) == (d[i + 1] < 0):
                continue
            flat = min(abs(s[i]), abs(s[i + 1])) <= table.noise_factor * max(e[i], e[i + 1])
            if flat:
                logger.debug("Refining suspected tangency near a in [%g, %g] for n=%d",
                             table.amplitudes[i], table.amplitudes[i + 1], rp.n)
                found = _refine(table, rp, i)
            else:
                found = [Crossing(rp, _lower_end(table, i), float(table.amplitudes[i + 1]),
                                  float(T[i]), float(T[i + 1]))]
            for c in found:
                if c.tangential:
                    logger.warning("Tangential crossing of T=%g near a=%g: saddle-node candidate",
                                   rp.value, 0.5 * (c.a_lo + c.a_hi))
                if include_tangential or not c.tangential:
                    out.append(c)
    logger.info("Found %d crossings with realizable periods (n <= %d)", len(out), n_max)
    return out
