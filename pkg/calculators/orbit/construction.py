# ==========================================
# Orbit — Periodic DDE Solution from a Planar Orbit
# ==========================================

import numpy as np

from calculators.dde.history import PeriodicSolution
from utils.num_utils import fmt17


def construct_solution(rec) -> PeriodicSolution:
    """
    x*(t) = xi(x, t), extended periodically; the history on [-1, 0] is read off
    the second planar coordinate through x*(t-1) = eta(x, t).
    """
    return PeriodicSolution.from_planar(rec.solution, rec.period)


def history_from_planar(x: PeriodicSolution, N: int):
    """
    The initial segment x*_0 on [-1, 0] built from eta(theta + 1).
    """
    from calculators.dde.history import HistorySegment

    theta = np.linspace(-1.0, 0.0, N + 1)
    return HistorySegment(x.delayed_planar(theta + 1.0))


def odd_symmetry_defect(x: PeriodicSolution, samples: int = 512) -> float:
    """
    max |x*(t-2) + x*(t)| over one period.
    """
    ts = np.linspace(0.0, x.period, samples, endpoint=False)
    return float(np.max(np.abs(x(ts - 2.0) + x(ts))))


def solution_rows(x: PeriodicSolution, points: int) -> list:
    """
    CSV rows t,x on [-1, T].
    """
    ts = np.linspace(-1.0, x.period, points)
    xs = x(ts)
    return [["t", "x"]] + [[fmt17(t), fmt17(v)] for t, v in zip(ts, xs)]
