# ==========================================
# Orbit — Branch Amplitudes from T_f(a) = 4/(4n-1) or 4/(4n-3)
# ==========================================

import logging
from dataclasses import dataclass

from scipy.optimize import brentq

from config import settings
from calculators.nonlinearity import Feedback
from calculators.orbit.morse import morse_index
from calculators.periodmap import RealizablePeriod, realizable_value, slope
from calculators.planar import return_time
from utils.errors import InvalidBracket, RootIterationLimit

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class OrbitRecord:
    amplitude: float
    period: float
    n: int
    feedback: Feedback
    slope: float
    slope_err: float
    hyperbolic: bool
    morse_index: int
    solution: object  # planar DenseSolution covering one minimal period from (amplitude, 0)

    @property
    def realizable_value(self) -> float:
        return realizable_value(self.feedback, self.n)

    def as_dict(self) -> dict:
        return {
            "amplitude": self.amplitude,
            "period": self.period,
            "n": self.n,
            "feedback": self.feedback.value,
            "slope": self.slope,
            "slope_err": self.slope_err,
            "hyperbolic": self.hyperbolic,
            "morse_index": self.morse_index,
        }


def _record(nl, rp: RealizablePeriod, a: float) -> OrbitRecord:
    T, sol = return_time(nl, a)
    est = slope(nl, a)
    hyperbolic = abs(est.value) > settings.NOISE_FACTOR * est.error
    index = morse_index(rp.feedback, rp.n, est.value, hyperbolic)
    if not hyperbolic:
        logger.warning("Orbit n=%d at a=%.6g is not hyperbolic (T'=%.3g +/- %.2g)",
                       rp.n, a, est.value, est.error)
    return OrbitRecord(
        amplitude=float(a),
        period=float(T),
        n=rp.n,
        feedback=rp.feedback,
        slope=est.value,
        slope_err=est.error,
        hyperbolic=hyperbolic,
        morse_index=index,
        solution=sol,
    )


def solve_branch(nl, rp: RealizablePeriod, bracket: tuple, tol: float = settings.ROOT_TOL,
                 max_evals: int = settings.ROOT_MAX_EVALS) -> OrbitRecord:
    """
    Amplitude x with T_f(x) = rp.value inside `bracket`, by Brent's bracketing
    method, and the corresponding OrbitRecord.
    Raises RootIterationLimit when |T_f(x) - rp.value| is not below `tol`.
    """
    a_lo, a_hi = (float(v) for v in bracket)
    evals = 0

    def g(a):
        nonlocal evals
        evals += 1
        if evals > max_evals:
            raise RootIterationLimit(f"More than {max_evals} period evaluations", module="orbit")
        return return_time(nl, a)[0] - rp.value

    g_lo, g_hi = g(a_lo), g(a_hi)
    if g_lo == 0.0:
        root = a_lo
    elif g_hi == 0.0:
        root = a_hi
    elif (g_lo < 0) == (g_hi < 0):
        raise InvalidBracket(
            f"T_f - {rp.value:.6g} has the same sign at a={a_lo:g} and a={a_hi:g}: no bracket",
            module="orbit",
        )
    else:
        try:
            root = brentq(g, a_lo, a_hi, xtol=1e-15, rtol=8.9e-16, maxiter=max_evals)
        except RuntimeError as exc:
            raise RootIterationLimit(str(exc), module="orbit")

    rec = _record(nl, rp, root)
    miss = abs(rec.period - rp.value)
    if miss >= tol:
        raise RootIterationLimit(
            f"Branch n={rp.n}: |T_f(x)-{rp.value:.6g}| = {miss:.3g} not below tolerance {tol:.1g}",
            module="orbit",
        )
    logger.info("Branch n=%d: amplitude %.12g, morse index %d (%d period evaluations)",
                rp.n, root, rec.morse_index, evals)
    return rec


def orbit_at_amplitude(nl, rp: RealizablePeriod, a: float) -> OrbitRecord:
    """
    OrbitRecord at a prescribed amplitude without root finding. Only meaningful
    when T_f(a) already equals rp.value, as for linear nonlinearities.
    """
    return _record(nl, rp, a)


def solve_all(nl, crossings: list, tol: float = settings.ROOT_TOL) -> list:
    """
    One OrbitRecord per crossing bracket, sorted by branch and amplitude.
    """
    from utils.parallel import ordered_map

    records = ordered_map(lambda c: solve_branch(nl, c.rp, c.bracket, tol), crossings)
    return sorted(records, key=lambda r: (r.n, r.amplitude))
