# ==========================================
# Period Map — Sampling, Slopes, Classification
# ==========================================

import logging
from dataclasses import dataclass
from enum import Enum

import numpy as np

from config import settings
from calculators.nonlinearity import spring_character
from calculators.planar import period_at_zero, return_time
from utils.num_utils import fmt17, richardson, validate_at_least, validate_positive
from utils.parallel import ordered_map

logger = logging.getLogger(__name__)


class Classification(str, Enum):
    SOFT_SPRING = "soft_spring"
    HARD_SPRING = "hard_spring"
    NON_MONOTONE = "non_monotone"
    LOCALLY_CONSTANT = "locally_constant"


@dataclass(frozen=True)
class SlopeEstimate:
    value: float
    error: float

    @property
    def significant(self) -> bool:
        return abs(self.value) > settings.NOISE_FACTOR * self.error


@dataclass(frozen=True)
class PeriodMapTable:
    nl: object
    amplitudes: np.ndarray
    periods: np.ndarray
    slopes: np.ndarray
    slope_errors: np.ndarray
    classification: Classification
    plateau_tol: float
    noise_factor: float = settings.NOISE_FACTOR

    @property
    def feedback(self):
        return self.nl.feedback

    @property
    def period_at_zero(self) -> float:
        return float(self.periods[0])

    def rows(self) -> list:
        """
        CSV rows (header a,T,dT,classification) with 17 significant digits.
        """
        out = [["a", "T", "dT", "classification"]]
        for a, T, dT in zip(self.amplitudes, self.periods, self.slopes):
            out.append([fmt17(a), fmt17(T), fmt17(dT), self.classification.value])
        return out

    def interior_extrema(self) -> list:
        """
        Indices i where the grid slope changes sign significantly between i and i+1.
        """
        s = self.slopes
        sig = np.abs(s) > self.noise_factor * self.slope_errors
        found = []
        for i in range(1, s.size - 2):
            if s[i] == 0 or np.sign(s[i]) == np.sign(s[i + 1]):
                continue
            if (sig[i - 1] or sig[i]) and (sig[i + 1] or sig[i + 2]):
                found.append(i)
        return found


def amplitude_grid(a_max: float, m: int) -> np.ndarray:
    """
    {0} followed by m positive amplitudes: uniform on (0, a_max/4], geometric
    on (a_max/4, a_max].
    """
    m_uniform = max(2, m // 4)
    quarter = a_max / 4.0
    uniform = quarter * np.arange(1, m_uniform + 1) / m_uniform
    geometric = np.geomspace(quarter, a_max, m - m_uniform + 1)[1:]
    return np.concatenate([[0.0], uniform, geometric])


def _derivative_weights(nodes: np.ndarray, x0: float) -> np.ndarray:
    # moment conditions sum_j w_j (x_j - x0)^k = k! delta_{k1}
    k = np.arange(nodes.size)
    V = (nodes[None, :] - x0) ** k[:, None]
    rhs = np.zeros(nodes.size)
    rhs[1] = 1.0
    return np.linalg.solve(V, rhs)


def _stencil(i: int, size: int, count: int) -> slice:
    lo = min(max(0, i - size // 2), count - size)
    return slice(lo, lo + size)


def grid_slopes(a: np.ndarray, T: np.ndarray) -> tuple:
    """
    Slopes on a non-uniform grid: a 5-point derivative with the 3-point
    estimate as its lower-order companion; the difference is the error
    estimate. One-sided stencils at the ends.
    """
    slopes = np.empty_like(a)
    errors = np.empty_like(a)
    for i in range(a.size):
        s3 = _stencil(i, 3, a.size)
        s5 = _stencil(i, 5, a.size)
        d3 = _derivative_weights(a[s3], a[i]) @ T[s3]
        d5 = _derivative_weights(a[s5], a[i]) @ T[s5]
        slopes[i] = d5
        errors[i] = abs(d5 - d3)
    return slopes, errors


def classify(periods: np.ndarray, slopes: np.ndarray, errors: np.ndarray,
             plateau_tol: float, noise_factor: float = settings.NOISE_FACTOR) -> Classification:
    """
    hard_spring needs every interior slope negative and soft_spring every one
    positive; any sign change, significant or not, is non_monotone.
    """
    if np.max(np.abs(periods - periods[0])) < plateau_tol:
        return Classification.LOCALLY_CONSTANT
    interior = slopes[1:-1]
    sig = np.abs(interior) > noise_factor * errors[1:-1]
    if np.all(interior < 0):
        return Classification.HARD_SPRING
    if np.all(interior > 0):
        return Classification.SOFT_SPRING
    signs = np.sign(interior[sig])
    if not (signs.size and np.any(signs[1:] != signs[:-1])):
        logger.warning("Period map slopes change sign only within noise")
    return Classification.NON_MONOTONE


def sample(nl, a_max: float = settings.A_MAX, m: int = settings.GRID_M) -> PeriodMapTable:
    """
    Samples T_f on amplitude_grid(a_max, m); the a=0 entry is period_at_zero.
    """
    validate_positive(a_max, "a_max")
    validate_at_least(m, 16, "m")

    a = amplitude_grid(a_max, m)
    T = np.empty_like(a)
    T[0] = period_at_zero(nl)
    T[1:] = ordered_map(lambda amp: return_time(nl, amp)[0], a[1:])

    slopes, errors = grid_slopes(a, T)
    plateau_tol = settings.PLATEAU_REL_TOL * T[0]
    classification = classify(T, slopes, errors, plateau_tol)
    if classification is Classification.LOCALLY_CONSTANT:
        logger.warning("Period map of %s is locally constant; orbit conclusions are suppressed",
                       nl.describe())

    spring = spring_character(nl)
    if (spring == "soft" and classification is Classification.HARD_SPRING) or (
            spring == "hard" and classification is Classification.SOFT_SPRING):
        logger.warning("Nonlinearity is %s-spring but the period map classifies as %s",
                       spring, classification.value)

    logger.info("Sampled T_f on %d amplitudes in [0, %g]: %s", a.size, a_max, classification.value)
    return PeriodMapTable(
        nl=nl,
        amplitudes=a,
        periods=T,
        slopes=slopes,
        slope_errors=errors,
        classification=classification,
        plateau_tol=plateau_tol,
    )


def slope(nl, a: float, rel_step: float = settings.SLOPE_REL_STEP) -> SlopeEstimate:
    """
    T_f'(a) by central differences with h = rel_step*max(1, a), Richardson-
    extrapolated with h and h/2.
    """
    validate_positive(a, "Amplitude a")
    h = rel_step * max(1.0, a)
    if a - h < settings.MIN_AMPLITUDE:
        h = 0.5 * a

    def period(x):
        return return_time(nl, x)[0]

    d_h = (period(a + h) - period(a - h)) / (2.0 * h)
    d_h2 = (period(a + h / 2) - period(a - h / 2)) / h
    value, error = richardson(d_h, d_h2, order=2)
    logger.debug("T_f'(%g) = %.6g +/- %.2g", a, value, error)
    return SlopeEstimate(float(value), float(error))


def extrapolate_to_zero(table: PeriodMapTable) -> float:
    """
    Limit of T_f(a) as a -> 0 from dedicated small amplitudes (scaled down
    with a_max below 1), using that T_f is even in a: T = c0 + c1 a^2 + c2 a^4.
    """
    scale = min(1.0, float(table.amplitudes[-1]))
    a = np.maximum(scale * np.asarray(settings.ZERO_LIMIT_AMPLITUDES), 10 * settings.MIN_AMPLITUDE)
    T = np.array(ordered_map(lambda amp: return_time(table.nl, amp)[0], a))
    V = np.vstack([np.ones(3), a ** 2, a ** 4]).T
    return float(np.linalg.solve(V, T)[0])
