# ==========================================
# DDE — Sign Changes and Zero Number
# ==========================================
#
# z+ rounds the sign-change count up to the next even number, z- up to the
# next odd number. Along solutions of monotone-feedback equations both are
# non-increasing in time.

import logging

import numpy as np

from config import settings
from calculators.nonlinearity import Feedback
from calculators.dde.history import HistorySegment
from utils.errors import ZeroSegment
from utils.num_utils import count_sign_changes

logger = logging.getLogger(__name__)

ZERO_TOL = 1e-14


def _refined_values(h: HistorySegment, refine_steps: int) -> np.ndarray:
    """
    Samples, the interpolant at its interior extrema (a root pair inside one
    mesh cell leaves both end samples with the same sign) and the interpolant
    on a 2**refine_steps subdivision of every mesh cell touching a detected
    alternation.
    """
    extrema = h.critical_points()
    if extrema.size:
        theta = np.union1d(h.theta, extrema)
        v = np.asarray(h(theta))
        v[np.searchsorted(theta, h.theta)] = h.samples
    else:
        theta, v = h.theta, h.samples
    s = np.sign(np.where(np.abs(v) > ZERO_TOL, v, 0.0))
    cells = set()
    last = None
    for k in range(v.size):
        if s[k] == 0:
            continue
        if last is not None and s[k] != s[last]:
            for c in range(max(0, last - 1), min(v.size - 1, k + 1)):
                cells.add(c)
        last = k
    if not cells:
        return v
    sub = 2 ** refine_steps
    pieces = [theta]
    for c in sorted(cells):
        pieces.append(np.linspace(theta[c], theta[c + 1], sub + 1)[1:-1])
    grid = np.sort(np.concatenate(pieces))
    return np.asarray(h(grid))


def sign_changes(h: HistorySegment, refine_steps: int = settings.SIGN_REFINE_STEPS) -> int:
    """
    Number of strict sign alternations of the segment, zeros dropped.
    """
    if np.max(np.abs(h.samples)) <= ZERO_TOL:
        raise ZeroSegment("Segment is identically zero", module="dde")
    return count_sign_changes(_refined_values(h, refine_steps), zero_tol=ZERO_TOL)


def zero_number(h: HistorySegment, feedback: Feedback) -> int:
    """
    z+(h) = sc if sc is even else sc+1; z-(h) = sc if sc is odd else sc+1.
    """
    sc = sign_changes(h)
    return parity_round(sc, Feedback(feedback))


def parity_round(sc: int, feedback: Feedback) -> int:
    if feedback is Feedback.POSITIVE:
        return sc if sc % 2 == 0 else sc + 1
    return sc if sc % 2 == 1 else sc + 1
