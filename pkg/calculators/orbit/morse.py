# ==========================================
# Orbit — Morse Index from the Period-Map Slope
# ==========================================
#
#                 T' >= 0     T' < 0
#   positive      2n - 1      2n
#   negative      2n - 2      2n - 1

from calculators.nonlinearity import Feedback
from utils.num_utils import validate_at_least


def morse_index(feedback: Feedback, n: int, slope: float, hyperbolic: bool = True) -> int:
    """
    Unstable dimension of the branch-n orbit. Non-hyperbolic orbits are put in
    the T' >= 0 row.
    """
    validate_at_least(n, 1, "Branch index n")
    decreasing = hyperbolic and slope < 0
    if Feedback(feedback) is Feedback.POSITIVE:
        return 2 * n if decreasing else 2 * n - 1
    return 2 * n - 1 if decreasing else 2 * n - 2


def morse_bounds(feedback: Feedback, n: int) -> tuple:
    """
    The two values the index can take on branch n.
    """
    if Feedback(feedback) is Feedback.POSITIVE:
        return 2 * n - 1, 2 * n
    return 2 * n - 2, 2 * n - 1
