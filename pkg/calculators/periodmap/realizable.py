# ==========================================
# Realizable Periods
# ==========================================
#
# Positive feedback: 4/(4n-1), n = 1, 2, ...
# Negative feedback: 4/(4n-3), n = 1, 2, ...

from dataclasses import dataclass

from calculators.nonlinearity import Feedback
from utils.num_utils import validate_at_least


@dataclass(frozen=True)
class RealizablePeriod:
    n: int
    value: float
    feedback: Feedback

    @property
    def marker(self) -> str:
        # figure convention: triangle for negative feedback, square for positive
        return "^" if self.feedback is Feedback.NEGATIVE else "s"


def realizable_value(feedback: Feedback, n: int) -> float:
    validate_at_least(n, 1, "Branch index n")
    if feedback is Feedback.POSITIVE:
        return 4.0 / (4 * n - 1)
    return 4.0 / (4 * n - 3)


def realizable(feedback: Feedback, n_max: int) -> list:
    """
    The first n_max realizable periods for the given feedback sign.
    """
    validate_at_least(n_max, 1, "n_max")
    feedback = Feedback(feedback)
    return [RealizablePeriod(n, realizable_value(feedback, n), feedback) for n in range(1, n_max + 1)]
