# ==========================================
# DDE — Residual of a Periodic Candidate
# ==========================================

import numpy as np

from config import settings


def residual(nl, x, samples: int = settings.RESIDUAL_SAMPLES) -> float:
    """
    sup over `samples` points of one period of |x'(t) - f(x(t), x(t-1))|,
    reading x(t-1) from the periodic extension of x.
    """
    ts = np.linspace(0.0, x.period, samples, endpoint=False)
    now = np.asarray(x(ts), dtype=float)
    delayed = np.asarray(x(ts - 1.0), dtype=float)
    slope = np.asarray(x.derivative(ts), dtype=float)
    rhs = np.array([nl(a, b) for a, b in zip(now, delayed)])
    return float(np.max(np.abs(slope - rhs)))
