# ==========================================
# kyorbit — Numerical Utilities
# ==========================================

import numpy as np

from utils.errors import ConfigError


def validate_positive(value: float, name: str = "Value") -> float:
    """
    Ensures parameter is positive.
    """
    if not value > 0:
        raise ConfigError(f"{name} must be positive.", module="config")
    return value


def validate_at_least(value: int, minimum: int, name: str = "Value") -> int:
    """
    Ensures an integer parameter is at least `minimum`.
    """
    if int(value) != value or value < minimum:
        raise ConfigError(f"{name} must be an integer >= {minimum}.", module="config")
    return int(value)


def fmt17(x: float) -> str:
    """
    Formats a float with 17 significant digits (round-trip exact for doubles).
    """
    return f"{float(x):.17g}"


def richardson(d_h: float, d_h2: float, order: int = 2) -> tuple:
    """
    Richardson extrapolation of two estimates with step h and h/2 for a
    method of the given order. Returns (extrapolated value, error estimate).
    """
    factor = 2.0 ** order
    value = (factor * d_h2 - d_h) / (factor - 1.0)
    return value, abs(value - d_h2)


def central_step(x: float, rel: float = 1e-5) -> float:
    """
    Step h = max(rel, rel*|x|) for central differences.
    """
    return max(rel, rel * abs(x))


def five_point(fun, x: float, h: float) -> float:
    """
    Fourth-order central difference of a scalar function at x.
    """
    return (-fun(x + 2 * h) + 8 * fun(x + h) - 8 * fun(x - h) + fun(x - 2 * h)) / (12 * h)


def count_sign_changes(values: np.ndarray, zero_tol: float = 0.0) -> int:
    """
    Number of strict sign alternations in a sequence after dropping zeros.
    """
    v = np.asarray(values, dtype=float)
    v = v[np.abs(v) > zero_tol]
    if v.size < 2:
        return 0
    s = np.sign(v)
    return int(np.count_nonzero(s[1:] != s[:-1]))

