# ==========================================
# DDE — Floquet Multipliers
# ==========================================

import logging
from dataclasses import dataclass

import numpy as np
from scipy.linalg import LinAlgError, eigvals

from config import settings
from calculators.dde.monodromy import monodromy
from utils.errors import EigenFailure

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FloquetSpectrum:
    multipliers: np.ndarray  # complex, sorted by modulus descending
    mesh: int
    period: float
    eps_spec: float
    unstable_count: int
    trivial_defect: float

    @property
    def moduli(self) -> np.ndarray:
        return np.abs(self.multipliers)

    def reported(self, floor: float = settings.MULTIPLIER_FLOOR) -> np.ndarray:
        """
        Multipliers above the compact-operator tail near 0.
        """
        return self.multipliers[self.moduli > floor]

    def leading(self, k: int) -> np.ndarray:
        return self.multipliers[:k]

    def as_dict(self) -> dict:
        return {
            "mesh": self.mesh,
            "period": float(self.period),
            "multipliers": [
                {"re": float(mu.real), "im": float(mu.imag), "abs": float(abs(mu))}
                for mu in self.reported()
            ],
            "unstable_count": self.unstable_count,
            "trivial_defect": float(self.trivial_defect),
        }


def floquet(m: np.ndarray, eps_spec: float = settings.EPS_SPEC, period: float = float("nan")) -> FloquetSpectrum:
    """
    Eigenvalues of a (discretized) monodromy matrix. unstable_count counts
    |mu| > 1 + eps_spec; trivial_defect is the distance from 1 to the
    nearest multiplier.
    """
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise EigenFailure(f"Monodromy matrix must be square, got {m.shape}", module="dde")
    try:
        mu = eigvals(m)
    except (LinAlgError, ValueError) as exc:
        raise EigenFailure(f"Eigenvalue computation failed: {exc}", module="dde")
    order = np.lexsort((-mu.imag, -mu.real, -np.abs(mu)))
    mu = mu[order]
    unstable = int(np.count_nonzero(np.abs(mu) > 1.0 + eps_spec))
    defect = float(np.min(np.abs(mu - 1.0)))
    return FloquetSpectrum(
        multipliers=mu,
        mesh=m.shape[0] - 1,
        period=float(period),
        eps_spec=float(eps_spec),
        unstable_count=unstable,
        trivial_defect=defect,
    )


def spectrum(nl, x, period: float, N: int = settings.MONODROMY_N,
             eps_spec: float = settings.EPS_SPEC) -> FloquetSpectrum:
    return floquet(monodromy(nl, x, period, N), eps_spec=eps_spec, period=period)


def floquet_converged(nl, x, period: float, N: int = settings.MONODROMY_N,
                      leading: int = 5) -> float:
    """
    Drift of the leading multiplier moduli between meshes N and 2N; logs a
    warning when it exceeds the drift tolerance.
    """
    coarse = spectrum(nl, x, period, N).moduli[:leading]
    fine = spectrum(nl, x, period, 2 * N).moduli[:leading]
    drift = float(np.max(np.abs(coarse - fine)))
    if drift >= settings.DRIFT_TOL:
        logger.warning("Leading multipliers drift by %.3g between N=%d and N=%d", drift, N, 2 * N)
    return drift


def half_period_candidates(spec: FloquetSpectrum, tol: float = 1e-8) -> list:
    """
    Real negative multipliers of a half-period spectrum, nearest to -1 first.
    Reported as candidates for the distinguished multiplier; not asserted.
    """
    mu = spec.reported()
    real_neg = [float(m.real) for m in mu if abs(m.imag) <= tol * max(1.0, abs(m)) and m.real < 0]
    return sorted(real_neg, key=lambda v: abs(v + 1.0))
