# ==========================================
# Planar ODE — Symmetry and Geometry Checks
# ==========================================
#
# Numerical verification of the rotation/reflection identities satisfied by
# orbits of the planar ODE.

import logging
from dataclasses import dataclass

import numpy as np

from config import settings
from calculators.nonlinearity import Feedback
from calculators.planar.integrator import PlanarState, integrate
from calculators.planar.return_time import return_time

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SymmetryResiduals:
    amplitude: float
    period: float
    feedback: Feedback
    shift_correct: float   # |eta(t) - xi(t - s)| with the shift implied by feedback
    shift_wrong: float     # the same with the other quarter shift
    xi_even: float         # |xi(t) - xi(-t)|
    eta_odd: float         # |eta(t) + eta(-t)|

    def as_dict(self) -> dict:
        return {
            "amplitude": self.amplitude,
            "period": self.period,
            "feedback": self.feedback.value,
            "shift_correct": self.shift_correct,
            "shift_wrong": self.shift_wrong,
            "xi_even": self.xi_even,
            "eta_odd": self.eta_odd,
        }


def symmetry_residuals(nl, a: float, samples: int = settings.SYMMETRY_SAMPLES) -> SymmetryResiduals:
    """
    Residuals of eta(t) = xi(t - 3T/4) (positive feedback) or
    eta(t) = xi(t - T/4) (negative feedback), and of the reversibility
    identities xi(t) = xi(-t), eta(t) = -eta(-t), over `samples` times.
    """
    T, sol = return_time(nl, a)
    backward = integrate(nl, PlanarState(a, 0.0), -T)

    def periodic(t):
        return sol(np.mod(t, T))

    ts = np.linspace(0.0, T, samples, endpoint=False)
    forward = sol(ts)
    quarter = 0.75 * T if nl.feedback is Feedback.POSITIVE else 0.25 * T
    other = 0.25 * T if nl.feedback is Feedback.POSITIVE else 0.75 * T

    correct = np.max(np.abs(forward[:, 1] - periodic(ts - quarter)[:, 0]))
    wrong = np.max(np.abs(forward[:, 1] - periodic(ts - other)[:, 0]))
    mirrored = backward(-ts)
    xi_even = np.max(np.abs(forward[:, 0] - mirrored[:, 0]))
    eta_odd = np.max(np.abs(forward[:, 1] + mirrored[:, 1]))

    return SymmetryResiduals(
        amplitude=float(a),
        period=float(T),
        feedback=nl.feedback,
        shift_correct=float(correct),
        shift_wrong=float(wrong),
        xi_even=float(xi_even),
        eta_odd=float(eta_odd),
    )


def rotate(s: PlanarState) -> PlanarState:
    """
    rho(xi, eta) = (eta, -xi).
    """
    return PlanarState(s.eta, -s.xi)


def reflect(s: PlanarState) -> PlanarState:
    """
    sigma(xi, eta) = (xi, -eta).
    """
    return PlanarState(s.xi, -s.eta)


def winding_number(sol, T: float, samples: int = 2048) -> int:
    """
    Signed number of turns of the trajectory about the origin over [0, T];
    positive is counterclockwise.
    """
    ts = np.linspace(0.0, T, samples + 1)
    pts = sol(ts)
    angles = np.unwrap(np.arctan2(pts[:, 1], pts[:, 0]))
    return int(round((angles[-1] - angles[0]) / (2.0 * np.pi)))


def orbit_distance(sol_a, T_a: float, sol_b, T_b: float, samples: int = 512) -> float:
    """
    Minimum distance between two sampled closed orbits.
    """
    pa = sol_a(np.linspace(0.0, T_a, samples, endpoint=False))
    pb = sol_b(np.linspace(0.0, T_b, samples, endpoint=False))
    diff = pa[:, None, :] - pb[None, :, :]
    return float(np.sqrt(np.min(np.sum(diff * diff, axis=-1))))
