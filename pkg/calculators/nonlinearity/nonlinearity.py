# ==========================================
# Nonlinearity — Build, Validate, Differentiate
# ==========================================
#
# Membership in the even-odd symmetric, monotone-feedback classes is checked
# on a bounded sample grid. The report is a sampled certificate, not a proof.

import logging
import math
from dataclasses import dataclass, field, replace
from enum import Enum

import numpy as np

from config import settings
from parsers.expr import NON_SMOOTH, Expression, bind, depends_on, free_names, functions_used, parse
from calculators.nonlinearity.builtins import FORMULAS, make_builtin
from utils.errors import (
    FeedbackIndefinite,
    FeedbackMismatch,
    SymmetryViolation,
    UnboundParameter,
)
from utils.num_utils import central_step, five_point, validate_at_least, validate_positive

logger = logging.getLogger(__name__)


class Feedback(str, Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"

    @property
    def sign(self) -> int:
        return 1 if self is Feedback.POSITIVE else -1


@dataclass(frozen=True)
class SymmetryReport:
    grid_extent: float
    grid_n: int
    tol: float
    max_even_defect: float
    max_odd_defect: float
    min_abs_d2: float
    d2_sign_changes: bool
    non_smooth: tuple = ()

    @property
    def even_ok(self) -> bool:
        return self.max_even_defect <= self.tol

    @property
    def odd_ok(self) -> bool:
        return self.max_odd_defect <= self.tol

    @property
    def feedback_ok(self) -> bool:
        return not self.d2_sign_changes and self.min_abs_d2 >= self.tol

    def as_dict(self) -> dict:
        return {
            "grid_extent": self.grid_extent,
            "grid_n": self.grid_n,
            "tol": self.tol,
            "max_even_defect": self.max_even_defect,
            "max_odd_defect": self.max_odd_defect,
            "min_abs_d2": self.min_abs_d2,
            "even_ok": self.even_ok,
            "odd_ok": self.odd_ok,
            "feedback_ok": self.feedback_ok,
            "non_smooth": list(self.non_smooth),
        }


@dataclass(frozen=True)
class Nonlinearity:
    label: str
    body: object  # Expression or builtin tag
    params: dict
    feedback: Feedback
    partial_mode: str  # 'analytic' or 'central-difference'
    validation: SymmetryReport
    scale: float = 1.0
    _f: object = field(default=None, repr=False, compare=False)
    _analytic: object = field(default=None, repr=False, compare=False)

    def __call__(self, xi: float, eta: float) -> float:
        return self.scale * self._f(xi, eta)

    def partials(self, xi: float, eta: float) -> tuple:
        if self._analytic is not None:
            d1, d2 = self._analytic(xi, eta)
        else:
            d1, d2 = _central_partials(self._f, xi, eta)
        return self.scale * d1, self.scale * d2

    @property
    def is_builtin(self) -> bool:
        return isinstance(self.body, str)

    @property
    def xi_independent(self) -> bool:
        return self.is_builtin or not depends_on(self.body, "xi")

    def describe(self) -> str:
        text = FORMULAS[self.body] if self.is_builtin else str(self.body)
        if self.scale != 1.0:
            text = f"{self.scale:g}*({text})"
        return text


def _central_partials(fun, xi: float, eta: float) -> tuple:
    h1 = central_step(xi)
    h2 = central_step(eta)
    d1 = five_point(lambda s: fun(s, eta), xi, h1)
    d2 = five_point(lambda s: fun(xi, s), eta, h2)
    return d1, d2


def finite_difference_partials(nl: Nonlinearity, xi: float, eta: float) -> tuple:
    """
    Central-difference partials regardless of partial_mode (cross-check for
    the analytic builtin derivatives).
    """
    d1, d2 = _central_partials(nl._f, xi, eta)
    return nl.scale * d1, nl.scale * d2


def partials(nl: Nonlinearity, xi: float, eta: float) -> tuple:
    return nl.partials(xi, eta)


def _validate(fun, partial_fun, scale: float, extent: float, n: int, tol: float,
              non_smooth: tuple) -> SymmetryReport:
    """
    Absolute even and odd defects |f(xi,eta) - f(-xi,eta)| and
    |f(xi,eta) + f(xi,-eta)| over the square grid, plus the d2 f range.
    """
    axis = np.linspace(-extent, extent, n)
    even = 0.0
    odd = 0.0
    min_d2 = math.inf
    signs = set()
    for xi in axis:
        for eta in axis:
            value = scale * fun(xi, eta)
            mirrored = scale * fun(-xi, eta)
            flipped = scale * fun(xi, -eta)
            even = max(even, abs(value - mirrored))
            odd = max(odd, abs(value + flipped))
            d2 = scale * partial_fun(xi, eta)[1]
            min_d2 = min(min_d2, abs(d2))
            if d2 != 0.0:
                signs.add(d2 > 0)
    return SymmetryReport(
        grid_extent=float(extent),
        grid_n=int(n),
        tol=float(tol),
        max_even_defect=float(even),
        max_odd_defect=float(odd),
        min_abs_d2=float(min_d2),
        d2_sign_changes=len(signs) > 1,
        non_smooth=non_smooth,
    )


def _finish(label, body, params, fun, analytic, scale, extent, n, tol, declared, non_smooth):
    validate_positive(extent, "grid_extent")
    validate_at_least(n, 8, "grid_n")

    partial_fun = analytic if analytic is not None else (lambda x, y: _central_partials(fun, x, y))
    report = _validate(fun, partial_fun, scale, extent, n, tol, non_smooth)

    if not report.even_ok:
        raise SymmetryViolation(
            f"f(xi,eta) != f(-xi,eta): even defect {report.max_even_defect:.3g} > tol {tol:g}",
            module="nonlinearity",
        )
    if not report.odd_ok:
        raise SymmetryViolation(
            f"f(xi,eta) != -f(xi,-eta): odd defect {report.max_odd_defect:.3g} > tol {tol:g}",
            module="nonlinearity",
        )

    d2_origin = scale * partial_fun(0.0, 0.0)[1]
    if report.d2_sign_changes or report.min_abs_d2 < tol or d2_origin == 0.0:
        raise FeedbackIndefinite(
            f"d2 f changes sign or |d2 f| < {tol:g} on the grid (min |d2 f| = {report.min_abs_d2:.3g})",
            module="nonlinearity",
        )
    feedback = Feedback.POSITIVE if d2_origin > 0 else Feedback.NEGATIVE
    if declared is not None and Feedback(declared) is not feedback:
        raise FeedbackMismatch(
            f"Declared feedback {Feedback(declared).value} but d2 f(0,0) = {d2_origin:.6g}",
            module="nonlinearity",
        )
    if non_smooth:
        logger.warning("Nonlinearity uses %s, which are not C^2 everywhere; "
                       "conclusions may not apply", ", ".join(non_smooth))

    nl = Nonlinearity(
        label=label,
        body=body,
        params=dict(params),
        feedback=feedback,
        partial_mode="analytic" if analytic is not None else "central-difference",
        validation=report,
        scale=scale,
        _f=fun,
        _analytic=analytic,
    )
    logger.debug("Built %s: feedback=%s, even=%.3g, odd=%.3g", nl.describe(), feedback.value,
                 report.max_even_defect, report.max_odd_defect)
    return nl


def build(
    body,
    params: dict | None = None,
    grid_extent: float = settings.GRID_EXTENT,
    grid_n: int = settings.GRID_N,
    tol: float | None = None,
    feedback: str | None = None,
) -> Nonlinearity:
    """
    Builds a validated Nonlinearity from an Expression (or source text) or a
    builtin tag. Feedback sign is inferred from d2 f(0,0); a declared sign must
    agree with it.
    """
    params = {k: float(v) for k, v in (params or {}).items()}

    if isinstance(body, str) and body in FORMULAS:
        return builtin(body, params, grid_extent=grid_extent, grid_n=grid_n, tol=tol, feedback=feedback)

    expression = body if isinstance(body, Expression) else parse(body)
    missing = free_names(expression) - set(params)
    if missing:
        raise UnboundParameter(f"Unbound parameters: {', '.join(sorted(missing))}",
                               module="nonlinearity")
    unused = set(params) - free_names(expression)
    if unused:
        logger.warning("Parameters not used by the expression: %s", ", ".join(sorted(unused)))
    fun = bind(expression, params)
    non_smooth = tuple(sorted(functions_used(expression) & NON_SMOOTH))
    return _finish(
        str(expression), expression, params, fun, None, 1.0, grid_extent, grid_n,
        settings.EXPR_SYMMETRY_TOL if tol is None else tol, feedback, non_smooth,
    )


def builtin(
    name: str,
    params: dict | None = None,
    grid_extent: float = settings.GRID_EXTENT,
    grid_n: int = settings.GRID_N,
    tol: float | None = None,
    feedback: str | None = None,
) -> Nonlinearity:
    """
    Builds one of the builtin families (linear, cubic_hard, tanh_soft, sinh,
    mixed_spring); the sign of alpha sets the feedback.
    """
    fun, analytic, resolved = make_builtin(name, params or {})
    return _finish(
        name, name, resolved, fun, analytic, 1.0, grid_extent, grid_n,
        settings.BUILTIN_SYMMETRY_TOL if tol is None else tol, feedback, (),
    )


def scaled(nl: Nonlinearity, alpha: float) -> Nonlinearity:
    """
    The nonlinearity alpha*f for alpha > 0. Feedback is preserved; defects
    and d2 bounds scale with alpha.
    """
    validate_positive(alpha, "Scaling factor alpha")
    v = nl.validation
    report = replace(
        v,
        max_even_defect=v.max_even_defect * alpha,
        max_odd_defect=v.max_odd_defect * alpha,
        min_abs_d2=v.min_abs_d2 * alpha,
    )
    return replace(nl, scale=nl.scale * alpha, validation=report)


def spring_character(nl: Nonlinearity, extent: float | None = None, n: int = 256) -> str:
    """
    Classifies q(eta) = |f(0,eta)/eta| on (0, extent]: 'soft' when strictly
    decreasing, 'hard' when strictly increasing, 'linear' when constant,
    'neither' otherwise. Nonlinearities depending on xi give 'xi_dependent'.
    """
    if not nl.xi_independent:
        return "xi_dependent"
    extent = nl.validation.grid_extent if extent is None else extent
    eta = np.linspace(extent / n, extent, n)
    q = np.array([abs(nl(0.0, e) / e) for e in eta])
    dq = np.diff(q)
    flat = np.abs(dq) <= 1e-12 * np.maximum(1.0, np.abs(q[1:]))
    if np.all(flat):
        return "linear"
    if np.all(dq < 0):
        return "soft"
    if np.all(dq > 0):
        return "hard"
    return "neither"
