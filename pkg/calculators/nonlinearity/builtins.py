# ==========================================
# Builtin Nonlinearity Families
# ==========================================
#
# All families are of Kaplan-Yorke form f(xi, eta) = g(eta), g odd, so
# d1 f vanishes identically and d2 f = g'(eta).

import math

from utils.errors import FeedbackIndefinite, UnboundParameter, UnknownBuiltin


def _linear(p):
    a = p["alpha"]
    return (lambda xi, eta: a * eta,
            lambda xi, eta: (0.0, a))


def _cubic_hard(p):
    a = p["alpha"]
    return (lambda xi, eta: a * (eta + eta ** 3),
            lambda xi, eta: (0.0, a * (1.0 + 3.0 * eta * eta)))


def _tanh_soft(p):
    a = p["alpha"]

    def d(xi, eta):
        c = math.cosh(eta)
        return 0.0, a / (c * c)

    return (lambda xi, eta: a * math.tanh(eta), d)


def _sinh(p):
    a = p["alpha"]
    return (lambda xi, eta: a * math.sinh(eta),
            lambda xi, eta: (0.0, a * math.cosh(eta)))


def _mixed_spring(p):
    # soft near the origin, hard at large amplitude: interior maximum of T_f
    a = p["alpha"]
    b = p["beta"]

    def d(xi, eta):
        c = math.cosh(eta)
        return 0.0, a * (1.0 / (c * c) + 3.0 * b * eta * eta)

    return (lambda xi, eta: a * (math.tanh(eta) + b * eta ** 3), d)


BUILTINS = {
    "linear": (_linear, {"alpha": None}),
    "cubic_hard": (_cubic_hard, {"alpha": None}),
    "tanh_soft": (_tanh_soft, {"alpha": None}),
    "sinh": (_sinh, {"alpha": None}),
    "mixed_spring": (_mixed_spring, {"alpha": None, "beta": 0.1}),
}

FORMULAS = {
    "linear": "alpha*eta",
    "cubic_hard": "alpha*(eta+eta^3)",
    "tanh_soft": "alpha*tanh(eta)",
    "sinh": "alpha*sinh(eta)",
    "mixed_spring": "alpha*(tanh(eta)+beta*eta^3)",
}


def make_builtin(name: str, params: dict) -> tuple:
    """
    Returns (f, partials, resolved_params) for a builtin family.
    """
    if name not in BUILTINS:
        raise UnknownBuiltin(
            f"Unknown builtin {name!r}; choose one of {', '.join(sorted(BUILTINS))}",
            module="nonlinearity",
        )
    factory, required = BUILTINS[name]
    resolved = {}
    for key, default in required.items():
        if key in params:
            resolved[key] = float(params[key])
        elif default is not None:
            resolved[key] = float(default)
        else:
            raise UnboundParameter(f"Builtin {name!r} requires parameter {key!r}",
                                   module="nonlinearity")
    extra = set(params) - set(required)
    if extra:
        raise UnknownBuiltin(f"Builtin {name!r} takes no parameters {sorted(extra)}",
                             module="nonlinearity")
    if resolved["alpha"] == 0.0:
        raise FeedbackIndefinite("alpha=0 gives d2 f = 0: feedback indefinite",
                                 module="nonlinearity")
    if name == "mixed_spring" and resolved["beta"] < 0:
        raise FeedbackIndefinite("mixed_spring requires beta >= 0", module="nonlinearity")
    f, partials = factory(resolved)
    return f, partials, resolved
