# ==========================================
# kyorbit — Error Hierarchy
# ==========================================

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_NUMERICAL = 2
EXIT_USAGE = 3


class KyorbitError(Exception):
    """
    Base error. Carries the module it was raised from and the CLI exit code.
    """

    exit_code = EXIT_NUMERICAL

    def __init__(self, message: str, module: str = "kyorbit"):
        super().__init__(message)
        self.module = module

    def __str__(self) -> str:
        return f"[{self.module}] {self.args[0]}"


# ---- validation failures (exit 1) ----

class ValidationError(KyorbitError, ValueError):
    exit_code = EXIT_VALIDATION


class SymmetryViolation(ValidationError):
    pass


class FeedbackIndefinite(ValidationError):
    pass


class FeedbackMismatch(ValidationError):
    pass


class UnboundParameter(ValidationError):
    pass


class UnknownBuiltin(ValidationError):
    pass


class LocallyConstantMap(ValidationError):
    pass


class InvalidBracket(ValidationError):
    pass


class ExprSyntaxError(ValidationError):
    """
    Syntax error in a nonlinearity expression, with the byte offset of the
    offending token and what the parser expected there.
    """

    def __init__(self, message: str, offset: int, expected: str = ""):
        super().__init__(f"{message} at offset {offset}", module="expr")
        self.offset = offset
        self.expected = expected


# ---- numerical failures (exit 2) ----

class NumericalError(KyorbitError, RuntimeError):
    exit_code = EXIT_NUMERICAL


class DomainError(NumericalError):
    pass


class NoReturn(NumericalError):
    pass


class ClosureFailure(NumericalError):
    pass


class StepFailure(NumericalError):
    pass


class BlowUp(NumericalError):
    pass


class RootIterationLimit(NumericalError):
    pass


class EigenFailure(NumericalError):
    pass


class ZeroSegment(NumericalError):
    pass


# ---- usage (exit 3) ----

class ConfigError(KyorbitError, ValueError):
    exit_code = EXIT_USAGE
