"""
Exception hierarchy for the form class group toolkit.
Every error knows the process exit code the command line maps it to.
"""


class FormClassError(Exception):
    """Base class for all errors raised by the library."""

    exit_code = 3

    @property
    def kind(self):
        return type(self).__name__

    def to_json(self):
        return {"error": str(self), "kind": self.kind}


class InvalidInput(FormClassError):
    exit_code = 1


class DivideByZero(FormClassError, ZeroDivisionError):
    exit_code = 3


class ResidualTooLarge(FormClassError):
    """Rounding to an integer failed; the caller should retry at higher precision."""

    exit_code = 2

    def __init__(self, residual, message=None):
        self.residual = residual
        super().__init__(message or f"rounding residual {float(residual):.3e} exceeds tolerance")


class PrecisionExhausted(FormClassError):
    exit_code = 2


class NonNegativeInput(FormClassError):
    exit_code = 1


class BadDiscriminant(FormClassError):
    exit_code = 1


class DiscMismatch(FormClassError):
    exit_code = 1


class NotPrimeToN(FormClassError):
    exit_code = 1


class NotInLevelSet(FormClassError):
    exit_code = 1


class IncompatibleLevels(FormClassError):
    exit_code = 1


class AmbiguousClass(FormClassError):
    exit_code = 3


class ParityViolation(FormClassError):
    exit_code = 3


class NotPrimitive(FormClassError):
    exit_code = 3


class VerificationFailed(FormClassError):
    exit_code = 3


class FactorTimeout(FormClassError):
    exit_code = 3

    def __init__(self, partial, message=None):
        self.partial = partial
        super().__init__(message or "factorization budget exhausted")


class LeadingCoeffVanishes(FormClassError):
    exit_code = 1


class PDividesD(FormClassError):
    exit_code = 1


class ExcludedPrime(FormClassError):
    exit_code = 1


class ConditionViolated(FormClassError):
    """A hypothesis of the congruence theorem fails; `condition` is 'i', 'ii' or 'iii'."""

    exit_code = 1

    def __init__(self, condition, message):
        self.condition = condition
        super().__init__(f"condition ({condition}) violated: {message}")

    def to_json(self):
        payload = super().to_json()
        payload["condition"] = self.condition
        return payload
