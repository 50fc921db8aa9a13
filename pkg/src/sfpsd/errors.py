"""Error hierarchy - every failure carries the CLI exit code it maps to."""

from typing import Any, Optional

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_NUMERIC = 2
EXIT_SPEC = 3


class SfpsdError(Exception):
    """Base class for all sfpsd failures."""

    exit_code: int = EXIT_NUMERIC

    def __init__(self, message: str, **context: Any):
        super().__init__(message)
        self.message = message
        self.context = context

    def to_dict(self) -> dict[str, Any]:
        return {"error": type(self).__name__, "message": self.message, **self.context}


# Numeric failures (exit 2)

class DomainError(SfpsdError, ValueError):
    """Argument outside the documented domain of an evaluator."""


class PoleError(DomainError):
    """Argument sits on (or within tolerance of) a pole."""


class NonConvergenceError(SfpsdError, ArithmeticError):
    """Series or product did not reach tolerance within the term cap."""


class QuadratureNoConvergence(NonConvergenceError):
    """Two consecutive quadrature levels never agreed to target."""


class EvaluationOverflowError(SfpsdError, OverflowError):
    """Result magnitude exceeds the double range."""


class ZeroFactorError(SfpsdError, ZeroDivisionError):
    """A reciprocal factor vanished."""


class TailTooLargeError(SfpsdError):
    """Truncated measure tail exceeds the requested accuracy."""


# Spec / input failures (exit 3)

class SpecError(SfpsdError, ValueError):
    exit_code = EXIT_SPEC

    def __init__(self, message: str, violations: Optional[list] = None, **context: Any):
        super().__init__(message, **context)
        self.violations = violations or []

    def to_dict(self) -> dict[str, Any]:
        data = super().to_dict()
        data["violations"] = [
            v.to_dict() if hasattr(v, "to_dict") else v for v in self.violations
        ]
        return data


class ConjugateSymmetryViolation(SpecError):
    """Kernel value failed the K(j,k) = conj(K(k,j)) self-check."""


class NonHermitianError(SfpsdError, ValueError):
    exit_code = EXIT_SPEC


class DimensionMismatchError(SfpsdError, ValueError):
    exit_code = EXIT_SPEC


class UnknownFunctionError(SfpsdError, KeyError):
    exit_code = EXIT_SPEC

    def __str__(self) -> str:
        return self.message


class ConfigError(SfpsdError):
    exit_code = EXIT_SPEC
