"""Convergence policy and result record shared by every evaluator."""

from dataclasses import dataclass
import cmath
import math
from typing import Union

from sfpsd.errors import DomainError, EvaluationOverflowError

ComplexValue = complex
Number = Union[int, float, complex]


@dataclass(frozen=True)
class SeriesControl:
    """Truncation policy for series, products and lattice sums.

    Args:
        rel_eps: Relative tolerance on the accumulated value
        abs_eps: Absolute floor below which terms are negligible
        max_terms: Hard cap; evaluators raise NonConvergenceError past it
    """

    rel_eps: float = 1e-14
    abs_eps: float = 1e-300
    max_terms: int = 10_000

    def __post_init__(self):
        if not self.rel_eps > 0:
            raise DomainError("rel_eps must be > 0", rel_eps=self.rel_eps)
        if self.abs_eps < 0:
            raise DomainError("abs_eps must be >= 0", abs_eps=self.abs_eps)
        if self.max_terms < 1:
            raise DomainError("max_terms must be >= 1", max_terms=self.max_terms)

    def negligible(self, term: float, total: float) -> bool:
        """True when a term (or tail bound) no longer moves the total."""
        return term <= self.rel_eps * total + self.abs_eps


DEFAULT_CONTROL = SeriesControl()


@dataclass(frozen=True)
class EvalResult:
    value: complex
    err_estimate: float
    terms_used: int

    def __post_init__(self):
        v = complex(self.value)
        if cmath.isnan(v):
            raise DomainError("evaluation produced NaN")
        if cmath.isinf(v):
            raise EvaluationOverflowError("evaluation overflowed the double range")
        object.__setattr__(self, "value", v)
        err = float(self.err_estimate)
        object.__setattr__(self, "err_estimate", err if math.isfinite(err) and err >= 0 else 0.0)

    @property
    def real(self) -> float:
        return self.value.real

    def to_dict(self) -> dict:
        return {
            "value": [self.value.real, self.value.imag],
            "err_estimate": self.err_estimate,
            "terms_used": self.terms_used,
        }


def as_complex(x: Number) -> complex:
    z = complex(x)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError("argument must be finite", value=str(x))
    return z


def as_real(x: Number, name: str = "argument") -> float:
    z = complex(x)
    if z.imag != 0:
        raise DomainError(f"{name} must be real", value=str(x))
    if not math.isfinite(z.real):
        raise DomainError(f"{name} must be finite", value=str(x))
    return z.real
