"""Jacobi theta_3, the quarter period K and dn through its Fourier series."""

import cmath
import logging
import math

from sfpsd.errors import DomainError, EvaluationOverflowError, NonConvergenceError
from sfpsd.specialfn.series import (
    DEFAULT_CONTROL,
    EvalResult,
    Number,
    SeriesControl,
    as_complex,
    as_real,
)

logger = logging.getLogger(__name__)

_TWO_PI = 2.0 * math.pi


def _nome(q: Number, allow_zero: bool) -> float:
    q = as_real(q, "q")
    low_ok = q >= 0 if allow_zero else q > 0
    if not (low_ok and q < 1):
        interval = "[0, 1)" if allow_zero else "(0, 1)"
        raise DomainError(f"nome q must lie in {interval}", q=q)
    return q


def theta3(v: Number, q: Number, control: SeriesControl = DEFAULT_CONTROL) -> EvalResult:
    """theta_3 = sum_{n in Z} q^(n^2) e^(2 pi i n v), summed as paired +-n terms.

    The lattice sum stops at the first N past the peak with
    q^(N^2) e^(2 pi |Im v| N) < abs_eps.

    Examples:
        theta3(0, 0.1).value    # 1.200200002
        theta3(0.5, 0.1).value  # 0.8001999980
    """
    v = as_complex(v)
    q = _nome(q, allow_zero=True)
    if q == 0:
        return EvalResult(1.0, 0.0, 1)
    log_q = math.log(q)
    growth = _TWO_PI * abs(v.imag)
    log_floor = math.log(control.abs_eps) if control.abs_eps > 0 else -745.0
    peak = growth / (-2.0 * log_q)
    total = complex(1.0)
    phase = 2j * math.pi * v
    n = 0
    try:
        while True:
            n += 1
            if n > control.max_terms:
                raise NonConvergenceError("theta3 lattice sum hit max_terms", v=str(v), q=q)
            base = n * n * log_q
            total += cmath.exp(base + n * phase) + cmath.exp(base - n * phase)
            if n > peak and base + growth * n < log_floor:
                break
    except OverflowError as e:
        raise EvaluationOverflowError("theta3 terms overflow", v=str(v), q=q) from e
    err = 2.0 * math.exp(max(-745.0, (n + 1) ** 2 * log_q + growth * (n + 1)))
    return EvalResult(total, err + 1e-16 * abs(total), n)


def quarter_period(q: Number, control: SeriesControl = DEFAULT_CONTROL) -> float:
    """K = (pi/2) theta_3(0, q)^2."""
    t = theta3(0.0, q, control).value.real
    return 0.5 * math.pi * t * t


def jacobi_dn(v: Number, q: Number, control: SeriesControl = DEFAULT_CONTROL) -> EvalResult:
    """dn(2Kv) = (pi/K) sum_{n in Z} q^n/(1+q^(2n)) e^(2 n pi v i).

    Args:
        v: Complex argument in units of 2K
        q: Nome in (0, 1); q * e^(2 pi |Im v|) < 1 is required

    Raises:
        DomainError: nome out of range or the series does not converge
    """
    v = as_complex(v)
    q = _nome(q, allow_zero=False)
    growth = _TWO_PI * abs(v.imag)
    log_ratio = math.log(q) + growth
    if log_ratio >= 0:
        raise DomainError("dn series needs q * exp(2 pi |Im v|) < 1", v=str(v), q=q)
    ratio = math.exp(log_ratio)
    big_k = quarter_period(q, control)
    log_q = math.log(q)
    phase = 2j * math.pi * v
    total = complex(0.5)
    n = 0
    while True:
        n += 1
        if n > control.max_terms:
            raise NonConvergenceError("dn Fourier sum hit max_terms", v=str(v), q=q)
        base = n * log_q - math.log1p(q ** (2 * n))
        total += cmath.exp(base + n * phase) + cmath.exp(base - n * phase)
        tail = 2.0 * math.exp((n + 1) * log_ratio) / (1.0 - ratio)
        if control.negligible(tail, abs(total)):
            break
    scale = math.pi / big_k
    logger.debug("jacobi_dn(%s, %s): %d Fourier terms", v, q, n)
    return EvalResult(scale * total, scale * (tail + 1e-16 * n), n)
