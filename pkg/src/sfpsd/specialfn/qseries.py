"""q-series building blocks: q-Pochhammer, q-Gamma, elliptic theta and shifted factorials."""

import logging
import math
from typing import Union

from sfpsd.errors import DomainError, NonConvergenceError, ZeroFactorError
from sfpsd.specialfn.series import (
    DEFAULT_CONTROL,
    EvalResult,
    Number,
    SeriesControl,
    as_complex,
    as_real,
)

logger = logging.getLogger(__name__)

INFINITE = math.inf
Count = Union[int, float]


def _base(q: Number, name: str = "q", allow_zero: bool = True) -> float:
    q = as_real(q, name)
    low_ok = q >= 0 if allow_zero else q > 0
    if not (low_ok and q < 1):
        raise DomainError(f"{name} must lie in {'[0, 1)' if allow_zero else '(0, 1)'}", **{name: q})
    return q


def q_pochhammer(
    z: Number, q: Number, n: Count = INFINITE, control: SeriesControl = DEFAULT_CONTROL
) -> EvalResult:
    """(z; q)_n = prod_{k<n} (1 - z q^k); n may be math.inf.

    The infinite product stops at the first N with |z| q^N < rel_eps.

    Examples:
        q_pochhammer(0.5, 0.5).value  # 0.2887880951...
    """
    z = as_complex(z)
    q = _base(q)
    if n != INFINITE:
        if int(n) != n or n < 0:
            raise DomainError("q_pochhammer needs an integer n >= 0 or math.inf", n=n)
        prod = complex(1.0)
        for k in range(int(n)):
            prod *= 1.0 - z * q**k
        return EvalResult(prod, 1e-16 * int(n) * abs(prod), int(n))

    prod = complex(1.0)
    size = abs(z)
    k = 0
    while True:
        qk = q**k
        if size * qk < control.rel_eps and k > 0:
            break
        if k >= control.max_terms:
            raise NonConvergenceError("q_pochhammer product hit max_terms", z=str(z), q=q)
        prod *= 1.0 - z * qk
        k += 1
    tail = size * q**k / (1.0 - q)
    return EvalResult(prod, abs(prod) * (tail + 1e-16 * k), k)


def gamma_q(x: Number, q: Number, control: SeriesControl = DEFAULT_CONTROL) -> EvalResult:
    """q-Gamma: (q;q)_inf (1-q)^(1-x) / (q^x;q)_inf for 0 < q < 1, x > 0."""
    x = as_real(x, "x")
    q = _base(q, allow_zero=False)
    if x <= 0:
        raise DomainError("gamma_q needs x > 0", x=x)
    num = q_pochhammer(q, q, INFINITE, control)
    den = q_pochhammer(q**x, q, INFINITE, control)
    value = num.value.real * (1.0 - q) ** (1.0 - x) / den.value.real
    rel = num.err_estimate / abs(num.value) + den.err_estimate / abs(den.value)
    return EvalResult(value, rel * abs(value), num.terms_used + den.terms_used)


def elliptic_theta(x: Number, p: Number, control: SeriesControl = DEFAULT_CONTROL) -> EvalResult:
    """Modified elliptic theta function theta(x; p) = (x, p/x; p)_inf."""
    x = as_complex(x)
    p = _base(p, "p")
    if x == 0:
        raise DomainError("elliptic_theta needs x != 0")
    left = q_pochhammer(x, p, INFINITE, control)
    right = q_pochhammer(p / x, p, INFINITE, control)
    value = left.value * right.value
    err = abs(left.value) * right.err_estimate + abs(right.value) * left.err_estimate
    return EvalResult(value, err, left.terms_used + right.terms_used)


def elliptic_pochhammer(
    a: Number, q: Number, p: Number, n: int, control: SeriesControl = DEFAULT_CONTROL
) -> EvalResult:
    """Elliptic shifted factorial (a; q, p)_n for any integer n.

    n > 0: prod_{k<n} theta(a q^k; p); n = 0: 1;
    n < 0: 1 / prod_{k<-n} theta(a q^(n+k); p).

    Raises:
        ZeroFactorError: a reciprocal theta factor vanishes
    """
    a = as_complex(a)
    q = _base(q, allow_zero=False)
    _base(p, "p")
    if int(n) != n:
        raise DomainError("elliptic_pochhammer needs an integer n", n=n)
    n = int(n)
    if n == 0:
        return EvalResult(1.0, 0.0, 0)
    start, count = (0, n) if n > 0 else (n, -n)
    prod = complex(1.0)
    rel = 0.0
    terms = 0
    for k in range(count):
        factor = elliptic_theta(a * q ** (start + k), p, control)
        prod *= factor.value
        if factor.value != 0:
            rel += factor.err_estimate / abs(factor.value)
        terms += factor.terms_used
    if n > 0:
        return EvalResult(prod, rel * abs(prod), terms)
    if abs(prod) < 1e-300:
        raise ZeroFactorError("reciprocal elliptic factor vanishes", a=str(a), n=n)
    value = 1.0 / prod
    return EvalResult(value, rel * abs(value), terms)
