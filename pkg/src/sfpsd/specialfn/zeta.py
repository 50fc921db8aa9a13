"""Zeta family - Riemann, Dirichlet eta, Hurwitz, shifted polygamma and Riemann Xi."""

import cmath
import logging
import math
from typing import Literal

from sfpsd.errors import DomainError, NonConvergenceError, PoleError
from sfpsd.specialfn.gamma import gamma, log_gamma
from sfpsd.specialfn.series import (
    DEFAULT_CONTROL,
    EvalResult,
    Number,
    SeriesControl,
    as_complex,
    as_real,
)

logger = logging.getLogger(__name__)

ZetaMethod = Literal["auto", "eta", "euler_maclaurin"]

# B_2, B_4, ..., B_12 and the first omitted one, B_14
_BERNOULLI = (1 / 6, -1 / 30, 1 / 42, -1 / 30, 5 / 66, -691 / 2730)
_BERNOULLI_NEXT = 7 / 6
_LOG_BORWEIN_RATE = math.log(3.0 + math.sqrt(8.0))
_POLE_TOL = 1e-12
_ETA_SWITCH = 1e-4
_POLYGAMMA_EXPLICIT = 50


def _cpow_neg(base: float, s: complex) -> complex:
    """base**(-s) for base > 0."""
    return cmath.exp(-s * math.log(base))


def _em_tail(s: complex, base: float) -> tuple[complex, float]:
    """Euler-Maclaurin value of sum_{m>=0} (base + m)^(-s), with the size of the
    first omitted Bernoulli term as error estimate."""
    total = _cpow_neg(base, s - 1.0) / (s - 1.0) + 0.5 * _cpow_neg(base, s)
    rising = s  # (s)_{2k-1}
    factorial = 2.0  # (2k)!
    power = _cpow_neg(base, s + 1.0)
    inv_base_sq = 1.0 / (base * base)
    for k, b2k in enumerate(_BERNOULLI, start=1):
        total += b2k / factorial * rising * power
        rising *= (s + 2 * k - 1) * (s + 2 * k)
        factorial *= (2 * k + 1) * (2 * k + 2)
        power *= inv_base_sq
    err = abs(_BERNOULLI_NEXT / factorial * rising * power)
    return total, err


def _em_cutoff(s: complex, a: float) -> int:
    return max(0, math.ceil(max(12.0, 1.5 * abs(s)) - a))


def _hurwitz_em(s: complex, a: float) -> EvalResult:
    n_cut = _em_cutoff(s, a)
    head = complex(0.0)
    for n in range(n_cut):
        head += _cpow_neg(n + a, s)
    tail, err = _em_tail(s, n_cut + a)
    value = head + tail
    err += 1e-16 * (n_cut + 1) * max(1.0, abs(value))
    return EvalResult(value, err, n_cut + len(_BERNOULLI))


def _check_zeta_domain(s: complex) -> None:
    if abs(s - 1.0) < _POLE_TOL:
        raise PoleError("zeta has a pole at s = 1", s=str(s))
    if s.real <= 0:
        raise DomainError("only Re(s) > 0 is supported", s=str(s))


def dirichlet_eta(s: Number, control: SeriesControl = DEFAULT_CONTROL) -> EvalResult:
    """Dirichlet eta sum_{n>=1} (-1)^(n-1) n^(-s) for Re(s) > 0.

    The alternating series is accelerated with the Borwein (Euler-type)
    weights d_k; the number of weights grows with |Im(s)| so the documented
    error bound meets rel_eps.
    """
    s = as_complex(s)
    if s.real <= 0:
        raise DomainError("dirichlet_eta needs Re(s) > 0", s=str(s))
    t = abs(s.imag)
    # Bound: 3 (1 + 2|t|) e^{pi |t| / 2} / (|Gamma(s)| (3 + sqrt 8)^n)
    log_growth = math.log(3.0 * (1.0 + 2.0 * t)) + 0.5 * math.pi * t - log_gamma(s).real
    needed = math.ceil((log_growth - math.log(control.rel_eps)) / _LOG_BORWEIN_RATE) + 1
    n = max(10, needed)
    if n > control.max_terms:
        raise NonConvergenceError(
            "eta acceleration needs more terms than max_terms",
            s=str(s),
            needed=n,
            max_terms=control.max_terms,
        )
    # d_k = n * sum_{i<=k} (n+i-1)! 4^i / ((n-i)! (2i)!)
    d = [0.0] * (n + 1)
    term = 1.0
    acc = 1.0
    d[0] = 1.0
    for i in range(1, n + 1):
        term *= 4.0 * (n + i - 1) * (n - i + 1) / ((2 * i) * (2 * i - 1))
        acc += term
        d[i] = acc
    dn = d[n]
    total = complex(0.0)
    for k in range(n):
        sign = -1.0 if k % 2 else 1.0
        total += sign * (d[k] - dn) / dn * _cpow_neg(k + 1.0, s)
    value = -total
    err = math.exp(log_growth - n * _LOG_BORWEIN_RATE) + 1e-16 * n
    return EvalResult(value, err, n)


def zeta(
    s: Number,
    control: SeriesControl = DEFAULT_CONTROL,
    method: ZetaMethod = "auto",
) -> EvalResult:
    """Riemann zeta for Re(s) > 0, s != 1.

    Args:
        s: Complex argument
        control: Series truncation policy
        method: "eta" (accelerated eta quotient), "euler_maclaurin", or "auto"
            which uses eta unless |1 - 2^(1-s)| < 1e-4

    Raises:
        PoleError: |s - 1| < 1e-12
        DomainError: Re(s) <= 0

    Examples:
        zeta(2).value    # 1.6449340668...
        zeta(0.5).value  # -1.4603545088...
    """
    s = as_complex(s)
    _check_zeta_domain(s)
    factor = 1.0 - cmath.exp((1.0 - s) * math.log(2.0))
    if method == "auto":
        method = "euler_maclaurin" if abs(factor) < _ETA_SWITCH else "eta"
    if method == "euler_maclaurin":
        logger.debug("zeta(%s) via Euler-Maclaurin", s)
        return _hurwitz_em(s, 1.0)
    if method != "eta":
        raise DomainError(f"unknown zeta method {method!r}")
    if factor == 0:
        raise PoleError("1 - 2^(1-s) vanishes; use the Euler-Maclaurin route", s=str(s))
    logger.debug("zeta(%s) via accelerated eta quotient", s)
    eta = dirichlet_eta(s, control)
    value = eta.value / factor
    return EvalResult(value, eta.err_estimate / abs(factor), eta.terms_used)


def hurwitz_zeta(s: Number, a: Number, control: SeriesControl = DEFAULT_CONTROL) -> EvalResult:
    """Hurwitz zeta sum_{n>=0} (n+a)^(-s) by Euler-Maclaurin (Bernoulli terms through B12).

    Raises:
        PoleError: s = 1
        DomainError: a <= 0 or Re(s) <= 0
    """
    s = as_complex(s)
    a = as_real(a, "a")
    if a <= 0:
        raise DomainError("hurwitz_zeta needs a > 0", a=a)
    _check_zeta_domain(s)
    result = _hurwitz_em(s, a)
    if result.terms_used > control.max_terms:
        raise NonConvergenceError("hurwitz_zeta cutoff exceeds max_terms", s=str(s))
    return result


def polygamma_shift(p: int, x: Number, control: SeriesControl = DEFAULT_CONTROL) -> EvalResult:
    """(-1)^(p-1) psi^(p)(1+x) = p! * sum_{n>=1} (x+n)^(-p-1).

    Fifty explicit terms, then an Euler-Maclaurin tail.
    """
    if int(p) != p or p < 1:
        raise DomainError("polygamma_shift needs an integer order p >= 1", p=p)
    p = int(p)
    x = as_real(x, "x")
    if x < 0:
        raise DomainError("polygamma_shift needs x >= 0", x=x)
    s = complex(p + 1)
    head = 0.0
    for n in range(1, _POLYGAMMA_EXPLICIT + 1):
        head += (x + n) ** (-p - 1)
    tail, err = _em_tail(s, x + _POLYGAMMA_EXPLICIT + 1)
    scale = math.factorial(p)
    value = scale * (head + tail.real)
    return EvalResult(value, scale * err + 1e-16 * abs(value), _POLYGAMMA_EXPLICIT)


def riemann_xi(z: Number, control: SeriesControl = DEFAULT_CONTROL) -> EvalResult:
    """Riemann Xi(z) = -((1+4z^2) / (8 pi^((1+2iz)/4))) Gamma((1+2iz)/4) zeta((1+2iz)/2).

    Real on the real axis. Only the strip |Im(z)| < 1/2 is supported because
    zeta is implemented for Re(s) > 0 only.
    """
    z = as_complex(z)
    if abs(z.imag) >= 0.5:
        raise DomainError("riemann_xi needs |Im(z)| < 1/2", z=str(z))
    w = (1.0 + 2j * z) / 2.0
    g = gamma(w / 2.0)
    zt = zeta(w, control)
    prefactor = -(1.0 + 4.0 * z * z) / (8.0 * cmath.exp(0.5 * w * math.log(math.pi)))
    value = prefactor * g.value * zt.value
    if z.imag == 0:
        value = complex(value.real, 0.0)
    err = abs(prefactor) * (abs(g.value) * zt.err_estimate + abs(zt.value) * g.err_estimate)
    return EvalResult(value, err, zt.terms_used)
