"""Lerch transcendent Phi(z, s, a) for real z < 1."""

import cmath
import logging
import math

import numpy as np

from sfpsd.errors import DomainError
from sfpsd.specialfn.gamma import gamma
from sfpsd.specialfn.quadrature import NodeSet, integrate
from sfpsd.specialfn.series import (
    DEFAULT_CONTROL,
    EvalResult,
    Number,
    SeriesControl,
    as_complex,
    as_real,
)

logger = logging.getLogger(__name__)


def _series_terms_needed(z: float, control: SeriesControl) -> float:
    if z == 0:
        return 1
    return math.log(control.rel_eps * (1.0 - abs(z))) / math.log(abs(z)) + 1


def _lerch_series(z: float, s: complex, a: float, control: SeriesControl) -> EvalResult:
    r = abs(z)
    total = complex(0.0)
    zn = 1.0
    n = 0
    while True:
        term = zn * cmath.exp(-s * math.log(n + a))
        total += term
        n += 1
        zn *= z
        # |z^n (n+a)^-s| is non-increasing for Re(s) >= 0
        tail = abs(term) * r / (1.0 - r)
        if control.negligible(tail, abs(total)):
            return EvalResult(total, tail + 1e-16 * n * abs(total), n)


def lerch_integrand(z: float, s: complex, a: float):
    """x^(s-1) e^(-a x) / (1 - z e^(-x)) on (0, inf), vectorised over a NodeSet."""

    def f(nodes: NodeSet) -> np.ndarray:
        x = nodes.x
        log_x = np.log(nodes.dist_lo)
        with np.errstate(over="ignore", under="ignore"):
            body = np.exp((s - 1.0) * log_x - a * x)
            return body / (1.0 - z * np.exp(-x))

    return f


def lerch_phi(
    z: Number, s: Number, a: Number, control: SeriesControl = DEFAULT_CONTROL
) -> EvalResult:
    """Lerch transcendent Phi(z, s, a) = sum_{n>=0} z^n / (n+a)^s.

    For |z| < 1 the defining series with a geometric tail bound is summed. For
    z <= -1 (and for |z| so close to 1 that the series would exceed max_terms)
    the integral representation Gamma(s) Phi = int_0^inf x^(s-1) e^(-ax) /
    (1 - z e^(-x)) dx is evaluated by exp-sinh quadrature.

    Raises:
        DomainError: z >= 1, a <= 0 or Re(s) <= 0

    Examples:
        lerch_phi(0.5, 1, 1).value  # 1.3862943611 = 2 ln 2
    """
    z = as_real(z, "z")
    s = as_complex(s)
    a = as_real(a, "a")
    if z >= 1:
        raise DomainError("lerch_phi needs z < 1", z=z)
    if a <= 0:
        raise DomainError("lerch_phi needs a > 0", a=a)
    if s.real <= 0:
        raise DomainError("lerch_phi needs Re(s) > 0", s=str(s))
    if z == 0:
        return EvalResult(cmath.exp(-s * math.log(a)), 0.0, 1)

    if abs(z) < 1 and _series_terms_needed(z, control) <= control.max_terms:
        logger.debug("lerch_phi(%s, %s, %s) via series", z, s, a)
        return _lerch_series(z, s, a, control)

    logger.debug("lerch_phi(%s, %s, %s) via integral", z, s, a)
    target = max(control.rel_eps, 1e-13)
    quad = integrate(lerch_integrand(z, s, a), "half", lo=0.0, target_eps=target)
    g = gamma(s)
    value = complex(quad.value) / g.value
    err = quad.err_estimate / abs(g.value) + abs(value) * g.err_estimate / abs(g.value)
    return EvalResult(value, err, quad.nodes)
