"""Double-exponential quadrature: tanh-sinh, exp-sinh and sinh-sinh rules.

Rules are generated as numpy node sets so that integrands can be evaluated
for many point functions at once (the Gram oracle integrates whole matrices).
Each level halves the trapezoid step; integration stops when two
consecutive levels agree.
"""

from dataclasses import dataclass
import logging
import math
from typing import Callable, Literal, Union

import numpy as np

from sfpsd.errors import DomainError, QuadratureNoConvergence

logger = logging.getLogger(__name__)

DomainKind = Literal["finite", "half", "line"]

_HALF_PI = 0.5 * math.pi
# Truncation of the t-axis per rule; chosen so the transformed abscissae stay
# representable and the weights have decayed below 1e-200.
_T_FINITE = 6.0
_T_HALF_LOW = 6.5
_T_HALF_HIGH = 4.5
_T_LINE = 4.5
_START_STEP = 0.5


@dataclass(frozen=True)
class NodeSet:
    """Abscissae and weights of one quadrature level.

    `dist_lo`/`dist_hi` hold the exact distances to the endpoints of a finite
    interval, computed without cancellation, so integrands with endpoint
    singularities can use them instead of `x - lo`.
    """

    x: np.ndarray
    w: np.ndarray
    dist_lo: np.ndarray
    dist_hi: np.ndarray
    step: float

    def __len__(self) -> int:
        return int(self.x.size)


@dataclass(frozen=True)
class QuadResult:
    value: Union[complex, np.ndarray]
    err_estimate: float
    levels: int
    nodes: int


def _t_grid(t_neg: float, t_pos: float, step: float) -> np.ndarray:
    """Trapezoid grid on [-t_neg, t_pos] through t = 0."""
    return np.arange(-math.ceil(t_neg / step), math.ceil(t_pos / step) + 1) * step


def finite_nodes(lo: float, hi: float, step: float) -> NodeSet:
    """tanh-sinh on [lo, hi]: x = mid + half * tanh((pi/2) sinh t)."""
    if not hi > lo:
        raise DomainError("finite rule needs hi > lo", lo=lo, hi=hi)
    half = 0.5 * (hi - lo)
    t = _t_grid(_T_FINITE, _T_FINITE, step)
    u = _HALF_PI * np.sinh(t)
    e = np.exp(-2.0 * np.abs(u))
    # distance from the nearer endpoint, 2 half e / (1 + e)
    near = 2.0 * half * e / (1.0 + e)
    far = 2.0 * half - near
    positive = t >= 0
    dist_hi = np.where(positive, near, far)
    dist_lo = np.where(positive, far, near)
    x = np.where(positive, hi - near, lo + near)
    w = half * _HALF_PI * np.cosh(t) * 4.0 * e / (1.0 + e) ** 2 * step
    return NodeSet(x, w, dist_lo, dist_hi, step)


def half_line_nodes(lo: float, step: float) -> NodeSet:
    """exp-sinh on [lo, inf): x = lo + exp((pi/2) sinh t)."""
    t = _t_grid(_T_HALF_LOW, _T_HALF_HIGH, step)
    d = np.exp(_HALF_PI * np.sinh(t))
    w = d * _HALF_PI * np.cosh(t) * step
    return NodeSet(lo + d, w, d, np.full_like(d, np.inf), step)


def line_nodes(step: float) -> NodeSet:
    """sinh-sinh on the real line: x = sinh((pi/2) sinh t)."""
    t = _t_grid(_T_LINE, _T_LINE, step)
    u = _HALF_PI * np.sinh(t)
    x = np.sinh(u)
    w = np.cosh(u) * _HALF_PI * np.cosh(t) * step
    inf = np.full_like(x, np.inf)
    return NodeSet(x, w, inf, inf, step)


def de_nodes(kind: DomainKind, step: float, lo: float = 0.0, hi: float = 1.0) -> NodeSet:
    """Node set of the named rule at trapezoid step `step`."""
    if kind == "finite":
        return finite_nodes(lo, hi, step)
    if kind == "half":
        return half_line_nodes(lo, step)
    if kind == "line":
        return line_nodes(step)
    raise DomainError(f"unknown quadrature domain {kind!r}")


def integrate(
    integrand: Callable[[NodeSet], np.ndarray],
    kind: DomainKind,
    lo: float = 0.0,
    hi: float = 1.0,
    target_eps: float = 1e-12,
    max_levels: int = 10,
    abs_floor: float = 1e-300,
) -> QuadResult:
    """Integrate a vectorised integrand with level refinement.

    Args:
        integrand: Maps a NodeSet to values of shape (m,) or (m, ...)
            (m = number of nodes); non-finite values from underflowing
            factors are treated as zero contributions only when the weight
            is zero
        kind: "finite", "half" or "line"
        lo: Lower endpoint (finite and half-line rules)
        hi: Upper endpoint (finite rule)
        target_eps: Relative agreement required between consecutive levels
        max_levels: Number of step halvings allowed

    Returns:
        QuadResult whose value is a complex scalar or an array matching the
        trailing shape of the integrand values

    Raises:
        QuadratureNoConvergence: consecutive levels never agreed
    """
    previous = None
    step = _START_STEP
    total_nodes = 0
    for level in range(max_levels + 1):
        nodes = de_nodes(kind, step, lo, hi)
        values = np.asarray(integrand(nodes))
        total_nodes += len(nodes)
        weights = nodes.w.reshape((-1,) + (1,) * (values.ndim - 1))
        with np.errstate(invalid="ignore", over="ignore"):
            contrib = np.where(weights == 0, 0.0, values * weights)
        if not np.all(np.isfinite(contrib)):
            raise QuadratureNoConvergence(
                "integrand produced non-finite values", kind=kind, level=level
            )
        current = contrib.sum(axis=0)
        if previous is not None:
            diff = float(np.max(np.abs(current - previous)))
            scale = float(np.max(np.abs(current)))
            if diff <= target_eps * scale + abs_floor:
                logger.debug(
                    "%s quadrature converged at level %d (%d nodes, diff %.2e)",
                    kind, level, total_nodes, diff,
                )
                value = complex(current) if current.ndim == 0 else current
                return QuadResult(value, diff, level, total_nodes)
        previous = current
        step *= 0.5
    raise QuadratureNoConvergence(
        "consecutive quadrature levels never agreed",
        kind=kind,
        target_eps=target_eps,
        levels=max_levels,
    )


def integrate_function(
    f: Callable[[np.ndarray], np.ndarray],
    kind: DomainKind,
    lo: float = 0.0,
    hi: float = 1.0,
    target_eps: float = 1e-12,
    max_levels: int = 10,
) -> QuadResult:
    """Scalar convenience wrapper: f receives the abscissae only."""
    return integrate(lambda nodes: f(nodes.x), kind, lo, hi, target_eps, max_levels)
