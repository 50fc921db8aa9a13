"""Integral identities checked by quadrature against closed forms."""

from dataclasses import asdict, dataclass, field
import logging
import math
from typing import Any, Iterator, Sequence

import numpy as np

from sfpsd.errors import DomainError
from sfpsd.specialfn.gamma import gamma, log_gamma
from sfpsd.specialfn.qseries import gamma_q, q_pochhammer
from sfpsd.specialfn.quadrature import NodeSet, integrate

logger = logging.getLogger(__name__)

MP_TOL = 1e-8
AW_TOL = 1e-5


@dataclass(frozen=True)
class IdentityCheck:
    """lhs by quadrature, rhs in closed form; unpacks as (lhs, rhs)."""

    name: str
    lhs: float
    rhs: float
    target_eps: float
    levels: int
    params: dict[str, Any] = field(default_factory=dict)

    @property
    def deviation(self) -> float:
        return abs(self.lhs / self.rhs - 1.0)

    def ok(self, tol: float) -> bool:
        return self.deviation <= tol

    def __iter__(self) -> Iterator[float]:
        yield self.lhs
        yield self.rhs

    def to_dict(self) -> dict:
        data = asdict(self)
        data["deviation"] = self.deviation
        return data


def _log_abs_gamma(lam: float, x: float) -> float:
    """log|Gamma(lam + ix)|, shifted right by the recurrence instead of reflecting."""
    shift = 0
    correction = 0.0
    while lam + shift < 0.5:
        correction += math.log(abs(complex(lam + shift, x)))
        shift += 1
    return log_gamma(complex(lam + shift, x)).real - correction


def _mp_integrand(lam: float, phi: float):
    slope = 2.0 * phi - math.pi
    # beyond this |x| the integrand is below e^-700 times a polynomial factor
    cutoff = 700.0 / (math.pi - abs(slope)) + 50.0 * (1.0 + lam)

    def f(nodes: NodeSet) -> np.ndarray:
        out = np.zeros(nodes.x.shape)
        inside = np.abs(nodes.x) <= cutoff
        xs = nodes.x[inside]
        log_abs_gamma = np.array([_log_abs_gamma(lam, x) for x in xs])
        with np.errstate(under="ignore", over="ignore"):
            out[inside] = np.exp(slope * xs + 2.0 * log_abs_gamma)
        return out

    return f


def verify_mp_identity(
    lam: float, phi: float, target_eps: float = 1e-12, max_levels: int = 10
) -> IdentityCheck:
    """Meixner-Pollaczek mass identity.

    (1/2pi) int e^((2 phi - pi) x) |Gamma(lambda + ix)|^2 dx
        = Gamma(2 lambda) / (2 sin phi)^(2 lambda)

    |Gamma|^2 is taken as exp(2 Re log Gamma) so large |x| underflows instead
    of overflowing.

    Raises:
        DomainError: lambda <= 0 or phi outside (0, pi)
        QuadratureNoConvergence: consecutive levels never agreed

    Examples:
        verify_mp_identity(1.0, math.pi / 2).rhs  # 0.25
    """
    if not lam > 0:
        raise DomainError("the Meixner-Pollaczek identity needs lambda > 0", lam=lam)
    if not 0 < phi < math.pi:
        raise DomainError("the Meixner-Pollaczek identity needs 0 < phi < pi", phi=phi)
    integrand = _mp_integrand(lam, phi)
    quad = integrate(integrand, "line", target_eps=target_eps, max_levels=max_levels)
    lhs = complex(quad.value).real / (2.0 * math.pi)
    rhs = gamma(2.0 * lam).value.real / (2.0 * math.sin(phi)) ** (2.0 * lam)
    check = IdentityCheck("MP", lhs, rhs, target_eps, quad.levels, {"lambda": lam, "phi": phi})
    logger.debug("MP lambda=%s phi=%s: deviation %.2e", lam, phi, check.deviation)
    return check


def _qpoch_abs2(z: np.ndarray, q: float, eps: float = 1e-17) -> np.ndarray:
    """|(z; q)_inf|^2 for an array of |z| <= 1."""
    out = np.ones(z.shape)
    qk = 1.0
    while qk > eps:
        out *= np.abs(1.0 - z * qk) ** 2
        qk *= q
    return out


def _aw_integrand(q: float, alphas: Sequence[float]):
    shifts = [q**a for a in alphas]

    def f(nodes: NodeSet) -> np.ndarray:
        e = np.exp(1j * nodes.x)
        num = _qpoch_abs2(e * e, q)
        den = np.ones_like(num)
        for a in shifts:
            den *= _qpoch_abs2(a * e, q)
        return num / den

    return f


def verify_aw_integral(
    q: float, alphas: Sequence[float], target_eps: float = 1e-12, max_levels: int = 10
) -> IdentityCheck:
    """Weak Askey-Wilson beta integral.

    lhs = (1-q)^5 (q;q)_inf^6 / (2 pi) * int_0^pi |(e^(2i theta); q)|^2
          / prod_j |(q^alpha_j e^(i theta); q)|^2 d theta
    rhs = (1-q)^(2 sum alpha) prod_{j<k} Gamma_q(alpha_j + alpha_k) / Gamma_q(sum alpha)

    Raises:
        DomainError: q outside (0, 1), not four alphas, or some alpha <= 0
    """
    if not 0 < q < 1:
        raise DomainError("the Askey-Wilson integral needs 0 < q < 1", q=q)
    alphas = [float(a) for a in alphas]
    if len(alphas) != 4 or any(a <= 0 for a in alphas):
        raise DomainError("the Askey-Wilson integral needs four alphas > 0", alphas=alphas)
    quad = integrate(
        _aw_integrand(q, alphas), "finite", 0.0, math.pi,
        target_eps=target_eps, max_levels=max_levels,
    )
    qq = q_pochhammer(q, q).value.real
    lhs = (1.0 - q) ** 5 * qq**6 * complex(quad.value).real / (2.0 * math.pi)
    total = sum(alphas)
    pairs = 1.0
    for j in range(4):
        for k in range(j + 1, 4):
            pairs *= gamma_q(alphas[j] + alphas[k], q).value.real
    rhs = (1.0 - q) ** (2.0 * total) * pairs / gamma_q(total, q).value.real
    check = IdentityCheck("AW", lhs, rhs, target_eps, quad.levels, {"q": q, "alphas": alphas})
    logger.debug("AW q=%s alphas=%s: deviation %.2e", q, alphas, check.deviation)
    return check
