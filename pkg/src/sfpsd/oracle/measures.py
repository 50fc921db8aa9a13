"""Positive measures behind the Gram constructions.

Discrete measures are truncated lattice sums with a recorded tail bound;
weighted lines name a density on an interval that the quadrature Gram
builder knows how to integrate.
"""

from dataclasses import dataclass, field
import logging
import math
from typing import Any, Literal

import numpy as np

from sfpsd.errors import DomainError, TailTooLargeError
from sfpsd.specialfn.theta import quarter_period

logger = logging.getLogger(__name__)

MAX_ATOMS = 20_000
DEFAULT_TAIL_EPS = 1e-15

WeightId = Literal[
    "GAMMA_WEIGHT",
    "BETA_WEIGHT",
    "ZETA_TAIL_WEIGHT",
    "ETA_WEIGHT",
    "ETA1_WEIGHT",
    "POLYGAMMA_WEIGHT",
    "HURWITZ_TAIL_WEIGHT",
    "COSH_WEIGHT",
    "LERCH_WEIGHT",
    "MP_WEIGHT",
    "AW_WEIGHT",
]

WEIGHT_DESCRIPTIONS: dict[str, str] = {
    "GAMMA_WEIGHT": "e^(-x)/x on (0, inf)",
    "BETA_WEIGHT": "1/(x(1-x)) on (0, 1)",
    "ZETA_TAIL_WEIGHT": "{u}/u on (1, inf)",
    "ETA_WEIGHT": "1/(u(e^u+1)) on (0, inf)",
    "ETA1_WEIGHT": "e^u/(e^u+1)^2 on (0, inf)",
    "POLYGAMMA_WEIGHT": "p! sum_{n>=1} (x+n)^(-p-1) on (0, inf)",
    "HURWITZ_TAIL_WEIGHT": "{x}/(x+a) on (1, inf)",
    "COSH_WEIGHT": "1/(2x e^(ax) cosh x) on (0, inf)",
    "LERCH_WEIGHT": "e^(-ax)/(x(1-z e^(-x))) on (0, inf)",
    "MP_WEIGHT": "e^((2 phi - pi) x) |Gamma(lambda+ix)|^2 on the real line",
    "AW_WEIGHT": "|(e^(2i theta); q)|^2 / prod |(q^alpha_j e^(i theta); q)|^2 on (0, pi)",
}


@dataclass(frozen=True, eq=False)
class DiscreteMeasure:
    """Finitely many atoms (location, weight) after truncation.

    Args:
        locations: Atom positions
        weights: Nonnegative atom masses
        tail_bound: Bound on the mass (times exponential growth) dropped by truncation
        growth: Largest |Im(v_j - conj(v_k))| the tail bound covers
    """

    locations: np.ndarray
    weights: np.ndarray
    tail_bound: float
    growth: float = 0.0
    name: str = ""

    def __post_init__(self):
        locations = np.asarray(self.locations, dtype=float)
        weights = np.asarray(self.weights, dtype=float)
        if locations.shape != weights.shape or locations.ndim != 1:
            raise DomainError("atom locations and weights must be matching 1-d arrays")
        if np.any(weights < 0) or not np.all(np.isfinite(weights)):
            raise DomainError("measure weights must be finite and nonnegative")
        object.__setattr__(self, "locations", locations)
        object.__setattr__(self, "weights", weights)

    @property
    def atoms(self) -> list[tuple[float, float]]:
        return list(zip(self.locations.tolist(), self.weights.tolist()))

    def __len__(self) -> int:
        return int(self.locations.size)

    @classmethod
    def single(cls, location: float = 0.0, weight: float = 1.0) -> "DiscreteMeasure":
        return cls(np.array([location]), np.array([weight]), 0.0, math.inf, "atom")


@dataclass(frozen=True)
class WeightedLine:
    """A named density with its parameters and quadrature control."""

    weight_id: WeightId
    params: dict[str, Any] = field(default_factory=dict)
    target_eps: float = 1e-12
    max_levels: int = 10

    def __post_init__(self):
        if self.weight_id not in WEIGHT_DESCRIPTIONS:
            raise DomainError(f"unknown weight {self.weight_id!r}")

    @property
    def description(self) -> str:
        return WEIGHT_DESCRIPTIONS[self.weight_id]


def _bilateral(locations: np.ndarray) -> np.ndarray:
    return np.concatenate([-locations[:0:-1], locations])


def theta3_measure(
    q: float, growth: float = 0.0, target_eps: float = DEFAULT_TAIL_EPS
) -> DiscreteMeasure:
    """Atoms q^(n^2) at every integer n, truncated to |n| <= N.

    N is the first index past the peak of q^(n^2) e^(2 pi n growth) whose
    geometric tail bound is below target_eps.
    """
    if not 0 < q < 1:
        raise DomainError("theta3 measure needs 0 < q < 1", q=q)
    log_q = math.log(q)
    spread = 2.0 * math.pi * growth
    peak = spread / (-2.0 * log_q)
    n = max(1, math.ceil(peak))
    while True:
        ratio_log = (2 * n + 3) * log_q + spread
        if ratio_log < 0:
            term_log = (n + 1) ** 2 * log_q + spread * (n + 1)
            tail = 2.0 * math.exp(max(term_log, -745.0)) / (1.0 - math.exp(ratio_log))
            if tail <= target_eps:
                break
        n += 1
        if n > MAX_ATOMS:
            raise TailTooLargeError("theta3 measure needs too many atoms", q=q, growth=growth)
    index = np.arange(0, n + 1, dtype=float)
    locations = _bilateral(index)
    weights = np.exp(locations**2 * log_q)
    logger.debug("theta3 measure q=%s: %d atoms, tail %.2e", q, locations.size, tail)
    return DiscreteMeasure(locations, weights, tail, growth, "theta3")


def dn_measure(
    q: float, growth: float = 0.0, target_eps: float = DEFAULT_TAIL_EPS
) -> DiscreteMeasure:
    """Atoms (pi/K) q^n / (1 + q^(2n)) at every integer n.

    Raises:
        TailTooLargeError: q e^(2 pi growth) >= 1, so no truncation converges
    """
    if not 0 < q < 1:
        raise DomainError("dn measure needs 0 < q < 1", q=q)
    rho_log = math.log(q) + 2.0 * math.pi * growth
    if rho_log >= 0:
        raise TailTooLargeError(
            "dn measure diverges: q exp(2 pi growth) >= 1", q=q, growth=growth
        )
    rho = math.exp(rho_log)
    scale = math.pi / quarter_period(q)
    # tail 2 scale rho^(N+1) / (1 - rho) <= target_eps
    needed = math.log(target_eps * (1.0 - rho) / (2.0 * scale)) / rho_log - 1.0
    n = max(1, math.ceil(needed))
    if n > MAX_ATOMS:
        raise TailTooLargeError("dn measure needs too many atoms", q=q, growth=growth)
    tail = 2.0 * scale * math.exp((n + 1) * rho_log) / (1.0 - rho)
    index = np.arange(0, n + 1, dtype=float)
    locations = _bilateral(index)
    k = np.abs(locations)
    weights = scale * np.exp(k * math.log(q)) / (1.0 + np.exp(2.0 * k * math.log(q)))
    logger.debug("dn measure q=%s: %d atoms, tail %.2e", q, locations.size, tail)
    return DiscreteMeasure(locations, weights, tail, growth, "dn")
