"""Seeded random matrix specs strictly inside each family's domain."""

import logging
import math
from typing import Callable

import numpy as np

from sfpsd.errors import SpecError
from sfpsd.kernels.families import KernelFamily, family_info
from sfpsd.kernels.spec import FactorSpec, MatrixSpec
from sfpsd.kernels.validate import validate_spec
from sfpsd.specialfn.hypergeometric import CoefficientRule

logger = logging.getLogger(__name__)

MAX_ATTEMPTS = 50
# DN points keep q * exp(4 pi |Im v|) at or below this bound
DN_MARGIN = 0.9
Q_RANGE = (0.05, 0.8)
RE_S_RANGE = (0.1, 3.0)
TABLE_DEGREE = 3

Sampler = Callable[[np.random.Generator, int], FactorSpec]


def _complex_points(
    rng: np.random.Generator, n: int, re: tuple[float, float], im: tuple[float, float]
) -> list[complex]:
    return [complex(rng.uniform(*re), rng.uniform(*im)) for _ in range(n)]


def _disk_points(rng: np.random.Generator, n: int, radius: float) -> list[complex]:
    r = radius * np.sqrt(rng.uniform(0.0, 1.0, n))
    angle = rng.uniform(0.0, 2.0 * math.pi, n)
    return [complex(x) for x in r * np.exp(1j * angle)]


def _theta3(rng, n):
    q = rng.uniform(*Q_RANGE)
    points = _complex_points(rng, n, (-0.5, 0.5), (-0.15, 0.15))
    return FactorSpec(KernelFamily.THETA3, {"q": q}, points)


def _dn(rng, n):
    q = rng.uniform(*Q_RANGE)
    im_max = math.log(DN_MARGIN / q) / (4.0 * math.pi)
    points = _complex_points(rng, n, (-0.5, 0.5), (-im_max, im_max))
    return FactorSpec(KernelFamily.DN, {"q": q}, points)


def _s_points(family: KernelFamily, im: float = 1.5) -> Sampler:
    def sample(rng, n):
        return FactorSpec(family, {}, _complex_points(rng, n, RE_S_RANGE, (-im, im)))

    return sample


def _gamma(rng, n):
    return FactorSpec(KernelFamily.GAMMA, {}, _complex_points(rng, n, RE_S_RANGE, (-2.0, 2.0)))


def _sin_power(rng, n):
    lam = rng.uniform(0.2, 3.0)
    phis = rng.uniform(0.05, 0.5 * math.pi - 0.05, n)
    return FactorSpec(KernelFamily.SIN_POWER, {"lambda": lam}, [float(x) for x in phis])


def _beta(rng, n):
    ps = _complex_points(rng, n, RE_S_RANGE, (-1.0, 1.0))
    qs = _complex_points(rng, n, RE_S_RANGE, (-1.0, 1.0))
    return FactorSpec(KernelFamily.BETA, {}, list(zip(ps, qs)))


def _hypergeom(rng, n):
    # 0F0, 1F1 or 2F1 with positive parameters (all coefficient ratios > 0)
    variant = int(rng.integers(0, 3))
    upper = [float(x) for x in rng.uniform(0.2, 3.0, variant)]
    lower = [float(x) for x in rng.uniform(0.2, 3.0, 1 if variant else 0)]
    radius = 0.9 if len(upper) == len(lower) + 1 else 1.5
    shared = {"upper": upper, "lower": lower}
    return FactorSpec(KernelFamily.HYPERGEOM, shared, _disk_points(rng, n, radius))


def _polygamma(rng, n):
    p = int(rng.integers(1, 4))
    points = _complex_points(rng, n, (0.05, 0.45), (-1.0, 1.0))
    return FactorSpec(KernelFamily.POLYGAMMA_ZETA, {"p": p}, points)


def _riemann_xi(rng, n):
    points = _complex_points(rng, n, (-6.0, 6.0), (-0.2, 0.2))
    return FactorSpec(KernelFamily.RIEMANN_XI, {}, points)


def _hurwitz(family: KernelFamily) -> Sampler:
    def sample(rng, n):
        a = rng.uniform(0.2, 3.0)
        return FactorSpec(family, {"a": a}, _complex_points(rng, n, RE_S_RANGE, (-1.5, 1.5)))

    return sample


def _lerch(rng, n):
    shared = {"z": rng.uniform(-3.0, 0.8), "a": rng.uniform(0.2, 3.0)}
    return FactorSpec(KernelFamily.LERCH, shared, _complex_points(rng, n, RE_S_RANGE, (-1.5, 1.5)))


def _aw_qgamma(rng, n):
    q = rng.uniform(*Q_RANGE)
    points = [tuple(float(x) for x in rng.uniform(0.1, 2.0, 2)) for _ in range(n)]
    return FactorSpec(KernelFamily.AW_QGAMMA, {"q": q}, points)


def _q_hypergeom(rng, n):
    q = rng.uniform(*Q_RANGE)
    r = int(rng.integers(0, 3))
    s = int(rng.integers(0, 3))
    # parameters in (0, 1) keep every (a; q)_n and (b; q)_n positive
    upper = [float(x) for x in rng.uniform(0.05, 0.95, r)]
    lower = [float(x) for x in rng.uniform(0.05, 0.95, s)]
    radius = 0.5
    if rng.uniform() < 0.5:
        alpha = 0.0
        points = _disk_points(rng, n, 0.6)
    else:
        alpha = rng.uniform(0.1, 1.0)
        points = _disk_points(rng, n, 2.0)
    shared = {"upper": upper, "lower": lower, "q": q, "alpha": alpha, "radius": radius}
    return FactorSpec(KernelFamily.Q_HYPERGEOM, shared, points)


def _table_shared(rng, q: float) -> dict:
    """Non-empty parameter lists under a coefficient table on n = 0..TABLE_DEGREE.

    Every theta argument a q^n (n < TABLE_DEGREE) and q^TABLE_DEGREE stays
    above p, so each elliptic factor is positive and p can be large.
    """
    size = int(rng.integers(1, 3))
    upper = [float(x) for x in rng.uniform(0.3, 0.9, size)]
    lower = [float(x) for x in rng.uniform(0.3, 0.9, size)]
    floor = min(upper + lower + [q]) * q**TABLE_DEGREE
    p = floor * rng.uniform(0.2, 0.9)
    table = {n: float(c) for n, c in enumerate(rng.uniform(0.1, 1.0, TABLE_DEGREE + 1))}
    coeff = CoefficientRule("table", table)
    return {"upper": upper, "lower": lower, "q": q, "p": p, "coeff": coeff}


def _modular_e(rng, n):
    q = rng.uniform(0.2, 0.7)
    if rng.uniform() < 0.5:
        shared = _table_shared(rng, q)
    else:
        # gaussian A_n reaches n ~ 45; q^(n+1) stays above p below q^80
        p = q**80 * rng.uniform(0.1, 1.0)
        shared = {"upper": [], "lower": [], "q": q, "p": p}
    return FactorSpec(KernelFamily.MODULAR_E, shared, _disk_points(rng, n, 1.2))


def _modular_g(rng, n):
    q = rng.uniform(0.2, 0.7)
    if rng.uniform() < 0.5:
        shared = _table_shared(rng, q)
    else:
        shared = {"upper": [], "lower": [], "q": q, "p": rng.uniform(0.05, 0.5)}
    modulus = rng.uniform(0.5, 1.5, n)
    angle = rng.uniform(0.0, 2.0 * math.pi, n)
    points = [complex(x) for x in modulus * np.exp(1j * angle)]
    return FactorSpec(KernelFamily.MODULAR_G, shared, points)


_SAMPLERS: dict[KernelFamily, Sampler] = {
    KernelFamily.THETA3: _theta3,
    KernelFamily.DN: _dn,
    KernelFamily.ZETA_TAIL: _s_points(KernelFamily.ZETA_TAIL),
    KernelFamily.GAMMA: _gamma,
    KernelFamily.SIN_POWER: _sin_power,
    KernelFamily.BETA: _beta,
    KernelFamily.HYPERGEOM: _hypergeom,
    KernelFamily.ETA_GAMMA_ZETA: _s_points(KernelFamily.ETA_GAMMA_ZETA),
    KernelFamily.ETA_GAMMA1_ZETA: _s_points(KernelFamily.ETA_GAMMA1_ZETA),
    KernelFamily.POLYGAMMA_ZETA: _polygamma,
    KernelFamily.RIEMANN_XI: _riemann_xi,
    KernelFamily.HURWITZ_TAIL: _hurwitz(KernelFamily.HURWITZ_TAIL),
    KernelFamily.HURWITZ_DIFF: _hurwitz(KernelFamily.HURWITZ_DIFF),
    KernelFamily.LERCH: _lerch,
    KernelFamily.AW_QGAMMA: _aw_qgamma,
    KernelFamily.Q_HYPERGEOM: _q_hypergeom,
    KernelFamily.MODULAR_E: _modular_e,
    KernelFamily.MODULAR_G: _modular_g,
}


def random_spec(family: KernelFamily, n: int, seed: int) -> MatrixSpec:
    """Deterministic single-factor spec for a family.

    Draws are repeated from the same generator until the spec validates,
    so a fixed seed always yields the same spec.

    Raises:
        SpecError: n < 1, or no valid draw within MAX_ATTEMPTS
    """
    family = KernelFamily(family)
    if n < 1:
        raise SpecError("random_spec needs n >= 1", n=n)
    rng = np.random.default_rng(seed)
    label = f"{family_info(family).label.split('/')[0]}:{family.value}:n={n}:seed={seed}"
    for attempt in range(MAX_ATTEMPTS):
        spec = MatrixSpec((_SAMPLERS[family](rng, n),), label)
        report = validate_spec(spec)
        if report.ok:
            return spec
        logger.debug("random_spec %s attempt %d rejected: %s", label, attempt, report.violations)
    raise SpecError(f"no valid {family.value} spec after {MAX_ATTEMPTS} draws", seed=seed)
