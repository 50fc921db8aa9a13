"""Kernel entries and Hermitian matrix assembly."""

import cmath
import logging
import math
from typing import Callable, Optional

import numpy as np

from sfpsd.config import get_settings
from sfpsd.errors import ConjugateSymmetryViolation, SpecError
from sfpsd.kernels.families import KernelFamily
from sfpsd.kernels.spec import FactorSpec, MatrixSpec
from sfpsd.psdlinalg.matrix import HermitianMatrix
from sfpsd.specialfn.gamma import beta, gamma, rising_factorial
from sfpsd.specialfn.hypergeometric import (
    DEFAULT_RULE,
    deformed_q_hypergeometric,
    hypergeometric_f,
    modular_series,
)
from sfpsd.specialfn.lerch import lerch_phi
from sfpsd.specialfn.qseries import gamma_q
from sfpsd.specialfn.series import DEFAULT_CONTROL, SeriesControl
from sfpsd.specialfn.theta import jacobi_dn, theta3
from sfpsd.specialfn.zeta import dirichlet_eta, hurwitz_zeta, riemann_xi, zeta

logger = logging.getLogger(__name__)

SYMMETRY_REL_TOL = 1e-12

# Removable singularity at s = 1
_NEAR_ONE = 1e-3
# Stieltjes constants gamma_0 .. gamma_3
_STIELTJES = (
    0.5772156649015329,
    -0.0728158454836767,
    -0.0096903631928723,
    0.0020538344203034,
)
_CIRCLE_RADIUS = 0.05
_CIRCLE_POINTS = 16

KernelFn = Callable[[FactorSpec, tuple, tuple, SeriesControl], complex]


def _pair_sum(pj: tuple, pk: tuple, index: int = 0) -> complex:
    return pj[index] + pk[index].conjugate()


def _pair_difference(pj: tuple, pk: tuple) -> complex:
    return pj[0] - pk[0].conjugate()


def _pair_product(pj: tuple, pk: tuple) -> complex:
    return pj[0] * pk[0].conjugate()


def remove_singularity_at_one(f: Callable[[complex], complex], s: complex) -> complex:
    """Value of an analytic f at s from samples on a circle of radius 0.05 about 1.

    Discrete Cauchy integral f(s) = (1/M) sum f(c_m) (c_m - 1) / (c_m - s)
    with c_m = 1 + r e^(2 pi i m / M).
    """
    total = complex(0.0)
    for m in range(_CIRCLE_POINTS):
        offset = _CIRCLE_RADIUS * cmath.exp(2j * math.pi * m / _CIRCLE_POINTS)
        c = 1.0 + offset
        total += f(c) * offset / (c - s)
    return total / _CIRCLE_POINTS


def zeta_tail_value(s: complex, control: SeriesControl = DEFAULT_CONTROL) -> complex:
    """1/(s-1) - zeta(s)/s, through the Stieltjes expansion when |s - 1| < 1e-3."""
    d = s - 1.0
    if abs(d) < _NEAR_ONE:
        g0, g1, g2, g3 = _STIELTJES
        return (1.0 - g0 + g1 * d - g2 / 2.0 * d * d + g3 / 6.0 * d * d * d) / s
    return 1.0 / d - zeta(s, control).value / s


def hurwitz_tail_value(s: complex, a: float, control: SeriesControl = DEFAULT_CONTROL) -> complex:
    def direct(w: complex) -> complex:
        head = cmath.exp(-w * math.log(a)) + cmath.exp(-w * math.log1p(a))
        return (head - hurwitz_zeta(w, a, control).value) / w + cmath.exp(
            (1.0 - w) * math.log1p(a)
        ) / w / (w - 1.0)

    if abs(s - 1.0) < _NEAR_ONE:
        return remove_singularity_at_one(direct, s)
    return direct(s)


def hurwitz_diff_value(s: complex, a: float, control: SeriesControl = DEFAULT_CONTROL) -> complex:
    def direct(w: complex) -> complex:
        diff = hurwitz_zeta(w, (a + 1.0) / 4.0, control).value - hurwitz_zeta(
            w, (a + 3.0) / 4.0, control
        ).value
        return gamma(w).value * diff

    if abs(s - 1.0) < _NEAR_ONE:
        return remove_singularity_at_one(direct, s)
    return direct(s)


def _theta3(f: FactorSpec, pj, pk, control) -> complex:
    return theta3(_pair_difference(pj, pk), f.get("q"), control).value


def _dn(f: FactorSpec, pj, pk, control) -> complex:
    return jacobi_dn(_pair_difference(pj, pk), f.get("q"), control).value


def _zeta_tail(f: FactorSpec, pj, pk, control) -> complex:
    return zeta_tail_value(_pair_sum(pj, pk), control)


def _gamma(f: FactorSpec, pj, pk, control) -> complex:
    return gamma(_pair_sum(pj, pk)).value


def _sin_power(f: FactorSpec, pj, pk, control) -> complex:
    lam = float(complex(f.get("lambda")).real)
    angle = pj[0].real + pk[0].real
    return complex(math.sin(angle) ** (-lam))


def _beta(f: FactorSpec, pj, pk, control) -> complex:
    return beta(_pair_sum(pj, pk, 0), _pair_sum(pj, pk, 1)).value


def _hypergeom(f: FactorSpec, pj, pk, control) -> complex:
    z = _pair_product(pj, pk)
    return hypergeometric_f(f.get("upper", ()), f.get("lower", ()), z, control).value


def _eta_gamma_zeta(f: FactorSpec, pj, pk, control) -> complex:
    s = _pair_sum(pj, pk)
    return dirichlet_eta(s, control).value * gamma(s).value


def _eta_gamma1_zeta(f: FactorSpec, pj, pk, control) -> complex:
    s = _pair_sum(pj, pk)
    return dirichlet_eta(s, control).value * gamma(s + 1.0).value


def _polygamma_zeta(f: FactorSpec, pj, pk, control) -> complex:
    s = _pair_sum(pj, pk)
    p = int(complex(f.get("p")).real)
    return rising_factorial(s, p) * zeta(p + s, control).value / cmath.sin(math.pi * s)


def _riemann_xi(f: FactorSpec, pj, pk, control) -> complex:
    return riemann_xi(_pair_difference(pj, pk), control).value


def _hurwitz_tail(f: FactorSpec, pj, pk, control) -> complex:
    return hurwitz_tail_value(_pair_sum(pj, pk), float(complex(f.get("a")).real), control)


def _hurwitz_diff(f: FactorSpec, pj, pk, control) -> complex:
    return hurwitz_diff_value(_pair_sum(pj, pk), float(complex(f.get("a")).real), control)


def _lerch(f: FactorSpec, pj, pk, control) -> complex:
    s = _pair_sum(pj, pk)
    z = float(complex(f.get("z")).real)
    a = float(complex(f.get("a")).real)
    return gamma(s).value * lerch_phi(z, s, a, control).value


def _aw_qgamma(f: FactorSpec, pj, pk, control) -> complex:
    q = float(complex(f.get("q")).real)
    a1 = pj[0].real + pk[0].real
    a2 = pj[1].real + pk[1].real
    num = gamma_q(a1, q, control).value * gamma_q(a2, q, control).value
    return num / gamma_q(a1 + a2, q, control).value


def qhyper_radius(f: FactorSpec) -> float:
    radius = f.get("radius")
    if radius is None:
        return get_settings().qhyper_radius
    return float(complex(radius).real)


def _q_hypergeom(f: FactorSpec, pj, pk, control) -> complex:
    return deformed_q_hypergeometric(
        f.get("upper", ()),
        f.get("lower", ()),
        float(complex(f.get("q")).real),
        float(complex(f.get("alpha")).real),
        _pair_product(pj, pk),
        control,
        radius=qhyper_radius(f),
    ).value


def _modular(kind: str) -> KernelFn:
    def kernel(f: FactorSpec, pj, pk, control) -> complex:
        return modular_series(
            kind,
            f.get("upper", ()),
            f.get("lower", ()),
            float(complex(f.get("q")).real),
            float(complex(f.get("p")).real),
            f.get("coeff", DEFAULT_RULE),
            _pair_product(pj, pk),
            control,
        ).value

    return kernel


_KERNELS: dict[KernelFamily, KernelFn] = {
    KernelFamily.THETA3: _theta3,
    KernelFamily.DN: _dn,
    KernelFamily.ZETA_TAIL: _zeta_tail,
    KernelFamily.GAMMA: _gamma,
    KernelFamily.SIN_POWER: _sin_power,
    KernelFamily.BETA: _beta,
    KernelFamily.HYPERGEOM: _hypergeom,
    KernelFamily.ETA_GAMMA_ZETA: _eta_gamma_zeta,
    KernelFamily.ETA_GAMMA1_ZETA: _eta_gamma1_zeta,
    KernelFamily.POLYGAMMA_ZETA: _polygamma_zeta,
    KernelFamily.RIEMANN_XI: _riemann_xi,
    KernelFamily.HURWITZ_TAIL: _hurwitz_tail,
    KernelFamily.HURWITZ_DIFF: _hurwitz_diff,
    KernelFamily.LERCH: _lerch,
    KernelFamily.AW_QGAMMA: _aw_qgamma,
    KernelFamily.Q_HYPERGEOM: _q_hypergeom,
    KernelFamily.MODULAR_E: _modular("E"),
    KernelFamily.MODULAR_G: _modular("G"),
}


def kernel_value(
    factor: FactorSpec,
    j: int,
    k: int,
    control: SeriesControl = DEFAULT_CONTROL,
    check: bool = False,
) -> complex:
    """Entry (j, k) of a factor's kernel matrix.

    Args:
        factor: A validated factor spec
        j: Row index
        k: Column index
        control: Series truncation policy passed to the evaluators
        check: Also evaluate (k, j) and require K(j,k) = conj(K(k,j))

    Raises:
        ConjugateSymmetryViolation: check=True and the self-check fails
    """
    fn = _KERNELS[factor.family]
    value = complex(fn(factor, factor.point(j), factor.point(k), control))
    if check:
        mirror = complex(fn(factor, factor.point(k), factor.point(j), control))
        deviation = abs(value - mirror.conjugate())
        if deviation > SYMMETRY_REL_TOL * (1.0 + abs(value)):
            raise ConjugateSymmetryViolation(
                f"{factor.family.value} kernel is not conjugate symmetric at ({j}, {k})",
                family=factor.family.value,
                j=j,
                k=k,
                deviation=deviation,
            )
    return value


def factor_matrix(factor: FactorSpec, control: SeriesControl = DEFAULT_CONTROL) -> np.ndarray:
    """Kernel matrix of one factor, checked for conjugate symmetry and then symmetrised.

    Raises:
        ConjugateSymmetryViolation: max |M - M^H| exceeds 1e-12 * max(1, max |M|)
    """
    n = factor.n
    fn = _KERNELS[factor.family]
    m = np.empty((n, n), dtype=np.complex128)
    for j in range(n):
        pj = factor.point(j)
        for k in range(n):
            m[j, k] = fn(factor, pj, factor.point(k), control)
    if n:
        scale = max(1.0, float(np.max(np.abs(m))))
        defect = np.abs(m - m.conj().T)
        worst = np.unravel_index(int(np.argmax(defect)), defect.shape)
        if defect[worst] > SYMMETRY_REL_TOL * scale:
            raise ConjugateSymmetryViolation(
                f"{factor.family.value} matrix fails Hermitian symmetry",
                family=factor.family.value,
                j=int(worst[0]),
                k=int(worst[1]),
                deviation=float(defect[worst]),
            )
    m = 0.5 * (m + m.conj().T)
    m[np.diag_indices_from(m)] = m.diagonal().real
    return m


def build_matrix(
    spec: MatrixSpec,
    control: Optional[SeriesControl] = None,
    validate: bool = True,
) -> HermitianMatrix:
    """Hadamard product of the factor matrices as a HermitianMatrix.

    Raises:
        SpecError: validation violations (validate=True) or no factors
        DimensionMismatchError: factors with different n
        ConjugateSymmetryViolation: a factor matrix is not Hermitian to 1e-12
    """
    from sfpsd.kernels.validate import validate_spec

    control = control or DEFAULT_CONTROL
    n = spec.n
    if validate:
        report = validate_spec(spec)
        if not report.ok:
            raise SpecError(
                f"spec {spec.label!r} violates {len(report.violations)} domain condition(s)",
                violations=report.violations,
            )
    product = np.ones((n, n), dtype=np.complex128)
    for factor in spec.factors:
        product *= factor_matrix(factor, control)
    logger.debug("built %s (n=%d, %d factor(s))", spec.label or "matrix", n, len(spec.factors))
    return HermitianMatrix.from_array(product, rel_tol=SYMMETRY_REL_TOL, label=spec.label)
